#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "dcr/network.hpp"

namespace dcr {

struct FactorOutcome {
  double reliability = 0.0;
  std::uint64_t recursion_nodes = 0;
  std::uint64_t leaves_one = 0;
  std::uint64_t leaves_zero = 0;
  std::uint64_t reductions_applied = 0;
};

/// Values seen at one branching node of the recursion.
struct BranchRecord {
  LinkId pivot;
  double pivot_reliability;
  double perfect_branch;  // R with the pivot pinned to 1
  double deleted_branch;  // R with the pivot removed
  double scale;           // factor folded in by the reductions at this node
  double result;
};

struct FactorOptions {
  /// Delete irrelevant links before reducing. Turning this off changes only
  /// the amount of work, never the value.
  bool prune_irrelevant = true;
  /// Run the reduction rules at every node.
  bool reductions = true;
  /// Break pivot ties uniformly at random from this seed instead of by the
  /// smallest link id.
  std::optional<std::uint64_t> tie_break_seed;
  /// Called at every branching node, after both branches return.
  std::function<void(const BranchRecord&)> on_branch;
};

/// True iff the perfect links alone hold a source-terminal path within the
/// diameter.
bool has_perfect_path(const Network& net);

/// A non-perfect link whose nearer endpoint is closest (in hops) to the
/// terminal; ties go to the smallest id, or to a uniform pick when `rng` is
/// given. Throws std::invalid_argument when every link is perfect.
LinkId pivot_select(const Network& net, std::mt19937_64* rng = nullptr);

/// Exact diameter-constrained reliability by recursive conditioning:
///
///     R(G) = p_e R(G with e perfect) + (1 - p_e) R(G - e)
///
/// with termination on a perfect path (1) or an out-of-reach terminal (0),
/// and irrelevance pruning plus reductions applied at every node.
FactorOutcome factor(const Network& net, const FactorOptions& options = {});

}  // namespace dcr
