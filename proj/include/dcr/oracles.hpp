#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dcr/network.hpp"

namespace dcr {

/// Raised when an exponential method is asked to run past its size guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kEnumLinkLimit = 25;
inline constexpr std::size_t kInclusionExclusionPathLimit = 30;

/// Sum over all 2^m link states of P(state) * phi(state). States are visited
/// in Gray-code order and phi is evaluated from scratch at each one.
/// Throws GuardError above kEnumLinkLimit links.
double enum_exact(const Network& net);

/// Link sets of the simple source-terminal paths with at most d hops,
/// with any set containing another removed. Each set is sorted by id.
struct MinpathSet {
  std::vector<std::vector<LinkId>> paths;
};

MinpathSet enumerate_minpaths(const Network& net);

/// P(union of minpaths) by inclusion-exclusion. Subsets whose link unions
/// coincide are folded into one signed integer coefficient before the
/// probabilities are summed. Throws GuardError above
/// kInclusionExclusionPathLimit minpaths.
double inclusion_exclusion(const Network& net);
double inclusion_exclusion(const Network& net, const MinpathSet& minpaths);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Crude Monte Carlo estimate of the reliability. Samples are drawn in
/// fixed-size blocks, each from its own mt19937_64 stream derived from
/// `seed` and the block index by SplitMix64, so a (seed, samples) pair always
/// yields the same estimate. Throws std::invalid_argument if samples == 0.
McEstimate monte_carlo(const Network& net, std::uint64_t samples, std::uint64_t seed);

}  // namespace dcr
