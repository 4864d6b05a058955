#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcr/network.hpp"

namespace dcr {

/// Every simplification here preserves the diameter-constrained reliability
/// up to a scalar factor and a diameter decrement:
///
///     R(G, d) = factor * R(G', d - diameter_delta)
enum class Rule {
  kIrrelevantLink,      // delete links on no short enough s-t path
  kPendingTerminal,     // contract a terminal's only link
  kPendingClosed,       // a terminal's only link reaches the other terminal
  kPendingNonTerminal,  // delete a degree-1 non-terminal node
  kPerfectPath,         // chain of degree-2 nodes: product onto one link
  kPerfectNeighbors,    // merge a terminal with its all-perfect neighborhood
  kParallelLinks,       // OR-combine links sharing both endpoints
  kDanglingComponent,   // delete a terminal-free piece behind a cut node
};

std::string_view rule_name(Rule rule);

/// One recorded application of a rule. Fields are enough to replay the step
/// on the network it was recorded against.
///
///   kIrrelevantLink, kDanglingComponent: delete `links`, then `nodes`.
///   kPendingTerminal:    links = {e}, nodes = {old terminal, new terminal}.
///   kPendingClosed:      links = {e}, nodes = {terminal, other terminal};
///                        e becomes perfect.
///   kPendingNonTerminal: links = {e}, nodes = {pendant node}.
///   kPerfectPath:        links = chain in order, nodes = chain ends; the
///                        last link gets the product.
///   kPerfectNeighbors:   nodes = {terminal, absorbed neighbors...};
///                        links = internal links that vanish.
///   kParallelLinks:      links = {kept, absorbed...}.
struct ReductionStep {
  Rule rule;
  std::vector<LinkId> links;
  std::vector<NodeId> nodes;
  int diameter_delta = 0;
  double factor = 1.0;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  double total_factor = 1.0;
  int total_diameter_delta = 0;

  void append(ReductionStep step);
  void append(const ReductionTrace& other);
  bool empty() const { return steps.empty(); }
};

using Reduced = std::pair<Network, ReductionTrace>;

/// Applies a recorded step. Throws std::invalid_argument if it does not fit.
Network apply_step(const Network& net, const ReductionStep& step);
Network replay(const Network& net, const ReductionTrace& trace);

/// One line per step: rule, link ids, node ids, d-delta, factor (17 digits).
std::string format_step(const ReductionStep& step);

// Each operation below applies its own rule until it no longer fires.

/// Deletes links the exact test marks irrelevant (re-sweeping until none
/// remain) and the non-terminal nodes left without links.
Reduced prune_irrelevant(const Network& net);

/// A terminal hanging on a single link e is contracted into its neighbor
/// (factor p_e, diameter - 1). If that neighbor is the other terminal the
/// link is made perfect instead (factor p_e). Non-terminal pendant nodes are
/// deleted. Never fires on a terminal when the diameter is 0.
Reduced pending_node(const Network& net);

/// For a chain whose internal nodes are non-terminals of degree 2 and which
/// holds at least two non-perfect links, all chain links become perfect
/// except the one farthest from the source, which takes the product of the
/// chain's reliabilities. Topology and diameter are unchanged.
Reduced perfect_path(const Network& net);

/// A terminal whose incident links are all perfect absorbs its neighbors
/// (diameter - 1). Links among the merged nodes vanish; outgoing parallels
/// are kept. Requires diameter >= 1 and the other terminal not adjacent.
Reduced perfect_neighbors(const Network& net);

/// Parallel links fold into the smallest id: p = p1 + p2 - p1 p2.
Reduced parallel_links(const Network& net);

/// For each node v, components of G - v that are attached to v and hold
/// neither terminal are deleted.
Reduced prune_dangling(const Network& net);

/// Rule families that apply_all may use.
struct RuleSet {
  bool irrelevant = true;
  bool pending = true;
  bool perfect_path = true;
  bool perfect_neighbors = true;
  bool parallel = true;
  bool dangling = true;
};

/// Round-robin over the enabled operations, in the order declared above,
/// until a full round changes nothing.
Reduced apply_all(const Network& net, const RuleSet& rules = {});

}  // namespace dcr
