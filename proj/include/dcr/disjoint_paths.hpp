#pragma once

#include <vector>

#include "dcr/network.hpp"

namespace dcr {

/// Shortest pair of node-disjoint paths joining the endpoints of a link to
/// the two terminals.
struct DisjointPairResult {
  /// From one endpoint of the link to the source (a single node when the
  /// endpoint is the source itself). Empty when no pair exists.
  std::vector<NodeId> path1;
  /// From the other endpoint to the terminal.
  std::vector<NodeId> path2;
  /// Total hops of both paths; nullopt when no node-disjoint pair exists.
  Hops length_sum;

  bool found() const { return length_sum.has_value(); }
};

/// Minimum length-sum pair for `link_id`.
///
/// The graph is extended with an artificial node wired to both terminals and
/// another wired to both link endpoints, then two units of flow are routed
/// between them on a node-split network (each node becomes an in/out pair
/// joined by a unit-capacity arc). Artificial arcs cost 0 and every original
/// link costs 1 in each direction, so the flow cost is the hop sum directly.
/// Both endpoint pairings are covered by the one flow problem.
///
/// Throws std::out_of_range for an unknown link. Self-loops never have a pair.
DisjointPairResult min_disjoint_pair(const Network& net, LinkId link_id);

}  // namespace dcr
