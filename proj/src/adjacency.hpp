#pragma once

// Internal helpers shared by the graph algorithms. Not installed.

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "dcr/network.hpp"

namespace dcr::detail {

/// Incidence lists indexed by node id (ids are small and dense enough that a
/// vector sized max_node+1 is the simplest map).
struct Adjacency {
  struct Arc {
    NodeId to;
    std::size_t link_index;  // index into Network::links()
  };
  std::vector<std::vector<Arc>> arcs;

  explicit Adjacency(const Network& net) : arcs(net.max_node() + 1) {
    const auto& links = net.links();
    for (std::size_t i = 0; i < links.size(); ++i) {
      const Link& l = links[i];
      if (l.self_loop()) continue;
      arcs[l.u].push_back({l.v, i});
      arcs[l.v].push_back({l.u, i});
    }
  }
};

inline constexpr int kFar = std::numeric_limits<int>::max();

/// BFS distances from `from`. `usable(link_index)` filters links and
/// `blocked[n]` filters nodes. Unreached nodes hold kFar.
template <class LinkFilter>
std::vector<int> bfs(const Adjacency& adj, NodeId from,
                     const std::vector<char>& blocked, LinkFilter usable,
                     int limit = kFar) {
  std::vector<int> dist(adj.arcs.size(), kFar);
  if (from < 0 || static_cast<std::size_t>(from) >= adj.arcs.size()) return dist;
  if (!blocked.empty() && blocked[from]) return dist;
  std::deque<NodeId> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    if (dist[n] >= limit) continue;
    for (const auto& arc : adj.arcs[n]) {
      if (dist[arc.to] != kFar) continue;
      if (!blocked.empty() && blocked[arc.to]) continue;
      if (!usable(arc.link_index)) continue;
      dist[arc.to] = dist[n] + 1;
      queue.push_back(arc.to);
    }
  }
  return dist;
}

inline Hops to_hops(int d) { return d == kFar ? Hops{} : Hops{d}; }

/// Reusable "is the terminal within the diameter over the up links" test,
/// with buffers kept between calls. `up` is indexed like Network::links().
class ReachWithin {
 public:
  explicit ReachWithin(const Network& net)
      : adj_(net),
        source_(net.source()),
        terminal_(net.terminal()),
        limit_(net.diameter()),
        dist_(adj_.arcs.size(), kFar) {
    queue_.reserve(adj_.arcs.size());
  }

  bool operator()(const std::vector<char>& up) {
    std::fill(dist_.begin(), dist_.end(), kFar);
    queue_.clear();
    queue_.push_back(source_);
    dist_[source_] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      NodeId n = queue_[head];
      if (dist_[n] >= limit_) continue;
      for (const auto& arc : adj_.arcs[n]) {
        if (!up[arc.link_index] || dist_[arc.to] != kFar) continue;
        dist_[arc.to] = dist_[n] + 1;
        if (arc.to == terminal_) return true;
        queue_.push_back(arc.to);
      }
    }
    return false;
  }

 private:
  Adjacency adj_;
  NodeId source_;
  NodeId terminal_;
  int limit_;
  std::vector<int> dist_;
  std::vector<NodeId> queue_;
};

}  // namespace dcr::detail
