#include "dcr/disjoint_paths.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <optional>

namespace dcr {
namespace {

// Residual network for a two-unit min-cost flow. Arcs are stored in pairs:
// arc i and its reverse i^1.
class FlowNetwork {
 public:
  struct Arc {
    int to;
    int capacity;
    int cost;
    bool forward;
  };

  explicit FlowNetwork(int vertices) : out_(vertices) {}

  void add(int from, int to, int cost) {
    out_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, 1, cost, true});
    out_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0, -cost, false});
  }

  // One Bellman-Ford augmentation along a cheapest residual path; residual
  // arcs may carry negative cost after the first augmentation, which is why
  // no Dijkstra shortcut is taken here. Returns the path cost, or nullopt.
  std::optional<int> augment(int source, int sink) {
    constexpr int kInf = std::numeric_limits<int>::max();
    const int n = static_cast<int>(out_.size());
    std::vector<int> dist(n, kInf), via(n, -1);
    dist[source] = 0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int v = 0; v < n; ++v) {
        if (dist[v] == kInf) continue;
        for (int a : out_[v]) {
          const Arc& arc = arcs_[a];
          if (arc.capacity == 0) continue;
          if (dist[v] + arc.cost < dist[arc.to]) {
            dist[arc.to] = dist[v] + arc.cost;
            via[arc.to] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink] == kInf) return std::nullopt;
    for (int v = sink; v != source;) {
      int a = via[v];
      arcs_[a].capacity -= 1;
      arcs_[a ^ 1].capacity += 1;
      v = arcs_[a ^ 1].to;
    }
    return dist[sink];
  }

  // Follows saturated forward arcs from `start`, consuming them.
  std::vector<int> take_walk(int start, int sink) {
    std::vector<int> walk{start};
    int v = start;
    while (v != sink) {
      int next = -1;
      for (int a : out_[v]) {
        Arc& arc = arcs_[a];
        if (arc.forward && arcs_[a ^ 1].capacity > 0) {
          arcs_[a ^ 1].capacity -= 1;
          next = arc.to;
          break;
        }
      }
      assert(next >= 0 && "flow decomposition lost its way");
      if (next < 0) break;
      v = next;
      walk.push_back(v);
    }
    return walk;
  }

 private:
  std::vector<std::vector<int>> out_;
  std::vector<Arc> arcs_;
};

}  // namespace

DisjointPairResult min_disjoint_pair(const Network& net, LinkId link_id) {
  const Link& tested = net.link(link_id);
  DisjointPairResult result;
  if (tested.self_loop()) return result;

  const int slots = net.max_node() + 1;
  auto in = [](NodeId n) { return 2 * n; };
  auto out = [](NodeId n) { return 2 * n + 1; };
  const int hub = 2 * slots;       // wired to the terminals
  const int anchor = 2 * slots + 1;  // wired to the link endpoints

  FlowNetwork flow(2 * slots + 2);
  for (NodeId n : net.nodes()) flow.add(in(n), out(n), 0);
  for (const Link& l : net.links()) {
    if (l.id == link_id || l.self_loop()) continue;
    flow.add(out(l.u), in(l.v), 1);
    flow.add(out(l.v), in(l.u), 1);
  }
  flow.add(hub, in(net.source()), 0);
  flow.add(hub, in(net.terminal()), 0);
  flow.add(out(tested.u), anchor, 0);
  flow.add(out(tested.v), anchor, 0);

  auto first = flow.augment(hub, anchor);
  if (!first) return result;
  auto second = flow.augment(hub, anchor);
  if (!second) return result;

  // Walk each unit of flow back out of the decomposition, mapping split
  // vertices to original node ids (only the `in` halves are recorded).
  auto to_nodes = [&](const std::vector<int>& walk) {
    std::vector<NodeId> nodes;
    for (int v : walk)
      if (v < 2 * slots && v % 2 == 0) nodes.push_back(v / 2);
    std::reverse(nodes.begin(), nodes.end());
    return nodes;
  };
  auto a = to_nodes(flow.take_walk(in(net.source()), anchor));
  auto b = to_nodes(flow.take_walk(in(net.terminal()), anchor));
  result.path1 = std::move(a);
  result.path2 = std::move(b);
  result.length_sum = static_cast<int>(result.path1.size() + result.path2.size()) - 2;
  assert(*result.length_sum == *first + *second);
  return result;
}

}  // namespace dcr
