#include "dcr/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "adjacency.hpp"
#include "dcr/irrelevance.hpp"

namespace dcr {

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kIrrelevantLink: return "irrelevant-link";
    case Rule::kPendingTerminal: return "pending-terminal";
    case Rule::kPendingClosed: return "pending-closed";
    case Rule::kPendingNonTerminal: return "pending-nonterminal";
    case Rule::kPerfectPath: return "perfect-path";
    case Rule::kPerfectNeighbors: return "perfect-neighbors";
    case Rule::kParallelLinks: return "parallel-links";
    case Rule::kDanglingComponent: return "dangling-component";
  }
  return "unknown";
}

void ReductionTrace::append(ReductionStep step) {
  total_factor *= step.factor;
  total_diameter_delta += step.diameter_delta;
  steps.push_back(std::move(step));
}

void ReductionTrace::append(const ReductionTrace& other) {
  for (const auto& step : other.steps) append(step);
}

std::string format_step(const ReductionStep& step) {
  auto ids = [](const auto& v) {
    return v.empty() ? std::string("-") : fmt::format("{}", fmt::join(v, ","));
  };
  return fmt::format("{} links={} nodes={} d-delta={} factor={:.17g}",
                     rule_name(step.rule), ids(step.links), ids(step.nodes),
                     step.diameter_delta, step.factor);
}

namespace {

double parallel_or(double a, double b) {
  if (a == 1.0 || b == 1.0) return 1.0;
  return a + b - a * b;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("step does not apply: ") + what);
}

Network contract_pending(const Network& net, const ReductionStep& step) {
  require(step.links.size() == 1 && step.nodes.size() == 2, "malformed pending step");
  const Link& e = net.link(step.links[0]);
  const NodeId old_end = step.nodes[0], new_end = step.nodes[1];
  require(net.is_terminal(old_end) && net.degree(old_end) == 1 &&
              e.touches(old_end) && e.other(old_end) == new_end,
          "terminal is not pending on the recorded link");
  require(net.diameter() >= 1, "diameter exhausted");
  NodeId s = net.source(), t = net.terminal();
  (s == old_end ? s : t) = new_end;
  Network without_link = net.without({e.id}, {});
  std::set<NodeId> nodes = without_link.nodes();
  nodes.erase(old_end);
  return Network(std::move(nodes), without_link.links(), s, t, net.diameter() - 1);
}

Network merge_neighbors(const Network& net, const ReductionStep& step) {
  require(step.nodes.size() >= 2, "malformed perfect-neighbors step");
  require(net.diameter() >= 1, "diameter exhausted");
  const NodeId hub = step.nodes[0];
  require(net.is_terminal(hub), "merge centre is not a terminal");
  std::set<NodeId> absorbed(step.nodes.begin() + 1, step.nodes.end());
  require(!absorbed.count(net.source()) && !absorbed.count(net.terminal()),
          "cannot absorb a terminal");
  Network trimmed = net.without(step.links, {});
  std::vector<Link> links = trimmed.links();
  for (Link& l : links) {
    if (absorbed.count(l.u)) l.u = hub;
    if (absorbed.count(l.v)) l.v = hub;
  }
  std::set<NodeId> nodes = net.nodes();
  for (NodeId n : absorbed) nodes.erase(n);
  return Network(std::move(nodes), std::move(links), net.source(), net.terminal(),
                 net.diameter() - 1);
}

}  // namespace

Network apply_step(const Network& net, const ReductionStep& step) {
  switch (step.rule) {
    case Rule::kIrrelevantLink:
    case Rule::kDanglingComponent:
      return net.without(step.links, step.nodes);
    case Rule::kPendingTerminal:
      return contract_pending(net, step);
    case Rule::kPendingClosed:
      require(step.links.size() == 1, "malformed pending step");
      return make_perfect(net, step.links[0]);
    case Rule::kPendingNonTerminal:
      require(step.links.size() == 1 && step.nodes.size() == 1, "malformed pending step");
      return net.without(step.links, step.nodes);
    case Rule::kPerfectPath: {
      require(step.links.size() >= 2, "chain needs two links");
      double product = 1.0;
      for (LinkId id : step.links) product *= net.link(id).reliability;
      Network out = net;
      for (std::size_t i = 0; i + 1 < step.links.size(); ++i)
        out = make_perfect(out, step.links[i]);
      Link last = out.link(step.links.back());
      last.reliability = product;
      return out.with_link(last);
    }
    case Rule::kPerfectNeighbors:
      return merge_neighbors(net, step);
    case Rule::kParallelLinks: {
      require(step.links.size() >= 2, "parallel step needs two links");
      Link kept = net.link(step.links[0]);
      for (std::size_t i = 1; i < step.links.size(); ++i) {
        const Link& other = net.link(step.links[i]);
        require(std::minmax(kept.u, kept.v) == std::minmax(other.u, other.v),
                "links are not parallel");
        kept.reliability = parallel_or(kept.reliability, other.reliability);
      }
      std::vector<LinkId> gone(step.links.begin() + 1, step.links.end());
      return net.with_link(kept).without(gone, {});
    }
  }
  throw std::invalid_argument("unknown rule");
}

Network replay(const Network& net, const ReductionTrace& trace) {
  Network out = net;
  for (const auto& step : trace.steps) out = apply_step(out, step);
  return out;
}

namespace {

// Drives a rule to fixpoint: `find` proposes the next step or nullopt.
template <class Finder>
Reduced exhaust(const Network& net, Finder find) {
  Reduced result{net, {}};
  while (auto step = find(result.first)) {
    result.first = apply_step(result.first, *step);
    result.second.append(std::move(*step));
  }
  return result;
}

std::optional<ReductionStep> next_irrelevant(const Network& net) {
  std::vector<LinkId> doomed = irrelevant_links(net);
  std::vector<NodeId> lonely = net.without(doomed, {}).isolated_nodes();
  if (doomed.empty() && lonely.empty()) return std::nullopt;
  return ReductionStep{Rule::kIrrelevantLink, std::move(doomed), std::move(lonely), 0, 1.0};
}

// The single link at `n`, provided n has degree one.
const Link* sole_link(const Network& net, NodeId n) {
  const Link* found = nullptr;
  for (const Link& l : net.links()) {
    if (!l.touches(n)) continue;
    if (found != nullptr || l.self_loop()) return nullptr;
    found = &l;
  }
  return found;
}

std::optional<ReductionStep> next_pending(const Network& net) {
  if (net.diameter() >= 1) {
    for (NodeId end : {net.source(), net.terminal()}) {
      const Link* e = sole_link(net, end);
      if (e == nullptr) continue;
      NodeId across = e->other(end);
      if (net.is_terminal(across)) {
        if (e->perfect()) continue;
        return ReductionStep{Rule::kPendingClosed, {e->id}, {end, across}, 0, e->reliability};
      }
      return ReductionStep{Rule::kPendingTerminal, {e->id}, {end, across}, 1, e->reliability};
    }
  }
  for (NodeId n : net.nodes()) {
    if (net.is_terminal(n)) continue;
    if (const Link* e = sole_link(net, n))
      return ReductionStep{Rule::kPendingNonTerminal, {e->id}, {n}, 0, 1.0};
  }
  return std::nullopt;
}

// Internal chain nodes: non-terminal, exactly two link ends, no self-loop.
std::optional<ReductionStep> next_perfect_path(const Network& net) {
  std::map<NodeId, std::vector<const Link*>> incident;
  for (const Link& l : net.links()) {
    incident[l.u].push_back(&l);
    if (!l.self_loop()) incident[l.v].push_back(&l);
  }
  auto internal = [&](NodeId n) {
    if (net.is_terminal(n)) return false;
    auto it = incident.find(n);
    return it != incident.end() && it->second.size() == 2 &&
           !it->second[0]->self_loop() && !it->second[1]->self_loop();
  };

  std::set<NodeId> seen;
  for (NodeId start : net.nodes()) {
    if (seen.count(start) || !internal(start)) continue;
    seen.insert(start);
    // Walk outwards from `start` along each of its two links.
    auto walk = [&](const Link* first, std::vector<const Link*>& links) -> std::optional<NodeId> {
      const Link* link = first;
      NodeId at = start;
      while (true) {
        links.push_back(link);
        NodeId next = link->other(at);
        if (next == start) return std::nullopt;  // closed cycle of chain nodes
        if (!internal(next)) return next;
        seen.insert(next);
        const auto& pair = incident[next];
        link = pair[0] == link ? pair[1] : pair[0];
        at = next;
      }
    };
    std::vector<const Link*> left, right;
    auto end_a = walk(incident[start][0], left);
    if (!end_a) continue;
    auto end_b = walk(incident[start][1], right);
    if (!end_b) continue;

    // Chain in order from end_a to end_b.
    std::vector<LinkId> chain;
    for (auto it = left.rbegin(); it != left.rend(); ++it) chain.push_back((*it)->id);
    for (const Link* l : right) chain.push_back(l->id);
    int loose = 0;
    double product = 1.0;
    for (LinkId id : chain) {
      loose += !net.link(id).perfect();
      product *= net.link(id).reliability;
    }
    if (loose < 2) continue;

    // The product lands on the link farthest from the source.
    auto far = [&](NodeId n) {
      Hops h = hop_distance(net, net.source(), n);
      return std::pair{h ? *h : detail::kFar, n};
    };
    bool flip = far(*end_a) > far(*end_b) ||
                (*end_a == *end_b && chain.front() > chain.back());
    if (flip) std::reverse(chain.begin(), chain.end());
    return ReductionStep{Rule::kPerfectPath, std::move(chain), {*end_a, *end_b}, 0, 1.0};
  }
  return std::nullopt;
}

std::optional<ReductionStep> next_perfect_neighbors(const Network& net) {
  if (net.diameter() < 1) return std::nullopt;
  for (NodeId hub : {net.source(), net.terminal()}) {
    const NodeId other = hub == net.source() ? net.terminal() : net.source();
    std::set<NodeId> around;
    bool all_perfect = true;
    for (const Link& l : net.links()) {
      if (!l.touches(hub) || l.self_loop()) continue;
      all_perfect = all_perfect && l.perfect();
      around.insert(l.other(hub));
    }
    if (!all_perfect || around.empty() || around.count(other)) continue;
    ReductionStep step{Rule::kPerfectNeighbors, {}, {hub}, 1, 1.0};
    step.nodes.insert(step.nodes.end(), around.begin(), around.end());
    auto inside = [&](NodeId n) { return n == hub || around.count(n) != 0; };
    for (const Link& l : net.links())
      if (inside(l.u) && inside(l.v)) step.links.push_back(l.id);
    return step;
  }
  return std::nullopt;
}

std::optional<ReductionStep> next_parallel(const Network& net) {
  std::map<std::pair<NodeId, NodeId>, std::vector<LinkId>> groups;
  for (const Link& l : net.links())
    if (!l.self_loop()) groups[std::minmax(l.u, l.v)].push_back(l.id);
  for (auto& [ends, ids] : groups)
    if (ids.size() >= 2) return ReductionStep{Rule::kParallelLinks, ids, {}, 0, 1.0};
  return std::nullopt;
}

std::optional<ReductionStep> next_dangling(const Network& net) {
  const int slots = net.max_node() + 1;
  for (NodeId cut : net.nodes()) {
    // Components of G - cut by union-find.
    std::vector<NodeId> parent(slots);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId n) {
      while (parent[n] != n) n = parent[n] = parent[parent[n]];
      return n;
    };
    std::set<NodeId> attached;
    for (const Link& l : net.links()) {
      if (l.touches(cut)) {
        if (!l.self_loop()) attached.insert(l.other(cut));
        continue;
      }
      parent[find(l.u)] = find(l.v);
    }
    std::set<NodeId> roots;
    for (NodeId n : attached) roots.insert(find(n));
    for (NodeId root : roots) {
      bool has_terminal = false;
      std::vector<NodeId> members;
      for (NodeId n : net.nodes()) {
        if (n == cut || find(n) != root) continue;
        members.push_back(n);
        has_terminal = has_terminal || net.is_terminal(n);
      }
      if (has_terminal) continue;
      ReductionStep step{Rule::kDanglingComponent, {}, members, 0, 1.0};
      std::set<NodeId> doomed(members.begin(), members.end());
      for (const Link& l : net.links())
        if (doomed.count(l.u) || doomed.count(l.v)) step.links.push_back(l.id);
      return step;
    }
  }
  return std::nullopt;
}

}  // namespace

Reduced prune_irrelevant(const Network& net) { return exhaust(net, next_irrelevant); }
Reduced pending_node(const Network& net) { return exhaust(net, next_pending); }
Reduced perfect_path(const Network& net) { return exhaust(net, next_perfect_path); }
Reduced perfect_neighbors(const Network& net) { return exhaust(net, next_perfect_neighbors); }
Reduced parallel_links(const Network& net) { return exhaust(net, next_parallel); }
Reduced prune_dangling(const Network& net) { return exhaust(net, next_dangling); }

Reduced apply_all(const Network& net, const RuleSet& rules) {
  using Op = Reduced (*)(const Network&);
  const std::pair<bool, Op> ops[] = {
      {rules.irrelevant, prune_irrelevant},   {rules.pending, pending_node},
      {rules.perfect_path, perfect_path},     {rules.perfect_neighbors, perfect_neighbors},
      {rules.parallel, parallel_links},       {rules.dangling, prune_dangling},
  };
  Reduced result{net, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [enabled, op] : ops) {
      if (!enabled) continue;
      auto [next, trace] = op(result.first);
      if (trace.empty()) continue;
      changed = true;
      result.first = std::move(next);
      result.second.append(trace);
    }
  }
  return result;
}

}  // namespace dcr
