#include "dcr/irrelevance.hpp"

#include "dcr/disjoint_paths.hpp"

namespace dcr {
namespace {

Hops add(Hops a, Hops b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

bool at_least(Hops sum, int d) { return !sum || *sum >= d; }

}  // namespace

std::pair<Hops, Hops> condition_sums(const Network& net, LinkId link_id,
                                     SufficientCondition level) {
  const Link& e = net.link(link_id);
  const NodeId s = net.source(), t = net.terminal(), x = e.u, y = e.v;
  switch (level) {
    case SufficientCondition::kInGraph:
      return {add(hop_distance(net, s, x), hop_distance(net, y, t)),
              add(hop_distance(net, s, y), hop_distance(net, x, t))};
    case SufficientCondition::kWithoutLink: {
      Network g = delete_link(net, link_id);
      return {add(hop_distance(g, s, x), hop_distance(g, y, t)),
              add(hop_distance(g, s, y), hop_distance(g, x, t))};
    }
    case SufficientCondition::kVertexDeleted:
      return {add(hop_distance(net, s, x, {y, t}), hop_distance(net, y, t, {s, x})),
              add(hop_distance(net, s, y, {x, t}), hop_distance(net, x, t, {s, y}))};
  }
  throw std::invalid_argument("unknown sufficient condition level");
}

bool sufficient_condition(const Network& net, LinkId link_id,
                          SufficientCondition level) {
  auto [first, second] = condition_sums(net, link_id, level);
  return at_least(first, net.diameter()) && at_least(second, net.diameter());
}

Hops relevance_threshold(const Network& net, LinkId link_id) {
  auto pair = min_disjoint_pair(net, link_id);
  if (!pair.length_sum) return std::nullopt;
  return *pair.length_sum + 1;
}

bool exact_irrelevant(const Network& net, LinkId link_id) {
  Hops threshold = relevance_threshold(net, link_id);
  return !threshold || *threshold > net.diameter();
}

IrrelevanceReport assess_link(const Network& net, LinkId link_id) {
  IrrelevanceReport r;
  r.link_id = link_id;
  r.cond1 = sufficient_condition(net, link_id, SufficientCondition::kInGraph);
  r.cond2 = sufficient_condition(net, link_id, SufficientCondition::kWithoutLink);
  r.cond3 = sufficient_condition(net, link_id, SufficientCondition::kVertexDeleted);
  r.relevance_threshold = relevance_threshold(net, link_id);
  r.exact_irrelevant = !r.relevance_threshold || *r.relevance_threshold > net.diameter();
  return r;
}

std::vector<IrrelevanceReport> sweep(const Network& net) {
  std::vector<IrrelevanceReport> out;
  out.reserve(net.links().size());
  for (const Link& l : net.links()) out.push_back(assess_link(net, l.id));
  return out;
}

std::vector<LinkId> irrelevant_links(const Network& net) {
  std::vector<LinkId> out;
  for (const Link& l : net.links())
    if (exact_irrelevant(net, l.id)) out.push_back(l.id);
  return out;
}

}  // namespace dcr
