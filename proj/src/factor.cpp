#include "dcr/factor.hpp"

#include <algorithm>
#include <vector>

#include "adjacency.hpp"
#include "dcr/reductions.hpp"

namespace dcr {

bool has_perfect_path(const Network& net) {
  detail::Adjacency adj(net);
  const auto& links = net.links();
  auto dist = detail::bfs(adj, net.source(), {},
                          [&](std::size_t i) { return links[i].perfect(); },
                          net.diameter());
  return dist[net.terminal()] <= net.diameter();
}

LinkId pivot_select(const Network& net, std::mt19937_64* rng) {
  detail::Adjacency adj(net);
  auto dist = detail::bfs(adj, net.terminal(), {}, [](std::size_t) { return true; });
  int best = detail::kFar;
  std::vector<LinkId> ties;
  for (const Link& l : net.links()) {
    if (l.perfect()) continue;
    int near = std::min(dist[l.u], dist[l.v]);
    if (near < best || ties.empty()) {
      best = near;
      ties.assign({l.id});
    } else if (near == best) {
      ties.push_back(l.id);
    }
  }
  if (ties.empty()) throw std::invalid_argument("no non-perfect link to branch on");
  if (rng == nullptr || ties.size() == 1) return ties.front();
  std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
  return ties[pick(*rng)];
}

namespace {

class Engine {
 public:
  explicit Engine(const FactorOptions& options) : options_(options) {
    if (options.tie_break_seed) rng_.emplace(*options.tie_break_seed);
    rules_.irrelevant = options.prune_irrelevant;
  }

  double run(Network net) {
    ++outcome.recursion_nodes;
    if (auto done = terminal_value(net)) return *done;

    double scale = 1.0;
    std::size_t steps = 0;
    if (options_.prune_irrelevant) {
      auto [pruned, trace] = prune_irrelevant(net);
      net = std::move(pruned);
      steps += trace.steps.size();
    }
    if (options_.reductions) {
      auto [reduced, trace] = apply_all(net, rules_);
      net = std::move(reduced);
      scale = trace.total_factor;
      steps += trace.steps.size();
    }
    outcome.reductions_applied += steps;
    if (steps > 0) {
      if (auto done = terminal_value(net)) return scale * *done;
    }

    const LinkId pivot = pivot_select(net, rng_ ? &*rng_ : nullptr);
    const double p = net.link(pivot).reliability;
    // Perfect branch first: summation order is fixed.
    const double up = run(make_perfect(net, pivot));
    const double down = run(delete_link(net, pivot));
    const double result = scale * (p * up + (1.0 - p) * down);
    if (options_.on_branch) options_.on_branch({pivot, p, up, down, scale, result});
    return result;
  }

  FactorOutcome outcome;

 private:
  std::optional<double> terminal_value(const Network& net) {
    if (has_perfect_path(net)) {
      ++outcome.leaves_one;
      return 1.0;
    }
    Hops reach = hop_distance(net, net.source(), net.terminal());
    if (!reach || *reach > net.diameter()) {
      ++outcome.leaves_zero;
      return 0.0;
    }
    return std::nullopt;
  }

  const FactorOptions& options_;
  RuleSet rules_;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace

FactorOutcome factor(const Network& net, const FactorOptions& options) {
  Engine engine(options);
  engine.outcome.reliability = engine.run(net);
  return engine.outcome;
}

}  // namespace dcr
