#include <doctest.h>

#include <cmath>

#include "dcr/oracles.hpp"
#include "dcr/reductions.hpp"
#include "support/brute_force.hpp"

using namespace dcr;
using namespace dcr::testing;
namespace S = dcr::testing::sample;

namespace {

// R(G, d) must equal factor * R(G', d - delta).
void check_preserved(const Network& before, const Reduced& reduced, double tol = 1e-12) {
  const auto& [after, trace] = reduced;
  CHECK(after.diameter() == before.diameter() - trace.total_diameter_delta);
  const double lhs = enum_exact(before);
  const double rhs = trace.total_factor * enum_exact(after);
  CHECK_MESSAGE(std::abs(lhs - rhs) <= tol, serialize(before) << "lhs=" << lhs << " rhs=" << rhs);
  CHECK(replay(before, trace) == after);
  double product = 1.0;
  for (const auto& step : trace.steps) product *= step.factor;
  CHECK(product == trace.total_factor);
}

bool has_step(const ReductionTrace& trace, Rule rule) {
  for (const auto& s : trace.steps)
    if (s.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("prune_irrelevant on the sample network") {
  auto reduced = prune_irrelevant(sample_network(6));
  const auto& [g, trace] = reduced;
  CHECK(g.find_link(S::k12) == nullptr);
  CHECK(g.find_link(S::k23) == nullptr);
  CHECK(g.find_link(S::k34) == nullptr);
  CHECK_FALSE(g.has_node(2));
  CHECK_FALSE(g.has_node(3));
  CHECK(g.links().size() == 6);
  CHECK(trace.total_factor == 1.0);
  check_preserved(sample_network(6), reduced);

  auto unchanged = prune_irrelevant(sample_network(7));
  CHECK(unchanged.second.empty());
  CHECK(unchanged.first == sample_network(7));
}

TEST_CASE("prune_irrelevant when the terminal is unreachable") {
  Network g = parse_network("d 4\ns 0\nt 3\ne 0 0 1 .5\ne 1 1 2 .5\ne 2 2 0 .5\n");
  auto [h, trace] = prune_irrelevant(g);
  CHECK(h.links().empty());
  CHECK(h.nodes() == std::set<NodeId>{0, 3});
}

TEST_CASE("pending_node") {
  Network path = parse_network("d 2\ns 0\nt 2\ne 0 0 1 0.9\ne 1 1 2 0.8\n");
  SUBCASE("one contraction") {
    ReductionStep step{Rule::kPendingTerminal, {0}, {0, 1}, 1, 0.9};
    Network h = apply_step(path, step);
    CHECK(h.source() == 1);
    CHECK(h.links().size() == 1);
    CHECK(h.diameter() == 1);
  }
  SUBCASE("to fixpoint") {
    auto reduced = pending_node(path);
    CHECK(reduced.second.total_factor == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(enum_exact(reduced.first) == 1.0);
    check_preserved(path, reduced);
  }
  SUBCASE("sample network source contraction") {
    Network g = sample_network(6, 0.9);
    auto [h, trace] = pending_node(g);
    REQUIRE_FALSE(trace.empty());
    CHECK(trace.steps[0].rule == Rule::kPendingTerminal);
    CHECK(trace.steps[0].factor == 0.9);
    CHECK(h.source() == 1);
    CHECK(h.diameter() == 5);
    check_preserved(g, {h, trace});
  }
  SUBCASE("no contraction at d = 0") {
    auto [h, trace] = pending_node(path.with_diameter(0));
    CHECK(trace.empty());
  }
  SUBCASE("non-terminal pendants go") {
    Network g = parse_network("d 2\ns 0\nt 1\ne 0 0 1 .5\ne 1 0 2 .5\ne 2 2 1 .5\ne 3 2 3 .5\ne 4 3 4 .5\n");
    auto reduced = pending_node(g);
    CHECK(reduced.first.links().size() == 3);
    CHECK_FALSE(reduced.first.has_node(4));
    CHECK(has_step(reduced.second, Rule::kPendingNonTerminal));
    check_preserved(g, reduced);
  }
  SUBCASE("closed form when the pendant link reaches the other terminal") {
    Network g = parse_network("d 3\ns 0\nt 1\ne 0 0 1 .6\ne 1 1 2 .5\ne 2 2 3 .5\ne 3 3 1 .5\n");
    auto reduced = pending_node(g);
    CHECK(has_step(reduced.second, Rule::kPendingClosed));
    CHECK(reduced.second.total_factor == 0.6);
    check_preserved(g, reduced);
  }
}

TEST_CASE("perfect_path") {
  Network chain = parse_network("d 3\ns 0\nt 3\ne 0 0 1 0.9\ne 1 1 2 0.9\ne 2 2 3 0.9\n");
  auto reduced = perfect_path(chain);
  const Network& h = reduced.first;
  CHECK(h.link(0).reliability == 1.0);
  CHECK(h.link(1).reliability == 1.0);
  CHECK(h.link(2).reliability == doctest::Approx(0.729).epsilon(1e-15));
  CHECK(h.diameter() == 3);
  check_preserved(chain, reduced);

  // A terminal in the middle of the chain stops the rule.
  Network through = parse_network("d 3\ns 1\nt 3\ne 0 0 1 0.9\ne 1 1 2 0.9\ne 2 2 3 0.9\ne 3 0 3 .5\n");
  auto r2 = perfect_path(through);
  // 1-0-3 is a chain of its own, but none may run across s from 0 into 2.
  for (const auto& step : r2.second.steps) {
    bool has0 = std::find(step.links.begin(), step.links.end(), 0) != step.links.end();
    bool has1 = std::find(step.links.begin(), step.links.end(), 1) != step.links.end();
    CHECK_FALSE((has0 && has1));
  }
  check_preserved(through, r2);

  // Already reduced chains are left alone.
  CHECK(perfect_path(h).second.empty());
}

TEST_CASE("perfect_neighbors") {
  Network star = parse_network(
      "d 3\ns 0\nt 5\ne 0 0 1 1\ne 1 0 2 1\ne 2 1 3 .5\ne 3 2 3 .5\ne 4 3 5 .5\ne 5 1 2 .4\n");
  auto reduced = perfect_neighbors(star);
  const Network& h = reduced.first;
  CHECK(h.diameter() == 2);
  CHECK_FALSE(h.has_node(1));
  CHECK_FALSE(h.has_node(2));
  CHECK(h.find_link(5) == nullptr);  // internal link vanished
  CHECK(h.link(2).u == 0);           // outward links re-anchored, parallels kept
  CHECK(h.link(3).u == 0);
  check_preserved(star, reduced);

  // Adjacent terminals: the rule stays away.
  Network adjacent = parse_network("d 2\ns 0\nt 1\ne 0 0 1 1\ne 1 0 2 1\ne 2 2 1 .5\n");
  CHECK(perfect_neighbors(adjacent).second.empty());
  // A non-perfect link at s blocks the merge at s.
  Network blocked = star.with_link({1, 0, 2, 0.5});
  CHECK(perfect_neighbors(blocked).second.empty());
}

TEST_CASE("parallel_links") {
  auto combined = [](double a, double b) {
    Network g = Network({0, 1}, {{0, 0, 1, a}, {1, 1, 0, b}}, 0, 1, 1);
    auto [h, trace] = parallel_links(g);
    REQUIRE(h.links().size() == 1);
    return h.link(0);
  };
  CHECK(combined(0.5, 0.5).reliability == 0.75);
  CHECK(combined(1.0, 0.3).perfect());
  CHECK(combined(0.9, 0.9).reliability == doctest::Approx(0.99).epsilon(1e-15));

  Network three = Network({0, 1}, {{0, 0, 1, .5}, {1, 1, 0, .5}, {2, 0, 1, .5}}, 0, 1, 1);
  auto reduced = parallel_links(three);
  CHECK(reduced.first.link(0).reliability == 0.875);
  check_preserved(three, reduced);
}

TEST_CASE("prune_dangling") {
  // s=0 - 1 - t=2, triangle 1-3-4 hanging off node 1
  Network g = parse_network(
      "d 4\ns 0\nt 2\ne 0 0 1 .5\ne 1 1 2 .5\ne 2 1 3 .5\ne 3 3 4 .5\ne 4 4 1 .5\n");
  auto reduced = prune_dangling(g);
  CHECK(reduced.first.links().size() == 2);
  CHECK_FALSE(reduced.first.has_node(3));
  CHECK_FALSE(reduced.first.has_node(4));
  check_preserved(g, reduced);

  CHECK(prune_dangling(sample_network(6)).second.empty());

  // Component behind a terminal that does not reach the other terminal.
  Network behind = parse_network("d 2\ns 0\nt 1\ne 0 0 1 .5\ne 1 0 2 .5\ne 2 2 3 .5\ne 3 3 0 .5\n");
  auto r2 = prune_dangling(behind);
  CHECK(r2.first.links().size() == 1);
  check_preserved(behind, r2);
}

TEST_CASE("apply_all closed forms") {
  Network path = parse_network("d 2\ns 0\nt 2\ne 0 0 1 0.9\ne 1 1 2 0.8\n");
  for (int d = 2; d < 5; ++d) {
    auto [h, trace] = apply_all(path.with_diameter(d));
    CHECK(trace.total_factor == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(h.links().size() == 1);
    CHECK(h.links()[0].perfect());
  }
  Network pair = Network({0, 1}, {{0, 0, 1, .3}, {1, 1, 0, .6}}, 0, 1, 1);
  auto [h, trace] = apply_all(pair);
  CHECK(trace.total_factor * enum_exact(h) == doctest::Approx(0.3 + 0.6 - 0.18).epsilon(1e-15));
}

TEST_CASE("apply_all on the sample network") {
  Network g = sample_network(6, 0.9);
  auto reduced = apply_all(g);
  const auto& [h, trace] = reduced;
  CHECK(h.find_link(S::k12) == nullptr);
  CHECK(h.find_link(S::k23) == nullptr);
  CHECK(h.source() == 1);  // s was pendant on {s,1}
  CHECK(trace.total_diameter_delta == 1);
  CHECK(trace.total_factor == doctest::Approx(0.9).epsilon(1e-15));
  check_preserved(g, reduced);
}

TEST_CASE("format_step") {
  ReductionStep step{Rule::kPendingTerminal, {0}, {0, 1}, 1, 0.9};
  CHECK(format_step(step) == "pending-terminal links=0 nodes=0,1 d-delta=1 factor=0.90000000000000002");
  ReductionStep empty{Rule::kIrrelevantLink, {}, {4}, 0, 1.0};
  CHECK(format_step(empty) == "irrelevant-link links=- nodes=4 d-delta=0 factor=1");
}

TEST_CASE("apply_step rejects steps that do not fit") {
  Network g = sample_network(6);
  CHECK_THROWS(apply_step(g, {Rule::kPendingTerminal, {S::k12}, {1, 2}, 1, 0.5}));
  CHECK_THROWS(apply_step(g, {Rule::kParallelLinks, {S::k12, S::k23}, {}, 0, 1.0}));
  CHECK_THROWS(apply_step(g, {Rule::kPerfectNeighbors, {}, {1, 2}, 1, 1.0}));
}

TEST_CASE("every reduction preserves reliability on random networks") {
  using Op = Reduced (*)(const Network&);
  const std::pair<const char*, Op> ops[] = {
      {"prune_irrelevant", prune_irrelevant}, {"pending_node", pending_node},
      {"perfect_path", perfect_path},         {"perfect_neighbors", perfect_neighbors},
      {"parallel_links", parallel_links},     {"prune_dangling", prune_dangling},
      {"apply_all", [](const Network& n) { return apply_all(n); }},
  };
  std::mt19937_64 rng(5);
  std::map<std::string, int> fired;
  for (Network net : random_suite(200, 77)) {
    // Pin a few links so the perfect-* rules get material.
    for (const Link& l : net.links())
      if (std::bernoulli_distribution(0.3)(rng)) net = make_perfect(net, l.id);
    for (auto [name, op] : ops) {
      CAPTURE(name);
      auto reduced = op(net);
      if (!reduced.second.empty()) ++fired[name];
      check_preserved(net, reduced);
    }
    auto once = apply_all(net);
    auto twice = apply_all(once.first);
    CHECK(twice.second.empty());
    CHECK(twice.first == once.first);
  }
  for (auto [name, op] : ops) CHECK_MESSAGE(fired[name] > 3, name);
}
