#include <doctest.h>

#include <cmath>
#include <random>

#include "dcr/factor.hpp"
#include "dcr/oracles.hpp"
#include "support/brute_force.hpp"

using namespace dcr;
using namespace dcr::testing;
namespace S = dcr::testing::sample;

TEST_CASE("has_perfect_path") {
  Network g = sample_network(2, 1.0);
  CHECK(has_perfect_path(g));
  CHECK_FALSE(has_perfect_path(sample_network(2, 0.99)));
  Network chain = parse_network("d 2\ns 0\nt 3\ne 0 0 1 1\ne 1 1 2 1\ne 2 2 3 1\n");
  CHECK_FALSE(has_perfect_path(chain));
  CHECK(has_perfect_path(chain.with_diameter(3)));
  CHECK_FALSE(has_perfect_path(chain.with_diameter(0)));
}

TEST_CASE("pivot_select") {
  Network g = sample_network(6);
  CHECK(pivot_select(g) == S::k6T);  // {6,t} and {1,t} tie at the terminal

  Network one = make_perfect(make_perfect(sample_network(6, 1.0), S::k6T), S::k1T)
                    .with_link({S::k23, 2, 3, 0.5});
  CHECK(pivot_select(one) == S::k23);

  Network inward = make_perfect(make_perfect(g, S::k6T), S::k1T);
  // nearest non-perfect links now touch 1 or 6, one hop from t
  CHECK(pivot_select(inward) == S::kS1);

  CHECK_THROWS_AS(pivot_select(sample_network(6, 1.0)), std::invalid_argument);

  // Random tie-breaking only ever picks among the closest links.
  std::mt19937_64 rng(3);
  std::set<LinkId> picked;
  for (int i = 0; i < 50; ++i) picked.insert(pivot_select(g, &rng));
  CHECK(picked == std::set<LinkId>{S::k6T, S::k1T});
}

TEST_CASE("worked values") {
  Network single = parse_network("d 1\ns 0\nt 1\ne 0 0 1 0.7\n");
  CHECK(factor(single).reliability == 0.7);
  CHECK(factor(sample_network(2)).reliability == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(factor(sample_network(6)).reliability == doctest::Approx(0.265625).epsilon(1e-15));
  CHECK(factor(sample_network(5)).reliability == doctest::Approx(0.265625).epsilon(1e-15));
  Network pruned = delete_link(delete_link(sample_network(6), S::k12), S::k23);
  CHECK(factor(pruned).reliability == doctest::Approx(0.265625).epsilon(1e-15));
  CHECK(factor(sample_network(0)).reliability == 0.0);
  CHECK(factor(sample_network(1)).reliability == 0.0);
}

TEST_CASE("outcome counters") {
  FactorOutcome out = factor(sample_network(7));
  CHECK(out.recursion_nodes >= 1);
  CHECK(out.leaves_one + out.leaves_zero <= out.recursion_nodes);
  CHECK(out.reliability >= 0.0);
  CHECK(out.reliability <= 1.0);
}

TEST_CASE("matches state enumeration on random networks") {
  for (const Network& net : random_suite(200, 31337)) {
    const double expected = enum_exact(net);
    CHECK(std::abs(factor(net).reliability - expected) <= 1e-9);
    CHECK(std::abs(brute_reliability(net) - expected) <= 1e-12);
  }
}

TEST_CASE("branch identity holds at every node") {
  std::size_t branches = 0;
  FactorOptions options;
  options.on_branch = [&](const BranchRecord& b) {
    ++branches;
    double recombined = b.scale * (b.pivot_reliability * b.perfect_branch +
                                   (1.0 - b.pivot_reliability) * b.deleted_branch);
    CHECK(recombined == b.result);
    CHECK(b.perfect_branch >= b.deleted_branch - 1e-12);  // perfecting a link never hurts
  };
  for (const Network& net : random_suite(100, 8)) factor(net, options);
  CHECK(branches > 50);
}

TEST_CASE("pruning and reductions change work, not the value") {
  FactorOptions no_prune;
  no_prune.prune_irrelevant = false;
  FactorOptions bare;
  bare.prune_irrelevant = false;
  bare.reductions = false;
  std::uint64_t nodes_with = 0, nodes_without = 0;
  for (const Network& net : random_suite(150, 404)) {
    FactorOutcome full = factor(net);
    FactorOutcome skipped = factor(net, no_prune);
    FactorOutcome plain = factor(net, bare);
    CHECK(std::abs(full.reliability - skipped.reliability) <= 1e-12);
    CHECK(std::abs(full.reliability - plain.reliability) <= 1e-12);
    nodes_with += full.recursion_nodes;
    nodes_without += plain.recursion_nodes;
  }
  CHECK(nodes_with < nodes_without);
}

TEST_CASE("random tie-breaking is reproducible and exact") {
  FactorOptions seeded;
  seeded.tie_break_seed = 12345;
  for (const Network& net : random_suite(60, 90)) {
    double a = factor(net, seeded).reliability;
    double b = factor(net, seeded).reliability;
    CHECK(a == b);
    CHECK(std::abs(a - enum_exact(net)) <= 1e-9);
  }
}

TEST_CASE("monotone in the diameter and in each link") {
  std::mt19937_64 rng(17);
  for (const Network& net : random_suite(80, 55)) {
    double previous = 0.0;
    for (int d = 0; d <= static_cast<int>(net.nodes().size()); ++d) {
      double r = factor(net.with_diameter(d)).reliability;
      CHECK(r >= previous - 1e-12);
      previous = r;
    }
    const double base = factor(net).reliability;
    for (const Link& l : net.links()) {
      Link raised = l;
      raised.reliability = std::min(1.0, l.reliability + std::uniform_real_distribution<double>(0, 0.3)(rng));
      CHECK(factor(net.with_link(raised)).reliability >= base - 1e-12);
    }
  }
}

TEST_CASE("bit-identical across runs") {
  for (const Network& net : random_suite(30, 2)) CHECK(factor(net).reliability == factor(net).reliability);
}
