#include "dcr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <fmt/format.h>

#include "adjacency.hpp"

namespace dcr {

double enum_exact(const Network& net) {
  const auto& links = net.links();
  const std::size_t m = links.size();
  if (m > kEnumLinkLimit)
    throw GuardError(fmt::format(
        "state enumeration refuses {} links (limit {}); use Monte Carlo instead",
        m, kEnumLinkLimit));

  detail::ReachWithin reach(net);
  std::vector<char> up(m, 0);
  double total = 0.0;
  const std::uint64_t states = std::uint64_t{1} << m;
  for (std::uint64_t i = 0; i < states; ++i) {
    if (i > 0) {
      // Gray code: step i flips the bit at the lowest set bit of i.
      up[std::countr_zero(i)] ^= 1;
    }
    if (!reach(up)) continue;
    double weight = 1.0;
    for (std::size_t k = 0; k < m; ++k)
      weight *= up[k] ? links[k].reliability : 1.0 - links[k].reliability;
    total += weight;
  }
  return total;
}

MinpathSet enumerate_minpaths(const Network& net) {
  MinpathSet out;
  detail::Adjacency adj(net);
  // Hops remaining to the terminal bound the search.
  auto to_terminal = detail::bfs(adj, net.terminal(), {}, [](std::size_t) { return true; });
  const auto& links = net.links();
  std::vector<char> on_path(adj.arcs.size(), 0);
  std::vector<LinkId> used;

  auto dfs = [&](auto&& self, NodeId at, int budget) -> void {
    if (at == net.terminal()) {
      auto ids = used;
      std::sort(ids.begin(), ids.end());
      out.paths.push_back(std::move(ids));
      return;
    }
    if (to_terminal[at] > budget) return;
    on_path[at] = 1;
    for (const auto& arc : adj.arcs[at]) {
      if (on_path[arc.to]) continue;
      used.push_back(links[arc.link_index].id);
      self(self, arc.to, budget - 1);
      used.pop_back();
    }
    on_path[at] = 0;
  };
  dfs(dfs, net.source(), net.diameter());

  // Drop duplicates and any set that contains another.
  auto& paths = out.paths;
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  std::vector<std::vector<LinkId>> kept;
  for (auto& p : paths) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return std::includes(p.begin(), p.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(std::move(p));
  }
  paths = std::move(kept);
  return out;
}

double inclusion_exclusion(const Network& net) {
  return inclusion_exclusion(net, enumerate_minpaths(net));
}

double inclusion_exclusion(const Network& net, const MinpathSet& minpaths) {
  const std::size_t count = minpaths.paths.size();
  if (count > kInclusionExclusionPathLimit)
    throw GuardError(fmt::format(
        "inclusion-exclusion refuses {} minpaths (limit {})", count,
        kInclusionExclusionPathLimit));

  const auto& links = net.links();
  const std::size_t words = (links.size() + 63) / 64;
  using Mask = std::vector<std::uint64_t>;
  auto mask_of = [&](const std::vector<LinkId>& ids) {
    Mask mask(words, 0);
    for (LinkId id : ids) {
      auto it = std::lower_bound(links.begin(), links.end(), id,
                                 [](const Link& l, LinkId v) { return l.id < v; });
      std::size_t k = static_cast<std::size_t>(it - links.begin());
      mask[k / 64] |= std::uint64_t{1} << (k % 64);
    }
    return mask;
  };

  // coefficient[U] = sum over nonempty subsets I with union U of (-1)^(|I|-1)
  std::map<Mask, std::int64_t> coefficient;
  for (const auto& path : minpaths.paths) {
    const Mask m = mask_of(path);
    std::map<Mask, std::int64_t> next = coefficient;
    for (const auto& [u, c] : coefficient) {
      Mask joined = u;
      for (std::size_t w = 0; w < words; ++w) joined[w] |= m[w];
      next[joined] -= c;
    }
    next[m] += 1;
    coefficient = std::move(next);
  }

  double total = 0.0;
  for (const auto& [u, c] : coefficient) {
    if (c == 0) continue;
    double p = 1.0;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (u[k / 64] >> (k % 64) & 1U) p *= links[k].reliability;
    total += static_cast<double>(c) * p;
  }
  return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kBlock = 4096;

}  // namespace

McEstimate monte_carlo(const Network& net, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("monte carlo needs at least one sample");
  const auto& links = net.links();
  detail::ReachWithin reach(net);
  std::vector<char> up(links.size());
  std::uint64_t hits = 0;
  for (std::uint64_t block = 0, done = 0; done < samples; ++block) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(block)));
    const std::uint64_t n = std::min(kBlock, samples - done);
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < links.size(); ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        up[k] = u < links[k].reliability;
      }
      hits += reach(up);
    }
    done += n;
  }
  McEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.standard_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

}  // namespace dcr
