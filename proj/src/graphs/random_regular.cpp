#include "lipext/graphs/random_regular.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lipext/core/error.hpp"

namespace lipext::graphs {

namespace {

// Unbiased draw from [0, bound) by rejection; independent of the standard
// library's distribution implementation so sequences are portable.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Graph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(n >= 3, ErrorKind::kDomain, "random regular graph needs n >= 3");
  require(d >= 1 && d < n, ErrorKind::kDomain,
          "random regular graph needs 1 <= d < n");
  require((n * d) % 2 == 0, ErrorKind::kParity,
          "n*d must be even (n=" + std::to_string(n) +
              ", d=" + std::to_string(d) + ")");

  std::mt19937_64 rng(seed);
  const std::size_t points = n * d;
  std::vector<std::size_t> perm(points);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));

  for (int attempt = 0; attempt < kRegularSamplingBudget; ++attempt) {
    for (std::size_t i = 0; i < points; ++i) perm[i] = i;
    for (std::size_t i = points - 1; i > 0; --i) {
      std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
    }
    for (auto& row : adj) std::fill(row.begin(), row.end(), 0);

    bool simple = true;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(points / 2);
    for (std::size_t i = 0; i < points && simple; i += 2) {
      std::size_t u = perm[i] / d;
      std::size_t v = perm[i + 1] / d;
      if (u == v || adj[u][v]) {
        simple = false;
        break;
      }
      adj[u][v] = adj[v][u] = 1;
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!simple) continue;

    std::sort(edges.begin(), edges.end());
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v, 1.0);
    if (!g.is_connected()) continue;
    return g;
  }
  fail(ErrorKind::kSampling, "pairing model rejected " +
                                 std::to_string(kRegularSamplingBudget) +
                                 " samples for n=" + std::to_string(n) +
                                 ", d=" + std::to_string(d));
}

}  // namespace lipext::graphs
