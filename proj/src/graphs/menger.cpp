#include "lipext/graphs/menger.hpp"

#include <algorithm>
#include <deque>

#include "lipext/core/error.hpp"

namespace lipext::graphs {

namespace {

// Flow on undirected edge e is f[e] in {-1, 0, 1}, positive meaning u -> v.
// Residual capacity from u to v is 1 - f[e], from v to u is 1 + f[e].
struct Incidence {
  std::size_t edge;
  std::size_t other;
  int dir;  // +1 if traversing u -> v
};

}  // namespace

template <class T>
DisjointPaths edge_disjoint_paths(const WeightedGraph<T>& g,
                                  const metric::Subset& a,
                                  const metric::Subset& b) {
  const std::size_t n = g.num_vertices();
  a.check(n, true);
  b.check(n, true);
  const auto in_a = a.mask(n);
  const auto in_b = b.mask(n);
  for (std::size_t v : b.indices) {
    require(!in_a[v], ErrorKind::kDomain, "A and B must be disjoint");
  }

  const auto& edges = g.edges();
  std::vector<std::vector<Incidence>> inc(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].u].push_back({e, edges[e].v, +1});
    inc[edges[e].v].push_back({e, edges[e].u, -1});
  }
  std::vector<int> flow(edges.size(), 0);
  auto residual = [&](const Incidence& step) {
    return 1 - step.dir * flow[step.edge];
  };

  // BFS from all of A at once (super-source with unbounded arcs); stop at the
  // first vertex of B (super-sink with unbounded arcs).
  std::vector<long> parent(n);  // edge used to reach a vertex, -1 at roots
  std::vector<char> seen(n);
  DisjointPaths out;
  for (;;) {
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<std::size_t> queue;
    for (std::size_t s : a.indices) {
      seen[s] = 1;
      queue.push_back(s);
    }
    long hit = -1;
    while (!queue.empty() && hit < 0) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (const auto& step : inc[x]) {
        if (seen[step.other] || residual(step) <= 0) continue;
        seen[step.other] = 1;
        parent[step.other] = static_cast<long>(step.edge);
        if (in_b[step.other]) {
          hit = static_cast<long>(step.other);
          break;
        }
        queue.push_back(step.other);
      }
    }
    if (hit < 0) break;
    // Walk back along parent edges, pushing one unit toward `hit`.
    for (std::size_t v = static_cast<std::size_t>(hit); parent[v] >= 0;) {
      const std::size_t e = static_cast<std::size_t>(parent[v]);
      const std::size_t u = edges[e].u == v ? edges[e].v : edges[e].u;
      flow[e] += edges[e].u == u ? 1 : -1;
      v = u;
    }
    ++out.count;
  }

  // Residual reachability from A gives the min cut.
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) out.source_side.indices.push_back(v);
  }
  for (const auto& e : edges) {
    if (seen[e.u] != seen[e.v]) out.min_cut.emplace_back(e.u, e.v);
  }
  require(out.min_cut.size() == out.count, ErrorKind::kInvariant,
          "max-flow value differs from the residual cut");

  // Greedy decomposition of the integral flow into A -> B paths.
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (flow[e] > 0) out_edges[edges[e].u].push_back(e);
    if (flow[e] < 0) out_edges[edges[e].v].push_back(e);
  }
  std::vector<char> used(edges.size(), 0);
  auto head = [&](std::size_t e, std::size_t from) {
    return edges[e].u == from ? edges[e].v : edges[e].u;
  };
  for (std::size_t s : a.indices) {
    for (;;) {
      std::vector<std::size_t> path{s};
      std::size_t x = s;
      bool stuck = false;
      while (!in_b[x]) {
        auto it = std::find_if(out_edges[x].begin(), out_edges[x].end(),
                               [&](std::size_t e) { return !used[e]; });
        if (it == out_edges[x].end()) {
          stuck = true;
          break;
        }
        used[*it] = 1;
        x = head(*it, x);
        // Drop any cycle closed at x.
        auto seen_at = std::find(path.begin(), path.end(), x);
        if (seen_at != path.end()) {
          const auto keep = static_cast<std::size_t>(seen_at - path.begin());
          path.resize(keep + 1);
        } else {
          path.push_back(x);
        }
      }
      if (stuck) break;
      out.paths.push_back(std::move(path));
    }
  }
  require(out.paths.size() == out.count, ErrorKind::kInvariant,
          "path decomposition does not match the flow value");
  return out;
}

double menger_lower_bound(double phi, std::size_t size_a, std::size_t size_b,
                          std::size_t num_edges, std::size_t n) {
  return phi * static_cast<double>(std::min(size_a, size_b)) *
         static_cast<double>(num_edges) / (2.0 * static_cast<double>(n));
}

template DisjointPaths edge_disjoint_paths(const WeightedGraph<double>&,
                                           const metric::Subset&,
                                           const metric::Subset&);
template DisjointPaths edge_disjoint_paths(const WeightedGraph<Rational>&,
                                           const metric::Subset&,
                                           const metric::Subset&);

}  // namespace lipext::graphs
