#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solver paths; each routine is a brute-force or closed-form route to the
// same quantity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

// Dense Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_dense(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
    }
    if (std::fabs(a[p][c]) < 1e-11) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

// max c.x  s.t.  A x <= b, x >= 0, by enumerating every choice of n tight
// constraints among the m rows and n sign constraints (bounded instances).
inline double lp_vertex_enumeration(const std::vector<std::vector<double>>& a,
                                    const std::vector<double>& b,
                                    const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t total = m + n;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<char> pick(total, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<std::vector<double>> sys;
    std::vector<double> rhs;
    for (std::size_t k = 0; k < total; ++k) {
      if (!pick[k]) continue;
      if (k < m) {
        sys.push_back(a[k]);
        rhs.push_back(b[k]);
      } else {
        std::vector<double> e(n, 0.0);
        e[k - m] = 1.0;
        sys.push_back(e);
        rhs.push_back(0.0);
      }
    }
    const auto x = solve_dense(sys, rhs);
    if (!x) continue;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = (*x)[j] >= -1e-9;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += a[i][j] * (*x)[j];
      ok = act <= b[i] + 1e-9;
    }
    if (!ok) continue;
    double val = 0.0;
    for (std::size_t j = 0; j < n; ++j) val += c[j] * (*x)[j];
    best = std::max(best, val);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

// BFS distances of an unweighted graph given as adjacency lists.
inline std::vector<std::vector<int>> bfs_all_pairs(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop_front();
      for (std::size_t y : adj[x]) {
        if (dist[s][y] < 0) {
          dist[s][y] = dist[s][x] + 1;
          q.push_back(y);
        }
      }
    }
  }
  return dist;
}

// Edge expansion by a plain bitmask scan over all proper vertex sets:
// min cut * n^2 / (|S| (n-|S|) |E|).
inline double expansion_bitmask(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& e) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
    std::size_t k = 0;
    for (std::size_t v = 0; v < n; ++v) k += (mask >> v) & 1u;
    std::size_t cut = 0;
    for (const auto& [u, v] : e) cut += ((mask >> u) & 1u) != ((mask >> v) & 1u);
    const double r = static_cast<double>(cut) * n * n /
                     (static_cast<double>(k) * (n - k) * e.size());
    best = std::min(best, r);
  }
  return best;
}

// Smallest edge cut separating A from B, by scanning every vertex set that
// contains A and avoids B (Menger: equals the edge-disjoint path count).
inline std::size_t min_ab_cut(std::size_t n,
                              const std::vector<std::pair<std::size_t, std::size_t>>& e,
                              const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
  std::size_t best = e.size();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    bool ok = true;
    for (auto x : a) ok = ok && ((mask >> x) & 1u);
    for (auto y : b) ok = ok && !((mask >> y) & 1u);
    if (!ok) continue;
    std::size_t cut = 0;
    for (const auto& [u, v] : e) cut += ((mask >> u) & 1u) != ((mask >> v) & 1u);
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace oracle
