#include "lipext/graphs/expansion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "lipext/core/error.hpp"

namespace lipext::graphs {

const char* to_string(ExpansionMethod m) {
  return m == ExpansionMethod::kExact ? "exact" : "spectral-lower-bound";
}

template <class T>
std::size_t cut_size(const WeightedGraph<T>& g, const metric::Subset& s) {
  const auto in_s = s.mask(g.num_vertices());
  std::size_t cut = 0;
  for (const auto& e : g.edges()) cut += in_s[e.u] != in_s[e.v];
  return cut;
}

template <class T>
ExpansionReport edge_expansion_exact(const WeightedGraph<T>& g) {
  const std::size_t n = g.num_vertices();
  require(n >= 2, ErrorKind::kDomain, "expansion needs at least 2 vertices");
  require(n <= kMaxExactExpansionVertices, ErrorKind::kCapacity,
          "exact expansion limited to n <= 24; use the spectral lower bound");

  const std::size_t m = g.num_edges();
  std::vector<std::uint32_t> nbr(n, 0);
  std::vector<int> deg(n, 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= 1U << e.v;
    nbr[e.v] |= 1U << e.u;
    ++deg[e.u];
    ++deg[e.v];
  }

  // S ranges over nonempty subsets of {0..n-2}; vertex n-1 always sits in
  // the complement, which covers every cut exactly once.
  const std::uint32_t count = 1U << (n - 1);
  std::uint32_t set = 0;
  std::int64_t cut = 0;
  std::int64_t best_cut = -1;
  std::int64_t best_size = 1;  // |S| (n - |S|)
  std::uint32_t best_set = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const int v = std::countr_zero(i);
    const std::uint32_t bit = 1U << v;
    if (set & bit) {
      set &= ~bit;
      cut -= deg[v] - 2 * std::popcount(nbr[v] & set);
    } else {
      cut += deg[v] - 2 * std::popcount(nbr[v] & set);
      set |= bit;
    }
    const std::int64_t k = std::popcount(set);
    const std::int64_t size = k * (static_cast<std::int64_t>(n) - k);
    if (best_cut < 0 || cut * best_size < best_cut * size) {
      best_cut = cut;
      best_size = size;
      best_set = set;
    }
  }

  ExpansionReport rep;
  rep.method = ExpansionMethod::kExact;
  for (std::size_t v = 0; v < n; ++v) {
    if (best_set & (1U << v)) rep.witness.indices.push_back(v);
  }
  if (m == 0) {
    rep.phi_exact = Rational(0);
  } else {
    const std::int64_t nn = static_cast<std::int64_t>(n * n);
    rep.phi_exact = Rational(best_cut * nn) /
                    Rational(best_size * static_cast<std::int64_t>(m));
  }
  rep.phi = lipext::to_double(*rep.phi_exact);
  return rep;
}

template <class T>
ExpansionReport edge_expansion_spectral_bound(const WeightedGraph<T>& g) {
  const std::size_t n = g.num_vertices();
  require(n >= 2, ErrorKind::kDomain, "expansion needs at least 2 vertices");
  require(g.is_connected(), ErrorKind::kConnectivity,
          "spectral expansion bound needs a connected graph");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
    lap(u, v) -= 1.0;
    lap(v, u) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      lap, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::kNumerical,
          "Laplacian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();  // ascending
  const double lambda_max = ev(ev.size() - 1);
  const double lambda2 = ev(1) - 1e-9 * std::max(1.0, lambda_max);
  ExpansionReport rep;
  rep.method = ExpansionMethod::kSpectralLowerBound;
  rep.phi = std::max(0.0, lambda2) * static_cast<double>(n) /
            static_cast<double>(g.num_edges());
  return rep;
}

template <class T>
ExpansionReport edge_expansion(const WeightedGraph<T>& g) {
  if (g.num_vertices() <= kMaxExactExpansionVertices) {
    return edge_expansion_exact(g);
  }
  return edge_expansion_spectral_bound(g);
}

#define LIPEXT_INSTANTIATE(T)                                              \
  template std::size_t cut_size(const WeightedGraph<T>&,                    \
                                const metric::Subset&);                     \
  template ExpansionReport edge_expansion_exact(const WeightedGraph<T>&);   \
  template ExpansionReport edge_expansion_spectral_bound(                   \
      const WeightedGraph<T>&);                                             \
  template ExpansionReport edge_expansion(const WeightedGraph<T>&);

LIPEXT_INSTANTIATE(double)
LIPEXT_INSTANTIATE(Rational)
#undef LIPEXT_INSTANTIATE

}  // namespace lipext::graphs
