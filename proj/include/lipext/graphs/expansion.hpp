#pragma once

#include <cstddef>
#include <optional>

#include "lipext/core/scalar.hpp"
#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"

namespace lipext::graphs {

inline constexpr std::size_t kMaxExactExpansionVertices = 24;

enum class ExpansionMethod { kExact, kSpectralLowerBound };

const char* to_string(ExpansionMethod m);

// Edge expansion phi(G): the largest phi with
//   E(S, V\S) >= phi * |S| (n-|S|) |E| / n^2   for every S.
struct ExpansionReport {
  double phi = 0.0;
  std::optional<Rational> phi_exact;  // kExact only
  metric::Subset witness;             // minimizing S (kExact only)
  ExpansionMethod method = ExpansionMethod::kExact;
};

// Number of edges with exactly one endpoint in s (edge weights ignored).
template <class T>
std::size_t cut_size(const WeightedGraph<T>& g, const metric::Subset& s);

// Enumerates all 2^{n-1}-1 cuts in Gray-code order. Needs 2 <= n <= 24
// (kCapacity otherwise). Ties keep the first witness in enumeration order.
template <class T>
ExpansionReport edge_expansion_exact(const WeightedGraph<T>& g);

// Certified lower bound phi >= lambda_2(L) * n / |E| from the second
// smallest Laplacian eigenvalue (Rayleigh quotient of a centered indicator),
// shrunk by 1e-9 * lambda_max to absorb eigensolver error.
// Throws kConnectivity and kNumerical.
template <class T>
ExpansionReport edge_expansion_spectral_bound(const WeightedGraph<T>& g);

// Exact value when n <= 24, spectral lower bound otherwise.
template <class T>
ExpansionReport edge_expansion(const WeightedGraph<T>& g);

}  // namespace lipext::graphs
