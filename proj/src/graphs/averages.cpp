#include "lipext/graphs/averages.hpp"

#include <cmath>
#include <string>

#include "lipext/core/error.hpp"
#include "lipext/metric/constructions.hpp"

namespace lipext::graphs {

template <class T>
AverageDistanceReport average_distance(const WeightedGraph<T>& g,
                                       const metric::Subset& s) {
  s.check(g.num_vertices(), true);
  const long d = g.regular_degree();
  require(d >= 3, ErrorKind::kRegularity,
          "average-distance bound needs a d-regular graph with d >= 3");
  const auto dist = metric::shortest_path_metric(g);
  T total(0);
  for (std::size_t a : s.indices) {
    for (std::size_t b : s.indices) total += dist(a, b);
  }
  const double k = static_cast<double>(s.size());
  AverageDistanceReport rep;
  rep.average = lipext::to_double(total) / (k * k);
  rep.bound = std::log(k) / (4.0 * std::log(static_cast<double>(d)));
  rep.holds = rep.average >= rep.bound;
  return rep;
}

template <class T>
T magnified_edge_average(const WeightedGraph<T>& g, const metric::Subset& s,
                         const T& r) {
  require(g.regular_degree() > 0, ErrorKind::kRegularity,
          "magnified edge average needs a regular graph");
  for (const auto& e : g.edges()) {
    require(e.weight == T(1), ErrorKind::kDomain,
            "magnified edge average needs unit edge weights");
  }
  const auto base = metric::shortest_path_metric(g);
  const auto mag = metric::magnify(base, s, r);
  T total(0);
  for (const auto& e : g.edges()) total += mag(e.u, e.v);
  const T average = total / T(static_cast<long>(g.num_edges()));
  const T expected =
      T(1) + T(2) * r * T(static_cast<long>(s.size())) /
                 T(static_cast<long>(g.num_vertices()));
  const double scale = std::max(1.0, std::fabs(lipext::to_double(expected)));
  require(approx_eq(average, expected, 1e-12 * scale), ErrorKind::kInvariant,
          "magnified edge average " + std::to_string(lipext::to_double(average)) +
              " != 1 + 2r|S|/n = " + std::to_string(lipext::to_double(expected)));
  return average;
}

template <class T>
PoincareSides<T> l1_poincare_sides(const WeightedGraph<T>& g,
                                   const std::vector<std::vector<T>>& h) {
  const std::size_t n = g.num_vertices();
  require(h.size() == n, ErrorKind::kShape, "h must be defined on every vertex");
  auto l1 = [&](std::size_t x, std::size_t y) {
    require(h[x].size() == h[y].size(), ErrorKind::kShape,
            "h values must share a dimension");
    T acc(0);
    for (std::size_t c = 0; c < h[x].size(); ++c) {
      acc += abs_value(T(h[x][c] - h[y][c]));
    }
    return acc;
  };
  PoincareSides<T> out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) out.lhs += l1(x, y);
  }
  out.lhs /= T(static_cast<long>(n * n));
  for (const auto& e : g.edges()) out.rhs += l1(e.u, e.v);
  require(g.num_edges() > 0, ErrorKind::kDomain, "graph has no edges");
  out.rhs /= T(static_cast<long>(g.num_edges()));
  return out;
}

#define LIPEXT_INSTANTIATE(T)                                                \
  template AverageDistanceReport average_distance(const WeightedGraph<T>&,    \
                                                  const metric::Subset&);     \
  template T magnified_edge_average(const WeightedGraph<T>&,                  \
                                    const metric::Subset&, const T&);         \
  template PoincareSides<T> l1_poincare_sides(                                \
      const WeightedGraph<T>&, const std::vector<std::vector<T>>&);

LIPEXT_INSTANTIATE(double)
LIPEXT_INSTANTIATE(Rational)
#undef LIPEXT_INSTANTIATE

}  // namespace lipext::graphs
