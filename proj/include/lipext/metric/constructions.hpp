#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"

namespace lipext::metric {

// Shortest-path metric of a connected graph with positive weights.
// Throws kConnectivity / kDomain.
template <class T>
FiniteMetric<T> shortest_path_metric(const graphs::WeightedGraph<T>& g);

// r-magnification at s: d(x,y) + r * |{x,y} ∩ s| for x != y.
template <class T>
FiniteMetric<T> magnify(const FiniteMetric<T>& x, const Subset& s, const T& r);

// Entrywise d^alpha, 0 < alpha <= 1.
FiniteMetric<double> snowflake(const FiniteMetric<double>& x, double alpha);

// Shortest-path metric on the disjoint union X ⊔ Y of the weighted graph with
// edges {x1,x2} of weight d_X, {y1,y2} of weight d_Y and {x, sigma(x)} of
// weight r. X's points come first. Colliding labels are prefixed "X." / "Y.".
template <class T>
FiniteMetric<T> glue_metric(const FiniteMetric<T>& x, const FiniteMetric<T>& y,
                            const std::vector<std::size_t>& sigma, const T& r);

// Point of F_2^n x F_2; bit b of `word` is coordinate b.
struct HypercubePoint {
  std::uint32_t word = 0;
  int layer = 0;
  int n = 0;

  [[nodiscard]] std::size_t index() const {
    return (static_cast<std::size_t>(layer) << n) | word;
  }
  static HypercubePoint from_index(std::size_t idx, int n);
  [[nodiscard]] std::string label() const;  // e.g. "0110/1"
};

inline constexpr int kMaxTwistedCubeDim = 14;

// (2a)^{2a} s (2r)^{2a-1} >= ((2a)^{2a/(2a-1)} - 1)^{2a-1}.
// Throws kDomain unless 1/2 < alpha <= 1.
bool check_rs_condition(double alpha, double r, double s);

struct TwistedCube {
  FiniteMetric<double> metric;  // 2^{n+1} points, index = layer*2^n + word
  bool rs_condition = false;
  std::string warning;  // non-empty when the rs-condition fails
};

// Two copies of the Hamming cube F_2^n joined by the three-case distance:
//   i=j=0: h^{1/(2a)};  i=j=1: min{s h, 2r + h^{1/(2a)}};
//   i!=j:  r + min{s h, h^{1/(2a)}};   h = Hamming distance.
// Throws kCapacity for n > kMaxTwistedCubeDim, kDomain for bad parameters.
TwistedCube twisted_cube_metric(int n, double alpha, double r, double s);

extern template FiniteMetric<double> shortest_path_metric(
    const graphs::WeightedGraph<double>&);
extern template FiniteMetric<Rational> shortest_path_metric(
    const graphs::WeightedGraph<Rational>&);

}  // namespace lipext::metric
