#pragma once

#include <vector>

#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"

namespace lipext::graphs {

struct AverageDistanceReport {
  double average = 0.0;  // (1/|S|^2) sum_{x,y in S} d_G(x,y)
  double bound = 0.0;    // log|S| / (4 log d), natural log
  bool holds = false;
};

// Throws kRegularity unless g is d-regular with d >= 3, kConnectivity if g is
// disconnected, kDomain if s is empty.
template <class T>
AverageDistanceReport average_distance(const WeightedGraph<T>& g,
                                       const metric::Subset& s);

// (1/|E|) sum over edges of the r-magnified shortest-path distance, computed
// from the magnified metric and checked against 1 + 2r|S|/n (exactly for
// rationals, to 1e-12 for doubles; kInvariant on mismatch). Needs a
// unit-weight regular graph. An empty s is allowed.
template <class T>
T magnified_edge_average(const WeightedGraph<T>& g, const metric::Subset& s,
                         const T& r);

// Both sides of the l1 Poincare inequality for h : V -> R^k,
//   phi * lhs <= rhs,  lhs = (1/n^2) sum_{x<y} |h(x)-h(y)|_1,
//                      rhs = (1/|E|) sum_{edges} |h(x)-h(y)|_1.
// The double sum runs over unordered pairs, which is the form equivalent to
// the expansion definition (cut-cone decomposition).
template <class T>
struct PoincareSides {
  T lhs{0};
  T rhs{0};
};

template <class T>
PoincareSides<T> l1_poincare_sides(const WeightedGraph<T>& g,
                                   const std::vector<std::vector<T>>& h);

}  // namespace lipext::graphs
