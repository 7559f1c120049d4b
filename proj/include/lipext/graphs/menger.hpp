#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"

namespace lipext::graphs {

struct DisjointPaths {
  std::size_t count = 0;
  // Vertex sequences; each starts in A, ends in B, and no undirected edge is
  // used twice across all paths.
  std::vector<std::vector<std::size_t>> paths;
  // Minimum A-B edge cut (residual-reachability certificate); its size
  // equals `count`.
  std::vector<std::pair<std::size_t, std::size_t>> min_cut;
  // Vertices reachable from A in the final residual graph.
  metric::Subset source_side;
};

// Maximum number of edge-disjoint paths joining A and B (Menger), by unit-
// capacity augmenting paths on the undirected edges. Throws kDomain when A
// and B overlap or either is empty.
template <class T>
DisjointPaths edge_disjoint_paths(const WeightedGraph<T>& g,
                                  const metric::Subset& a,
                                  const metric::Subset& b);

// phi * min(|A|,|B|) * |E| / (2n): the guaranteed path count when phi(G) >= phi.
double menger_lower_bound(double phi, std::size_t size_a, std::size_t size_b,
                          std::size_t num_edges, std::size_t n);

}  // namespace lipext::graphs
