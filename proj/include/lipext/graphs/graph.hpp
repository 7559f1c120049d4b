#pragma once

#include <cstddef>
#include <vector>

#include "lipext/core/scalar.hpp"

namespace lipext::graphs {

template <class T>
struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  T weight{1};
};

// Undirected simple graph on vertices 0..n-1 with positive edge weights.
template <class T>
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : n_(n) {}

  // Throws kDomain on self-loops, duplicates, out-of-range endpoints, or
  // negative weights. Zero weights are accepted (0-Extension instances use
  // them); shortest-path metrics reject them.
  void add_edge(std::size_t u, std::size_t v, T weight = T(1));

  [[nodiscard]] std::size_t num_vertices() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge<T>>& edges() const noexcept {
    return edges_;
  }

  [[nodiscard]] std::vector<std::size_t> degrees() const;
  [[nodiscard]] std::vector<std::vector<std::size_t>> adjacency() const;
  [[nodiscard]] bool is_connected() const;
  // Degree if every vertex has the same degree, otherwise -1.
  [[nodiscard]] long regular_degree() const;
  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge<T>> edges_;
};

using Graph = WeightedGraph<double>;

extern template class WeightedGraph<double>;
extern template class WeightedGraph<Rational>;

}  // namespace lipext::graphs
