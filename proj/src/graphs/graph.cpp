#include "lipext/graphs/graph.hpp"

#include <algorithm>
#include <string>

#include "lipext/core/error.hpp"

namespace lipext::graphs {

template <class T>
void WeightedGraph<T>::add_edge(std::size_t u, std::size_t v, T weight) {
  require(u < n_ && v < n_, ErrorKind::kDomain,
          "edge endpoint out of range: " + std::to_string(u) + "," +
              std::to_string(v));
  require(u != v, ErrorKind::kDomain,
          "self-loop at vertex " + std::to_string(u));
  require(!(weight < T(0)), ErrorKind::kDomain, "negative edge weight");
  if (u > v) std::swap(u, v);
  require(!has_edge(u, v), ErrorKind::kDomain,
          "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  edges_.push_back({u, v, std::move(weight)});
}

template <class T>
bool WeightedGraph<T>::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge<T>& e) { return e.u == u && e.v == v; });
}

template <class T>
std::vector<std::size_t> WeightedGraph<T>::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

template <class T>
std::vector<std::vector<std::size_t>> WeightedGraph<T>::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

template <class T>
bool WeightedGraph<T>::is_connected() const {
  if (n_ == 0) return true;
  const auto adj = adjacency();
  std::vector<char> seen(n_, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n_;
}

template <class T>
long WeightedGraph<T>::regular_degree() const {
  const auto deg = degrees();
  if (deg.empty()) return 0;
  for (std::size_t d : deg) {
    if (d != deg[0]) return -1;
  }
  return static_cast<long>(deg[0]);
}

template class WeightedGraph<double>;
template class WeightedGraph<Rational>;

}  // namespace lipext::graphs
