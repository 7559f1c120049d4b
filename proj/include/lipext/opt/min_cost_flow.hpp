#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lipext/core/scalar.hpp"

namespace lipext::opt {

template <class T>
struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  T cost{0};                  // >= 0
  std::optional<T> capacity;  // nullopt = unbounded
};

template <class T>
struct FlowNetwork {
  std::vector<T> supply;  // positive = source, negative = sink; sums to 0
  std::vector<Arc<T>> arcs;

  [[nodiscard]] std::size_t num_nodes() const { return supply.size(); }
  std::size_t add_arc(std::size_t from, std::size_t to, T cost,
                      std::optional<T> capacity = std::nullopt);
};

template <class T>
struct FlowResult {
  bool feasible = false;
  T cost{0};
  std::vector<T> flow;  // per arc
  // Node potentials with c(u,v) + pi(u) - pi(v) >= 0 on every residual arc
  // (= 0 on arcs carrying interior flow).
  std::vector<T> potential;
  // When infeasible: nodes reachable from the sources in the final residual
  // network. Their net supply exceeds the capacity leaving the set.
  std::vector<std::size_t> blocking_set;
};

// Successive shortest paths with Dijkstra on reduced costs. Exact for
// rational data. Throws kDomain on negative costs, unbalanced supplies or
// bad arc endpoints; reports infeasible supplies through `feasible`.
template <class T>
FlowResult<T> min_cost_flow(const FlowNetwork<T>& net);

// Largest violation of conservation, capacity, or reduced-cost optimality
// for a claimed optimal result (0 when the certificate checks out).
template <class T>
double flow_certificate_violation(const FlowNetwork<T>& net,
                                  const FlowResult<T>& res);

}  // namespace lipext::opt
