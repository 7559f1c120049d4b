#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lipext/core/scalar.hpp"
#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"
#include "lipext/opt/lp.hpp"

namespace lipext::zext {

inline constexpr std::uint64_t kOptSearchLimit = 10'000'000;

// Graph with nonnegative edge weights, terminal vertices T (in order) and a
// metric d_T on T whose i-th point is terminals.indices[i].
template <class T>
struct ZeroExtensionInstance {
  graphs::WeightedGraph<T> graph;
  metric::Subset terminals;
  metric::FiniteMetric<T> d_t;

  // kDomain on empty/out-of-range/repeated terminals or an invalid d_T,
  // kShape when d_T has the wrong size.
  void check() const;
};

template <class T>
struct OptResult {
  T value{0};
  // Per vertex: position in `terminals` of its cluster; terminals map to
  // themselves.
  std::vector<std::size_t> assignment;
  std::uint64_t candidates = 0;
};

template <class T>
struct MetResult {
  T value{0};
  metric::FiniteMetric<T> metric;  // semi-metric on V extending d_T
  Arithmetic arithmetic = Arithmetic::kExact;
  double gap = 0.0;
};

template <class T>
struct EmdResult {
  T value{0};
  // Per vertex: probability vector over the terminals (a Dirac on T).
  std::vector<std::vector<T>> measures;
  Arithmetic arithmetic = Arithmetic::kExact;
  double gap = 0.0;
};

template <class T>
struct ZeroExtensionResult {
  T opt{0};
  T met{0};
  T emd{0};
  std::vector<std::size_t> opt_partition;
  metric::FiniteMetric<T> met_metric;
  std::vector<std::vector<T>> emd_measures;
  Arithmetic arithmetic = Arithmetic::kExact;
};

// sum_edges w(u,v) d_T(a(u), a(v)) for an assignment into terminal positions.
template <class T>
T assignment_cost(const ZeroExtensionInstance<T>& inst,
                  const std::vector<std::size_t>& assignment);

// Exhaustive search over the |T|^(|V|-|T|) assignments (kCapacity above
// kOptSearchLimit). Ties keep the first assignment in odometer order.
template <class T>
OptResult<T> opt_brute_force(const ZeroExtensionInstance<T>& inst);

// Semi-metric LP with every triangle row.
template <class T>
MetResult<T> met_relaxation(const ZeroExtensionInstance<T>& inst,
                            opt::Backend backend = opt::Backend::kAuto);

// Joint LP over the vertex measures and one coupling block per edge of
// positive weight.
template <class T>
EmdResult<T> emd_relaxation(const ZeroExtensionInstance<T>& inst,
                            opt::Backend backend = opt::Backend::kAuto);

// Runs all three and throws kInvariant unless MET <= EMD <= OPT (exactly
// for rationals, within tol * (1 + |value|) for doubles).
template <class T>
ZeroExtensionResult<T> relaxation_chain_check(
    const ZeroExtensionInstance<T>& inst,
    opt::Backend backend = opt::Backend::kAuto, double tol = 1e-9);

}  // namespace lipext::zext
