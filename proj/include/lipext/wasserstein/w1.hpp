#pragma once

#include <cstddef>
#include <vector>

#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"

namespace lipext::wasserstein {

// Element of R_0^X: one value per point of the base metric, summing to zero
// (exactly for rationals, to 1e-12 relative for doubles).
template <class T>
struct SignedMeasure {
  std::vector<T> values;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  // Throws kDomain if the values do not sum to zero, kShape on size mismatch.
  void check(std::size_t n) const;

  static SignedMeasure dirac_difference(std::size_t n, std::size_t x,
                                        std::size_t y);
};

// Nonnegative coupling pi over X x X; `plan[i*n+j]` is mass moved i -> j.
template <class T>
struct TransportPlan {
  std::size_t n = 0;
  std::vector<T> plan;
  T cost{0};

  [[nodiscard]] const T& at(std::size_t i, std::size_t j) const {
    return plan[i * n + j];
  }
};

// 1-Lipschitz function on X certifying a W1 value by sum f*g.
template <class T>
struct LipschitzPotential {
  std::vector<T> g;
};

template <class T>
struct W1Result {
  T value{0};
  TransportPlan<T> plan;
  LipschitzPotential<T> potential;
  // |value - sum f*g|, as double (0 in exact mode).
  double duality_gap = 0.0;
};

// W1(mu, nu): min-cost flow from supp(mu) to supp(nu) on the complete
// bipartite support with costs d. Throws kDomain on negative entries or a
// mass mismatch.
template <class T>
W1Result<T> w1_distance(const std::vector<T>& mu, const std::vector<T>& nu,
                        const metric::FiniteMetric<T>& d);

// ||f||_{W1} = W1(f+, f-), with the Kantorovich potential
//   g(z) = max_{x in supp f+} (u(x) - d(x,z))
// built from the flow's node potentials u, which is 1-Lipschitz and
// attains sum f*g = ||f||.
template <class T>
W1Result<T> w1_norm(const SignedMeasure<T>& f, const metric::FiniteMetric<T>& d);

// Value only; same algorithm.
template <class T>
T w1_norm_value(const std::vector<T>& f, const metric::FiniteMetric<T>& d);

template <class T>
T l1_norm(const std::vector<T>& f);

// Largest |g(x)-g(y)| - d(x,y) over pairs (<= 0 for a 1-Lipschitz g).
template <class T>
double lipschitz_excess(const LipschitzPotential<T>& g,
                        const metric::FiniteMetric<T>& d);

template <class T>
struct SandwichReport {
  T l1{0};
  T w1{0};
  T lower{0};
  T upper{0};
  bool holds = false;
  T slack_lower{0};  // w1 - lower
  T slack_upper{0};  // upper - w1
};

// (min+ d / 2) |f|_1 <= ||f||_W1 <= (diam / 2) |f|_1.
template <class T>
SandwichReport<T> w1_sandwich_check(const SignedMeasure<T>& f,
                                    const metric::FiniteMetric<T>& d,
                                    double tol = 1e-12);

// Magnified form on (S, d_{X_r(S)}) for f in R_0^S (indexed in s's order):
//   r |f|_1 <= ||f||_{W1(S, d_{X_r(S)})} <= (r + diam(X)/2) |f|_1.
template <class T>
SandwichReport<T> w1_sandwich_check_magnified(const SignedMeasure<T>& f,
                                              const metric::FiniteMetric<T>& x,
                                              const metric::Subset& s,
                                              const T& r, double tol = 1e-12);

template <class T>
struct PoincareReport {
  T lhs{0};          // (1/n^2) sum_{x<y} ||F(x)-F(y)||
  T edge_average{0};  // (1/|E|) sum_edges ||F(x)-F(y)||
  T coefficient{0};  // (2r + diam(S,d_G)) / ((2r+1) phi)
  T rhs{0};          // coefficient * edge_average
  bool holds = false;
};

// Wasserstein-valued Poincare inequality on the magnified restriction
// (S, d_{G_r(S)}). F has one SignedMeasure on S per vertex. The pair sum is
// over unordered pairs (see graphs::l1_poincare_sides). phi must lie in
// (0,1] (kDomain otherwise) and be a lower bound on phi(G).
template <class T>
PoincareReport<T> poincare_check(const graphs::WeightedGraph<T>& g,
                                 const metric::Subset& s, const T& r,
                                 const std::vector<SignedMeasure<T>>& f,
                                 const T& phi, double tol = 1e-12);

}  // namespace lipext::wasserstein
