#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lipext/experiments/record.hpp"
#include "lipext/graphs/graph.hpp"
#include "lipext/metric/finite_metric.hpp"
#include "lipext/opt/lp.hpp"

namespace lipext::experiments {

// All bound formulas use the natural logarithm.
inline constexpr const char* kLogBase = "natural";
inline constexpr std::size_t kMaxExpanderVertices = 64;

struct ExpanderInstance {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  graphs::Graph graph;
  metric::Subset s;           // first |S| vertices
  std::size_t s_formula = 0;  // floor(n sqrt(d log d) / sqrt(log n))
  bool clamped = false;       // s_formula > n
  double r = 0.0;             // sqrt(log n) / sqrt(d log d)
  metric::FiniteMetric<double> graph_metric;  // d_G
  metric::FiniteMetric<double> magnified;     // d_{G_r(S)} on V
  metric::FiniteMetric<double> base;          // magnified restricted to S
  // f(x) = e_x - (1/|S|) sum_z e_z, one vector over S per element of S.
  std::vector<std::vector<double>> boundary;
  // max |W1(f(x) - f(y)) - d_{G_r(S)}(x,y)| over pairs of S.
  double isometry_error = 0.0;
};

// Throws kDomain unless d >= 3 and n >= 8; kParity when nd is odd; sampling
// errors from the generator propagate.
ExpanderInstance build_expander_instance(std::size_t n, std::size_t d,
                                         std::uint64_t seed);

// phi/(1 + r|S|/n) * min{ |S| log n / (n d log d),
//                         (16 r^2 log d + r log(phi|S|/8)) / (diam log d) },
// without the unspecified universal constant; 0 when
// 16 r log d + log(phi|S|/8) <= 0. Throws kDomain unless 0 < r <= diam,
// phi in (0,1], |S| >= 1, n >= 2 and d >= 2.
double evaluate_expander_bound(double phi, std::size_t n, std::size_t d,
                               double diam, std::size_t s_size, double r);

struct ExpanderReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double phi = 0.0;  // exact expansion or spectral lower bound
  std::string phi_method;
  double phi_used = 0.0;  // min(1, phi)
  double diam = 0.0;      // diam(G, d_G)
  double diam_s = 0.0;    // diam(S, d_G)
  std::size_t s_size = 0;
  std::size_t s_formula = 0;
  bool clamped = false;
  double r = 0.0;
  double isometry_error = 0.0;
  double min_l = 0.0;
  std::string arithmetic;
  double lp_gap = 0.0;
  bool min_l_certified = false;
  double bound_value = 0.0;
  bool bound_vacuous = false;
  double ratio = 0.0;                 // min_l / bound_value (inf if vacuous)
  double epsilon_discreteness = 0.0;  // (2r+1)/(2r+diam_s)
  double epsilon_measured = 0.0;      // min_{x!=y in S} d_r / diam(S, d_r)
  double poincare_lhs = 0.0;
  double poincare_rhs = 0.0;
  bool poincare_ok = false;

  [[nodiscard]] Record record() const;
};

ExpanderReport evaluate_expander_instance(const ExpanderInstance& inst,
                                          opt::Backend backend);

// One row per n; rows run concurrently when `parallel`. Failures become rows
// with status "error:<kind>: message" and the run continues.
std::vector<ExpanderReport> run_expander_experiment(
    const std::vector<std::size_t>& n_list, std::size_t d, std::uint64_t seed,
    opt::Backend backend = opt::Backend::kAuto, bool parallel = true);

}  // namespace lipext::experiments
