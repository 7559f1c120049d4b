#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipext/core/scalar.hpp"
#include "lipext/metric/finite_metric.hpp"
#include "lipext/opt/lp.hpp"
#include "lipext/opt/minimax.hpp"

namespace lipext::ext {

enum class TargetKind { kReal, kL1, kLinf, kL2, kW1 };

const char* to_string(TargetKind k);
// "real", "l1", "linf", "l2", "w1"; kDomain otherwise.
TargetKind parse_target_kind(const std::string& s);

struct TargetSpace {
  TargetKind kind = TargetKind::kReal;
  std::size_t dim = 1;
  metric::FiniteMetric<double> base;  // kW1 only: (S', d')

  static TargetSpace real();
  static TargetSpace l1(std::size_t k);
  static TargetSpace linf(std::size_t k);
  static TargetSpace euclidean(std::size_t k);
  static TargetSpace wasserstein(metric::FiniteMetric<double> base);
};

// Norm of a target-space vector (for kW1, of an element of R_0^{S'}).
double target_norm(const TargetSpace& t, const std::vector<double>& v);
Rational target_norm_exact(const TargetSpace& t, const std::vector<Rational>& v);

struct ExtensionProblem {
  metric::FiniteMetric<double> ambient;
  metric::Subset subset;
  double alpha = 1.0;
  TargetSpace target;
  // One target vector per element of `subset`, in subset order.
  std::vector<std::vector<double>> boundary;

  // kDomain on alpha outside (0,1], an invalid ambient metric, boundary
  // vectors off R_0^{S'} (kW1); kShape on size mismatches.
  void check() const;
};

struct ExtensionSolution {
  std::vector<std::vector<double>> values;  // one target vector per point
  double constant = 0.0;                    // recomputed Holder constant
  bool optimal = false;                     // LP-certified (or McShane)
  Arithmetic arithmetic = Arithmetic::kFloat;
  std::optional<Rational> constant_exact;   // exact LP runs
  std::vector<std::vector<Rational>> values_exact;
  // LP runs: certified optimum and its certificate.
  double lp_objective = 0.0;
  double lp_dual_objective = 0.0;
  double lp_gap = 0.0;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;
  std::size_t lp_nonzeros = 0;
  // Euclidean runs: descent diagnostics.
  std::vector<opt::RestartTrace> trace;
  bool converged = true;
};

inline constexpr std::size_t kMaxExtensionNonzeros = 1'000'000;

// max over unordered pairs of ||F(x)-F(y)|| / d(x,y)^alpha; +infinity for a
// zero-distance pair with differing values.
double holder_constant(const std::vector<std::vector<double>>& values,
                       const ExtensionProblem& problem);
// alpha = 1 only. W1 norms are taken over the shortest-path closure of the
// converted base (identical to the base when it is a metric in exact
// arithmetic).
Rational holder_constant_exact(const std::vector<std::vector<Rational>>& values,
                               const ExtensionProblem& problem);

// ||f||_{Lip(alpha)} of the boundary data alone.
double boundary_constant(const ExtensionProblem& problem);

// One LP: minimize L subject to ||F(x)-F(y)|| <= L d(x,y)^alpha on all pairs
// with a free endpoint, L >= the boundary constant, F|_S = f. W1 norms use
// one transshipment block per pair. kAuto solves exactly when alpha = 1 and
// the LP is small; kExact with alpha != 1 throws kDomain. Throws kCapacity
// above kMaxExtensionNonzeros and kDomain for the Euclidean target.
ExtensionSolution min_extension_polyhedral(
    const ExtensionProblem& problem, opt::Backend backend = opt::Backend::kAuto);

// Minimax descent for kL2 targets; never certified.
ExtensionSolution min_extension_euclidean(const ExtensionProblem& problem,
                                          const opt::MinimaxOptions& opts = {});

// F(x) = min_s (f(s) + L d(x,s)^alpha) with L = ||f||_{Lip(alpha)}; kReal only.
ExtensionSolution mcshane_extension(const ExtensionProblem& problem);

}  // namespace lipext::ext
