#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lipext/experiments/record.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/opt/minimax.hpp"

namespace lipext::experiments {

inline constexpr int kMaxHolderBuildDim = 8;
inline constexpr int kMaxHolderSolveDim = 4;
inline constexpr int kMaxEnfloDim = 10;

struct HolderInstance {
  int n = 0;
  double alpha = 1.0;
  double r = 0.0;  // n^{1/(4 alpha^2)}
  double s = 0.0;  // n^{-(2 alpha - 1)/(4 alpha^2)}
  metric::TwistedCube cube;
  metric::Subset layer0;  // indices of (x, 0), x in word order
  // f(x,0) = x as a 0/1 vector in R^n.
  std::vector<std::vector<double>> boundary;
  // max | ||f(x,0)-f(y,0)||_2 - d((x,0),(y,0))^alpha | over pairs.
  double boundary_error = 0.0;
};

// Throws kDomain unless 1/2 < alpha <= 1 and n >= 1, kCapacity above
// kMaxHolderBuildDim.
HolderInstance build_holder_instance(int n, double alpha);

// sqrt(n) / (s^alpha sqrt(n) + 2 r^alpha); kDomain on non-positive input.
double evaluate_holder_bound(double n, double alpha, double r, double s);

struct EnfloReport {
  double lhs = 0.0;  // sum_x ||F(x + 1...1) - F(x)||^2
  double rhs = 0.0;  // sum_j sum_x ||F(x + e_j) - F(x)||^2
  bool holds = false;
};

// F indexed by the word x in [0, 2^n). kCapacity above kMaxEnfloDim,
// kShape when |F| != 2^n or rows differ in length.
EnfloReport enflo_check(const std::vector<std::vector<double>>& f, int n,
                        double tol = 1e-9);

struct HolderReport {
  int n = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double r = 0.0;
  double s = 0.0;
  bool rs_condition_ok = false;
  bool metric_valid = false;
  double boundary_error = 0.0;
  double min_l_upper = 0.0;
  bool descent_converged = false;
  double exact_bound = 0.0;
  bool bound_ok = false;  // min_l_upper >= exact_bound - 1e-3
  double enflo_lhs = 0.0;
  double enflo_rhs = 0.0;
  bool enflo_ok = false;

  [[nodiscard]] Record record() const;
};

HolderReport evaluate_holder_instance(const HolderInstance& inst,
                                      const opt::MinimaxOptions& opts);

// One row per (n, alpha), n-major; rows run concurrently when `parallel`.
std::vector<HolderReport> run_holder_experiment(const std::vector<int>& n_list,
                                                const std::vector<double>& alpha_list,
                                                std::uint64_t seed, bool parallel = true);

}  // namespace lipext::experiments
