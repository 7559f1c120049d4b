#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipext/core/scalar.hpp"

namespace lipext::opt {

enum class RowSense { kLe, kEq, kGe };
enum class Objective { kMinimize, kMaximize };

template <class T>
struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  T value{0};
};

// Linear program in row form with per-variable bounds (lower defaults to 0,
// upper to +infinity; std::nullopt means unbounded on that side).
template <class T>
struct LinearProgram {
  Objective sense = Objective::kMinimize;
  std::vector<T> objective;
  std::vector<std::optional<T>> lower;
  std::vector<std::optional<T>> upper;
  std::vector<Triplet<T>> entries;
  std::vector<RowSense> senses;
  std::vector<T> rhs;

  std::size_t add_variable(T cost, std::optional<T> lo = T(0),
                           std::optional<T> hi = std::nullopt);
  std::size_t add_row(const std::vector<std::pair<std::size_t, T>>& coeffs,
                      RowSense sense, T rhs_value);

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }
  [[nodiscard]] std::size_t num_rows() const { return rhs.size(); }
  [[nodiscard]] std::size_t num_nonzeros() const { return entries.size(); }

  // Throws kShape on inconsistent dimensions, kDomain on non-finite data or
  // crossed bounds.
  void check() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

template <class T>
struct LPSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<T> primal;  // one per variable
  // Shadow prices d(objective)/d(rhs_i) of the original rows.
  std::vector<T> dual;
  T objective{0};
  T dual_objective{0};
  // Certificate residuals (max-norm, as double; all zero in exact mode).
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double gap = 0.0;  // |objective - dual_objective|
  std::size_t iterations = 0;
  bool used_bland = false;
};

struct SimplexOptions {
  std::size_t max_iterations = 200000;
  // Degenerate pivots in a row before switching from Dantzig to Bland.
  std::size_t bland_after = 50;
  // Double backend: basis reinversion period.
  std::size_t refactor_every = 100;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-10;
};

// Two-phase revised simplex with an explicit basis inverse. Optimal results
// satisfy primal and dual feasibility to 1e-9 and |gap| <= 1e-8 (1+|obj|) in
// the double backend, and exactly in the rational backend; a double solve
// that misses those after one Bland re-solve throws kNumerical.
template <class T>
LPSolution<T> solve_lp(const LinearProgram<T>& lp,
                       const SimplexOptions& opts = {});

inline constexpr std::size_t kExactNonzeroLimit = 2000;

// Backend per call: exact rationals when requested or (kAuto) when the LP
// has at most kExactNonzeroLimit nonzeros, double otherwise. Inputs are
// converted exactly (binary fractions are rationals).
enum class Backend { kAuto, kExact, kFloat };

struct DoubleSolution {
  LPSolution<double> solution;
  Arithmetic arithmetic = Arithmetic::kFloat;
};

DoubleSolution solve_lp_backend(const LinearProgram<double>& lp,
                                Backend backend = Backend::kAuto,
                                const SimplexOptions& opts = {});

LinearProgram<Rational> to_rational(const LinearProgram<double>& lp);
LPSolution<double> to_double(const LPSolution<Rational>& s);

// Generic entry point for code templated on the scalar: rational programs
// always solve exactly; double programs go through solve_lp_backend.
template <class T>
struct TypedSolution {
  LPSolution<T> solution;
  Arithmetic arithmetic = Arithmetic::kFloat;
};

template <class T>
TypedSolution<T> solve_lp_as(const LinearProgram<T>& lp,
                             Backend backend = Backend::kAuto,
                             const SimplexOptions& opts = {}) {
  if constexpr (is_exact_v<T>) {
    return {solve_lp(lp, opts), Arithmetic::kExact};
  } else {
    auto r = solve_lp_backend(lp, backend, opts);
    return {std::move(r.solution), r.arithmetic};
  }
}

}  // namespace lipext::opt
