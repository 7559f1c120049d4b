#include "lipext/opt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipext/core/error.hpp"

namespace lipext::opt {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

template <class T>
std::size_t LinearProgram<T>::add_variable(T cost, std::optional<T> lo,
                                           std::optional<T> hi) {
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  return objective.size() - 1;
}

template <class T>
std::size_t LinearProgram<T>::add_row(
    const std::vector<std::pair<std::size_t, T>>& coeffs, RowSense sense,
    T rhs_value) {
  const std::size_t row = rhs.size();
  for (const auto& [col, v] : coeffs) {
    if (v != T(0)) entries.push_back({row, col, v});
  }
  senses.push_back(sense);
  rhs.push_back(std::move(rhs_value));
  return row;
}

template <class T>
void LinearProgram<T>::check() const {
  const std::size_t n = objective.size();
  require(lower.size() == n && upper.size() == n, ErrorKind::kShape,
          "bound vectors must match the variable count");
  require(senses.size() == rhs.size(), ErrorKind::kShape,
          "row sense count must match rhs");
  auto finite = [](const T& v) {
    if constexpr (is_exact_v<T>) {
      (void)v;
      return true;
    } else {
      return std::isfinite(v);
    }
  };
  for (const auto& e : entries) {
    require(e.row < rhs.size() && e.col < n, ErrorKind::kShape,
            "constraint entry out of range");
    require(finite(e.value), ErrorKind::kDomain, "non-finite coefficient");
  }
  for (std::size_t j = 0; j < n; ++j) {
    require(finite(objective[j]), ErrorKind::kDomain, "non-finite objective");
    if (lower[j] && upper[j]) {
      require(!(*upper[j] < *lower[j]), ErrorKind::kDomain,
              "variable " + std::to_string(j) + " has crossed bounds");
    }
  }
  for (const auto& b : rhs) {
    require(finite(b), ErrorKind::kDomain, "non-finite rhs");
  }
}

namespace {

template <class T>
bool is_zero(const T& v) {
  return v == T(0);
}

// Equality-form problem  min c x  s.t.  A x = b, x >= 0, b >= 0.
template <class T>
struct StandardForm {
  enum class MapKind { kShift, kFlip, kSplit };
  struct VarMap {
    MapKind kind;
    std::size_t col;
    std::size_t col2;  // kSplit negative part
    T offset{0};
  };

  std::size_t m = 0;
  std::vector<std::vector<std::pair<std::size_t, T>>> cols;
  std::vector<T> b;
  std::vector<T> cost;
  std::vector<char> artificial;
  std::vector<long> initial_basic;  // per row; -1 when none
  std::vector<int> row_sign;        // -1 if the row was negated
  std::vector<VarMap> vars;
  T constant{0};
  int sense_sign = 1;
  std::size_t orig_rows = 0;
};

template <class T>
StandardForm<T> standardize(const LinearProgram<T>& lp) {
  using SF = StandardForm<T>;
  SF sf;
  sf.sense_sign = lp.sense == Objective::kMinimize ? 1 : -1;
  sf.orig_rows = lp.num_rows();

  std::vector<std::vector<std::pair<std::size_t, T>>> row_entries(
      lp.num_rows());
  for (const auto& e : lp.entries) row_entries[e.row].emplace_back(e.col, e.value);

  std::vector<T> b(lp.rhs);
  std::vector<RowSense> senses(lp.senses);
  std::vector<std::vector<std::pair<std::size_t, T>>> rows(lp.num_rows());
  std::vector<T> cost;
  std::size_t ncols = 0;

  sf.vars.resize(lp.num_vars());
  std::vector<std::vector<std::pair<std::size_t, T>>> bound_rows;
  std::vector<T> bound_rhs;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    auto& vm = sf.vars[j];
    const T c = T(sf.sense_sign) * lp.objective[j];
    if (lp.lower[j]) {
      vm.kind = SF::MapKind::kShift;
      vm.offset = *lp.lower[j];
      vm.col = ncols++;
      cost.push_back(c);
      if (lp.upper[j]) {
        bound_rows.push_back({{vm.col, T(1)}});
        bound_rhs.push_back(*lp.upper[j] - *lp.lower[j]);
      }
    } else if (lp.upper[j]) {
      vm.kind = SF::MapKind::kFlip;
      vm.offset = *lp.upper[j];
      vm.col = ncols++;
      cost.push_back(-c);
    } else {
      vm.kind = SF::MapKind::kSplit;
      vm.col = ncols++;
      vm.col2 = ncols++;
      cost.push_back(c);
      cost.push_back(-c);
    }
    sf.constant += c * vm.offset;
  }

  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    for (const auto& [j, a] : row_entries[i]) {
      const auto& vm = sf.vars[j];
      b[i] -= a * vm.offset;
      switch (vm.kind) {
        case SF::MapKind::kShift:
          rows[i].emplace_back(vm.col, a);
          break;
        case SF::MapKind::kFlip:
          rows[i].emplace_back(vm.col, -a);
          break;
        case SF::MapKind::kSplit:
          rows[i].emplace_back(vm.col, a);
          rows[i].emplace_back(vm.col2, -a);
          break;
      }
    }
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    rows.push_back(bound_rows[k]);
    b.push_back(bound_rhs[k]);
    senses.push_back(RowSense::kLe);
  }

  const std::size_t m = rows.size();
  sf.m = m;
  sf.row_sign.assign(m, 1);
  sf.initial_basic.assign(m, -1);
  std::vector<T> slack_coef(m, T(0));
  std::vector<long> slack_col(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (senses[i] == RowSense::kLe) slack_coef[i] = T(1);
    if (senses[i] == RowSense::kGe) slack_coef[i] = T(-1);
    if (senses[i] != RowSense::kEq) {
      slack_col[i] = static_cast<long>(ncols++);
      cost.push_back(T(0));
    }
    if (b[i] < T(0)) sf.row_sign[i] = -1;
  }

  sf.cols.assign(ncols, {});
  for (std::size_t i = 0; i < m; ++i) {
    const T sign(sf.row_sign[i]);
    for (const auto& [col, a] : rows[i]) sf.cols[col].emplace_back(i, sign * a);
    if (slack_col[i] >= 0) {
      const T coef = sign * slack_coef[i];
      sf.cols[static_cast<std::size_t>(slack_col[i])].emplace_back(i, coef);
      if (coef == T(1)) sf.initial_basic[i] = slack_col[i];
    }
    b[i] *= sign;
  }
  // Merge duplicate (row, col) entries produced by split variables.
  for (auto& col : sf.cols) {
    std::sort(col.begin(), col.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<std::size_t, T>> merged;
    for (auto& e : col) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const auto& e) { return is_zero(e.second); });
    col = std::move(merged);
  }
  sf.artificial.assign(ncols, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (sf.initial_basic[i] < 0) {
      sf.cols.push_back({{i, T(1)}});
      cost.push_back(T(0));
      sf.artificial.push_back(1);
      sf.initial_basic[i] = static_cast<long>(sf.cols.size() - 1);
    }
  }
  sf.b = std::move(b);
  sf.cost = std::move(cost);
  return sf;
}

template <class T>
class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm<T>& sf, const SimplexOptions& opts,
                 bool bland_only)
      : sf_(sf), opts_(opts), m_(sf.m), n_(sf.cols.size()),
        force_bland_(bland_only) {
    basis_.resize(m_);
    pos_.assign(n_, -1);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = static_cast<std::size_t>(sf.initial_basic[i]);
      pos_[basis_[i]] = static_cast<long>(i);
    }
    binv_.assign(m_ * m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = T(1);
    xb_ = sf.b;
  }

  LpStatus solve() {
    std::vector<T> phase1(n_, T(0));
    bool any_art = false;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sf_.artificial[j]) {
        phase1[j] = T(1);
        any_art = true;
      }
    }
    if (any_art) {
      const LpStatus s1 = iterate(phase1, true);
      if (s1 != LpStatus::kOptimal) fail_numeric("phase 1 did not terminate");
      T infeas(0);
      T bnorm(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (sf_.artificial[basis_[i]]) infeas += xb_[i];
        if (bnorm < abs_value(sf_.b[i])) bnorm = abs_value(sf_.b[i]);
      }
      if constexpr (is_exact_v<T>) {
        if (infeas > T(0)) return LpStatus::kInfeasible;
      } else {
        if (infeas > 1e-9 * (1.0 + bnorm)) return LpStatus::kInfeasible;
      }
      drive_out_artificials();
    }
    return iterate(sf_.cost, false);
  }

  void refine() {
    if constexpr (!is_exact_v<T>) {
      reinvert();
      // One step of iterative refinement on B x_B = b.
      std::vector<double> resid(sf_.b);
      for (std::size_t k = 0; k < m_; ++k) {
        for (const auto& [i, a] : sf_.cols[basis_[k]]) resid[i] -= a * xb_[k];
      }
      for (std::size_t k = 0; k < m_; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m_; ++i) acc += binv_[k * m_ + i] * resid[i];
        xb_[k] += acc;
      }
    }
  }

  // Dual vector y = c_B B^{-1}, with one refinement step for doubles.
  std::vector<T> duals(const std::vector<T>& cost) const {
    std::vector<T> y = duals_raw(cost);
    if constexpr (!is_exact_v<T>) {
      std::vector<double> resid(m_);
      for (std::size_t k = 0; k < m_; ++k) {
        double acc = cost[basis_[k]];
        for (const auto& [i, a] : sf_.cols[basis_[k]]) acc -= a * y[i];
        resid[k] = acc;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m_; ++k) acc += resid[k] * binv_[k * m_ + i];
        y[i] += acc;
      }
    }
    return y;
  }

  std::vector<T> primal_std() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t k = 0; k < m_; ++k) x[basis_[k]] = xb_[k];
    return x;
  }

  T reduced_cost(std::size_t j, const std::vector<T>& cost,
                 const std::vector<T>& y) const {
    T d = cost[j];
    for (const auto& [i, a] : sf_.cols[j]) d -= y[i] * a;
    return d;
  }

  std::size_t iterations() const { return iterations_; }
  bool used_bland() const { return used_bland_; }
  std::size_t num_cols() const { return n_; }

 private:
  [[noreturn]] void fail_numeric(const std::string& what) const {
    fail(ErrorKind::kNumerical,
         "simplex: " + what + " (rows=" + std::to_string(m_) +
             ", cols=" + std::to_string(n_) +
             ", iterations=" + std::to_string(iterations_) + ")");
  }

  bool negative(const T& d) const {
    if constexpr (is_exact_v<T>) {
      return d < T(0);
    } else {
      return d < -opts_.optimality_tol;
    }
  }

  bool positive_pivot(const T& a) const {
    if constexpr (is_exact_v<T>) {
      return a > T(0);
    } else {
      return a > opts_.pivot_tol;
    }
  }

  bool nonzero_pivot(const T& a) const {
    if constexpr (is_exact_v<T>) {
      return a != T(0);
    } else {
      return std::fabs(a) > opts_.pivot_tol;
    }
  }

  std::vector<T> column(std::size_t q) const {
    std::vector<T> alpha(m_, T(0));
    for (const auto& [i, a] : sf_.cols[q]) {
      for (std::size_t k = 0; k < m_; ++k) {
        const T& v = binv_[k * m_ + i];
        if (!is_zero(v)) alpha[k] += v * a;
      }
    }
    return alpha;
  }

  LpStatus iterate(const std::vector<T>& cost, bool phase1) {
    std::size_t degenerate_run = 0;
    for (;;) {
      if (iterations_ >= opts_.max_iterations) {
        fail_numeric("iteration limit reached");
      }
      const bool bland = force_bland_ || degenerate_run >= opts_.bland_after;
      used_bland_ = used_bland_ || bland;

      const std::vector<T> y = duals_raw(cost);
      long enter = -1;
      T best(0);
      for (std::size_t j = 0; j < n_; ++j) {
        if (pos_[j] >= 0) continue;
        if (sf_.artificial[j] && (!phase1 || left_[j])) continue;
        const T d = reduced_cost(j, cost, y);
        if (!negative(d)) continue;
        if (bland) {
          enter = static_cast<long>(j);
          break;
        }
        if (enter < 0 || d < best) {
          enter = static_cast<long>(j);
          best = d;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      const std::size_t q = static_cast<std::size_t>(enter);
      const std::vector<T> alpha = column(q);
      long leave = -1;
      T best_ratio(0);
      for (std::size_t k = 0; k < m_; ++k) {
        const bool stuck_art = !phase1 && sf_.artificial[basis_[k]];
        T ratio;
        if (stuck_art && nonzero_pivot(alpha[k])) {
          ratio = T(0);
        } else if (positive_pivot(alpha[k])) {
          ratio = xb_[k] / alpha[k];
          if constexpr (!is_exact_v<T>) ratio = std::max(ratio, 0.0);
        } else {
          continue;
        }
        bool take = leave < 0 || ratio < best_ratio;
        if (!take && ratio == best_ratio) {
          const std::size_t cur = static_cast<std::size_t>(leave);
          if (bland) {
            take = basis_[k] < basis_[cur];
          } else if constexpr (!is_exact_v<T>) {
            take = std::fabs(alpha[k]) > std::fabs(alpha[cur]);
          }
        }
        if (take) {
          leave = static_cast<long>(k);
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        if (phase1) fail_numeric("phase 1 reported unbounded");
        return LpStatus::kUnbounded;
      }
      degenerate_run = is_zero(best_ratio) ? degenerate_run + 1 : 0;
      pivot(static_cast<std::size_t>(leave), q, alpha);
    }
  }

  std::vector<T> duals_raw(const std::vector<T>& cost) const {
    std::vector<T> y(m_, T(0));
    for (std::size_t k = 0; k < m_; ++k) {
      const T& ck = cost[basis_[k]];
      if (is_zero(ck)) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        const T& v = binv_[k * m_ + i];
        if (!is_zero(v)) y[i] += ck * v;
      }
    }
    return y;
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<T>& alpha) {
    ++iterations_;
    const T piv = alpha[r];
    const T theta = xb_[r] / piv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k != r && !is_zero(alpha[k])) xb_[k] -= theta * alpha[k];
    }
    xb_[r] = theta;
    if constexpr (!is_exact_v<T>) {
      for (auto& v : xb_) {
        if (v < 0.0 && v > -1e-13) v = 0.0;
      }
    }

    T* row_r = binv_.data() + r * m_;
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_zero(row_r[i])) {
        row_r[i] /= piv;
        nz.push_back(i);
      }
    }
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == r || is_zero(alpha[k])) continue;
      T* row_k = binv_.data() + k * m_;
      for (std::size_t i : nz) row_k[i] -= alpha[k] * row_r[i];
    }

    const std::size_t out = basis_[r];
    pos_[out] = -1;
    if (sf_.artificial[out]) left_[out] = 1;
    basis_[r] = q;
    pos_[q] = static_cast<long>(r);

    if constexpr (!is_exact_v<T>) {
      if (opts_.refactor_every > 0 && iterations_ % opts_.refactor_every == 0) {
        reinvert();
      }
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!sf_.artificial[basis_[r]]) continue;
      long best = -1;
      T best_val(0);
      for (std::size_t j = 0; j < n_; ++j) {
        if (pos_[j] >= 0 || sf_.artificial[j]) continue;
        T v(0);
        for (const auto& [i, a] : sf_.cols[j]) {
          const T& bi = binv_[r * m_ + i];
          if (!is_zero(bi)) v += bi * a;
        }
        if (!nonzero_pivot(v)) continue;
        if constexpr (is_exact_v<T>) {
          best = static_cast<long>(j);
          break;
        } else {
          if (best < 0 || std::fabs(v) > std::fabs(best_val)) {
            best = static_cast<long>(j);
            best_val = v;
          }
        }
      }
      // No candidate: the row is redundant; the artificial stays basic at 0
      // and the phase-2 ratio test keeps it there.
      if (best < 0) continue;
      const std::size_t q = static_cast<std::size_t>(best);
      pivot(r, q, column(q));
    }
  }

  // Gauss-Jordan with partial pivoting on the current basis (double only).
  void reinvert() {
    if constexpr (!is_exact_v<T>) {
      std::vector<double> a(m_ * m_, 0.0);
      for (std::size_t k = 0; k < m_; ++k) {
        for (const auto& [i, v] : sf_.cols[basis_[k]]) a[i * m_ + k] = v;
      }
      std::vector<double> inv(m_ * m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
      for (std::size_t c = 0; c < m_; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < m_; ++i) {
          if (std::fabs(a[i * m_ + c]) > std::fabs(a[p * m_ + c])) p = i;
        }
        if (std::fabs(a[p * m_ + c]) < 1e-14) fail_numeric("singular basis");
        if (p != c) {
          for (std::size_t j = 0; j < m_; ++j) {
            std::swap(a[p * m_ + j], a[c * m_ + j]);
            std::swap(inv[p * m_ + j], inv[c * m_ + j]);
          }
        }
        const double d = a[c * m_ + c];
        for (std::size_t j = 0; j < m_; ++j) {
          a[c * m_ + j] /= d;
          inv[c * m_ + j] /= d;
        }
        for (std::size_t i = 0; i < m_; ++i) {
          if (i == c) continue;
          const double f = a[i * m_ + c];
          if (f == 0.0) continue;
          for (std::size_t j = 0; j < m_; ++j) {
            a[i * m_ + j] -= f * a[c * m_ + j];
            inv[i * m_ + j] -= f * inv[c * m_ + j];
          }
        }
      }
      // inv = B^{-1} with rows indexed by basis position.
      binv_ = std::move(inv);
      for (std::size_t k = 0; k < m_; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m_; ++i) acc += binv_[k * m_ + i] * sf_.b[i];
        xb_[k] = acc;
      }
    }
  }

  const StandardForm<T>& sf_;
  const SimplexOptions& opts_;
  std::size_t m_;
  std::size_t n_;
  bool force_bland_;
  bool used_bland_ = false;
  std::size_t iterations_ = 0;
  std::vector<std::size_t> basis_;
  std::vector<long> pos_;
  std::vector<T> binv_;
  std::vector<T> xb_;
  std::vector<char> left_ = std::vector<char>(n_, 0);
};

template <class T>
double max_abs(const T& v) {
  return std::fabs(lipext::to_double(v));
}

template <class T>
LPSolution<T> extract(const LinearProgram<T>& lp, const StandardForm<T>& sf,
                      RevisedSimplex<T>& rs, LpStatus status) {
  using SF = StandardForm<T>;
  LPSolution<T> sol;
  sol.status = status;
  sol.iterations = rs.iterations();
  sol.used_bland = rs.used_bland();
  if (status != LpStatus::kOptimal) return sol;

  rs.refine();
  const std::vector<T> xs = rs.primal_std();
  const std::vector<T> y = rs.duals(sf.cost);

  sol.primal.resize(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const auto& vm = sf.vars[j];
    switch (vm.kind) {
      case SF::MapKind::kShift:
        sol.primal[j] = vm.offset + xs[vm.col];
        break;
      case SF::MapKind::kFlip:
        sol.primal[j] = vm.offset - xs[vm.col];
        break;
      case SF::MapKind::kSplit:
        sol.primal[j] = xs[vm.col] - xs[vm.col2];
        break;
    }
  }
  sol.dual.resize(lp.num_rows());
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    sol.dual[i] = T(sf.sense_sign * sf.row_sign[i]) * y[i];
  }

  T obj(0);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    obj += lp.objective[j] * sol.primal[j];
  }
  T dual_obj = sf.constant;
  for (std::size_t i = 0; i < sf.m; ++i) dual_obj += sf.b[i] * y[i];
  dual_obj *= T(sf.sense_sign);
  sol.objective = obj;
  sol.dual_objective = dual_obj;
  sol.gap = max_abs(T(obj - dual_obj));

  // Primal residuals on the original rows and bounds.
  std::vector<T> act(lp.num_rows(), T(0));
  for (const auto& e : lp.entries) act[e.row] += e.value * sol.primal[e.col];
  double pinf = 0.0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const T diff = act[i] - lp.rhs[i];
    double v = 0.0;
    switch (lp.senses[i]) {
      case RowSense::kLe:
        v = diff > T(0) ? max_abs(diff) : 0.0;
        break;
      case RowSense::kGe:
        v = diff < T(0) ? max_abs(diff) : 0.0;
        break;
      case RowSense::kEq:
        v = max_abs(diff);
        break;
    }
    pinf = std::max(pinf, v);
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.lower[j] && sol.primal[j] < *lp.lower[j]) {
      pinf = std::max(pinf, max_abs(T(*lp.lower[j] - sol.primal[j])));
    }
    if (lp.upper[j] && sol.primal[j] > *lp.upper[j]) {
      pinf = std::max(pinf, max_abs(T(sol.primal[j] - *lp.upper[j])));
    }
  }
  sol.primal_infeasibility = pinf;

  double dinf = 0.0;
  for (std::size_t j = 0; j < rs.num_cols(); ++j) {
    if (sf.artificial[j]) continue;
    const T d = rs.reduced_cost(j, sf.cost, y);
    if (d < T(0)) dinf = std::max(dinf, max_abs(d));
  }
  sol.dual_infeasibility = dinf;
  return sol;
}

template <class T>
bool certified(const LPSolution<T>& s) {
  if (s.status != LpStatus::kOptimal) return true;
  if constexpr (is_exact_v<T>) {
    return s.primal_infeasibility == 0.0 && s.dual_infeasibility == 0.0 &&
           s.objective == s.dual_objective;
  } else {
    return s.primal_infeasibility <= 1e-9 && s.dual_infeasibility <= 1e-9 &&
           s.gap <= 1e-8 * (1.0 + std::fabs(s.objective));
  }
}

}  // namespace

template <class T>
LPSolution<T> solve_lp(const LinearProgram<T>& lp, const SimplexOptions& opts) {
  lp.check();
  const StandardForm<T> sf = standardize(lp);
  {
    RevisedSimplex<T> rs(sf, opts, false);
    const LpStatus status = rs.solve();
    LPSolution<T> sol = extract(lp, sf, rs, status);
    if (certified(sol)) return sol;
  }
  // Retry with Bland's rule from the start and frequent reinversion.
  SimplexOptions retry = opts;
  retry.refactor_every = 20;
  RevisedSimplex<T> rs(sf, retry, true);
  const LpStatus status = rs.solve();
  LPSolution<T> sol = extract(lp, sf, rs, status);
  if (!certified(sol)) {
    std::ostringstream msg;
    msg << "LP certificate failed: primal_inf=" << sol.primal_infeasibility
        << " dual_inf=" << sol.dual_infeasibility << " gap=" << sol.gap
        << " rows=" << lp.num_rows() << " vars=" << lp.num_vars();
    fail(ErrorKind::kNumerical, msg.str());
  }
  return sol;
}

LinearProgram<Rational> to_rational(const LinearProgram<double>& lp) {
  LinearProgram<Rational> out;
  out.sense = lp.sense;
  auto conv = [](const std::optional<double>& v) -> std::optional<Rational> {
    if (!v) return std::nullopt;
    return Rational(*v);
  };
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    out.objective.emplace_back(lp.objective[j]);
    out.lower.push_back(conv(lp.lower[j]));
    out.upper.push_back(conv(lp.upper[j]));
  }
  for (const auto& e : lp.entries) out.entries.push_back({e.row, e.col, Rational(e.value)});
  out.senses = lp.senses;
  for (double b : lp.rhs) out.rhs.emplace_back(b);
  return out;
}

LPSolution<double> to_double(const LPSolution<Rational>& s) {
  LPSolution<double> out;
  out.status = s.status;
  for (const auto& v : s.primal) out.primal.push_back(lipext::to_double(v));
  for (const auto& v : s.dual) out.dual.push_back(lipext::to_double(v));
  out.objective = lipext::to_double(s.objective);
  out.dual_objective = lipext::to_double(s.dual_objective);
  out.primal_infeasibility = s.primal_infeasibility;
  out.dual_infeasibility = s.dual_infeasibility;
  out.gap = s.gap;
  out.iterations = s.iterations;
  out.used_bland = s.used_bland;
  return out;
}

DoubleSolution solve_lp_backend(const LinearProgram<double>& lp,
                                Backend backend, const SimplexOptions& opts) {
  const bool exact =
      backend == Backend::kExact ||
      (backend == Backend::kAuto && lp.num_nonzeros() <= kExactNonzeroLimit);
  if (exact) {
    return {to_double(solve_lp(to_rational(lp), opts)), Arithmetic::kExact};
  }
  return {solve_lp(lp, opts), Arithmetic::kFloat};
}

template struct LinearProgram<double>;
template struct LinearProgram<Rational>;
template LPSolution<double> solve_lp(const LinearProgram<double>&,
                                     const SimplexOptions&);
template LPSolution<Rational> solve_lp(const LinearProgram<Rational>&,
                                       const SimplexOptions&);

}  // namespace lipext::opt
