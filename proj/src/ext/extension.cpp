#include "lipext/ext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipext/core/error.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/metric/validate.hpp"
#include "lipext/wasserstein/w1.hpp"

namespace lipext::ext {

const char* to_string(TargetKind k) {
  switch (k) {
    case TargetKind::kReal: return "real";
    case TargetKind::kL1: return "l1";
    case TargetKind::kLinf: return "linf";
    case TargetKind::kL2: return "l2";
    case TargetKind::kW1: return "w1";
  }
  return "?";
}

TargetKind parse_target_kind(const std::string& s) {
  for (TargetKind k : {TargetKind::kReal, TargetKind::kL1, TargetKind::kLinf,
                       TargetKind::kL2, TargetKind::kW1}) {
    if (s == to_string(k)) return k;
  }
  fail(ErrorKind::kDomain, "unknown target '" + s + "'");
}

TargetSpace TargetSpace::real() { return {TargetKind::kReal, 1, {}}; }
TargetSpace TargetSpace::l1(std::size_t k) { return {TargetKind::kL1, k, {}}; }
TargetSpace TargetSpace::linf(std::size_t k) { return {TargetKind::kLinf, k, {}}; }
TargetSpace TargetSpace::euclidean(std::size_t k) { return {TargetKind::kL2, k, {}}; }
TargetSpace TargetSpace::wasserstein(metric::FiniteMetric<double> base) {
  const std::size_t m = base.size();
  return {TargetKind::kW1, m, std::move(base)};
}

namespace {

template <class T>
T norm_of(const TargetSpace& t, const std::vector<T>& v,
          const metric::FiniteMetric<T>* base) {
  T acc{0};
  switch (t.kind) {
    case TargetKind::kReal:
    case TargetKind::kL1:
      for (const auto& x : v) acc += abs_value(x);
      return acc;
    case TargetKind::kLinf:
      for (const auto& x : v) acc = std::max(acc, abs_value(x));
      return acc;
    case TargetKind::kL2:
      if constexpr (is_exact_v<T>) {
        fail(ErrorKind::kDomain, "Euclidean norms are not exact");
      } else {
        for (const auto& x : v) acc += x * x;
        return std::sqrt(acc);
      }
    case TargetKind::kW1:
      return wasserstein::w1_norm_value(v, *base);
  }
  return acc;
}

template <class T>
std::vector<T> difference(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Shortest-path closure of the converted W1 base, so that the LP's
// multi-hop transshipment and the direct transport norm agree exactly.
metric::FiniteMetric<Rational> exact_base(const TargetSpace& t) {
  const auto raw = metric::to_rational(t.base);
  const std::size_t m = raw.size();
  if (m < 2) return raw;
  graphs::WeightedGraph<Rational> g(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) g.add_edge(a, b, raw(a, b));
  }
  auto closed = metric::shortest_path_metric(g);
  return metric::FiniteMetric<Rational>(raw.labels(), closed.data());
}

}  // namespace

double target_norm(const TargetSpace& t, const std::vector<double>& v) {
  return norm_of(t, v, &t.base);
}

Rational target_norm_exact(const TargetSpace& t, const std::vector<Rational>& v) {
  if (t.kind == TargetKind::kW1) {
    const auto base = exact_base(t);
    return norm_of(t, v, &base);
  }
  return norm_of<Rational>(t, v, nullptr);
}

void ExtensionProblem::check() const {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::kDomain,
          "extension: alpha must lie in (0,1]");
  const std::size_t n = ambient.size();
  subset.check(n, true);
  require(boundary.size() == subset.indices.size(), ErrorKind::kShape,
          "extension: one boundary value per subset point required");
  require(target.dim > 0, ErrorKind::kDomain, "extension: empty target space");
  for (const auto& v : boundary) {
    require(v.size() == target.dim, ErrorKind::kShape,
            "extension: boundary value of wrong dimension");
    for (double x : v) {
      require(std::isfinite(x), ErrorKind::kDomain, "extension: non-finite boundary value");
    }
  }
  require(target.kind != TargetKind::kReal || target.dim == 1, ErrorKind::kShape,
          "extension: real-line target has dimension 1");
  if (target.kind == TargetKind::kW1) {
    require(target.base.size() == target.dim, ErrorKind::kShape,
            "extension: W1 base size mismatch");
    for (const auto& v : boundary) {
      wasserstein::SignedMeasure<double>{v}.check(target.dim);
    }
  }
  const auto rep = metric::validate_metric(ambient);
  require(rep.ok, ErrorKind::kDomain, "extension: ambient space is not a metric");
}

double holder_constant(const std::vector<std::vector<double>>& values,
                       const ExtensionProblem& problem) {
  const std::size_t n = problem.ambient.size();
  require(values.size() == n, ErrorKind::kShape, "holder_constant: one value per point");
  double best = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double num = target_norm(problem.target, difference(values[x], values[y]));
      const double d = problem.ambient(x, y);
      if (d == 0.0) {
        if (num > 0.0) return std::numeric_limits<double>::infinity();
        continue;
      }
      best = std::max(best, num / std::pow(d, problem.alpha));
    }
  }
  return best;
}

Rational holder_constant_exact(const std::vector<std::vector<Rational>>& values,
                               const ExtensionProblem& problem) {
  require(problem.alpha == 1.0, ErrorKind::kDomain,
          "holder_constant_exact: needs alpha = 1");
  const auto d = metric::to_rational(problem.ambient);
  std::optional<metric::FiniteMetric<Rational>> base;
  if (problem.target.kind == TargetKind::kW1) base = exact_base(problem.target);
  Rational best{0};
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t y = x + 1; y < d.size(); ++y) {
      const Rational num =
          norm_of(problem.target, difference(values[x], values[y]), base ? &*base : nullptr);
      require(d(x, y) > 0, ErrorKind::kDomain, "holder_constant_exact: zero distance");
      best = std::max(best, Rational(num / d(x, y)));
    }
  }
  return best;
}

double boundary_constant(const ExtensionProblem& problem) {
  const auto& s = problem.subset.indices;
  double best = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const double num =
          target_norm(problem.target, difference(problem.boundary[a], problem.boundary[b]));
      best = std::max(best, num / std::pow(problem.ambient(s[a], s[b]), problem.alpha));
    }
  }
  return best;
}

namespace {

template <class T>
struct Built {
  opt::LinearProgram<T> lp;
  std::size_t l_var = 0;
  std::vector<std::size_t> value_base;  // per point: first column, or npos
};

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

template <class T>
T convert(double v) {
  if constexpr (is_exact_v<T>) {
    return from_double<T>(v);
  } else {
    return v;
  }
}

// Counts nonzeros before building so the capacity error fires early.
std::size_t estimate_nonzeros(const ExtensionProblem& p) {
  const std::size_t n = p.ambient.size();
  const std::size_t k = p.target.dim;
  const std::size_t free = n - p.subset.indices.size();
  const std::size_t pairs = n * (n - 1) / 2 - (n - free) * (n - free - 1) / 2;
  std::size_t per_pair = 0;
  switch (p.target.kind) {
    case TargetKind::kReal:
    case TargetKind::kLinf: per_pair = 2 * k * 3; break;
    case TargetKind::kL1: per_pair = 2 * k * 3 + k + 1; break;
    case TargetKind::kW1: per_pair = 2 * k * (k - 1) + 2 * k + k * (k - 1) + 1; break;
    case TargetKind::kL2: per_pair = 0; break;
  }
  return pairs * per_pair + free * k + 1;
}

template <class T>
Built<T> build_lp(const ExtensionProblem& p, const std::vector<std::vector<T>>& bnd,
                  const metric::FiniteMetric<T>* base, const T& fixed_floor) {
  const std::size_t n = p.ambient.size();
  const std::size_t k = p.target.dim;
  std::vector<long> spos(n, -1);
  for (std::size_t i = 0; i < p.subset.indices.size(); ++i) {
    spos[p.subset.indices[i]] = static_cast<long>(i);
  }

  Built<T> b;
  auto& lp = b.lp;
  b.l_var = lp.add_variable(T(1));
  lp.add_row({{b.l_var, T(1)}}, opt::RowSense::kGe, fixed_floor);
  b.value_base.assign(n, kNpos);
  for (std::size_t x = 0; x < n; ++x) {
    if (spos[x] >= 0) continue;
    b.value_base[x] = lp.num_vars();
    std::vector<std::pair<std::size_t, T>> sum;
    for (std::size_t c = 0; c < k; ++c) {
      sum.emplace_back(lp.add_variable(T(0), std::nullopt), T(1));
    }
    if (p.target.kind == TargetKind::kW1) lp.add_row(sum, opt::RowSense::kEq, T(0));
  }

  // Coordinate c of F(x) - F(y) as (terms, constant).
  auto diff_terms = [&](std::size_t x, std::size_t y, std::size_t c,
                        std::vector<std::pair<std::size_t, T>>& terms, T& constant) {
    constant = T(0);
    if (spos[x] >= 0) {
      constant += bnd[static_cast<std::size_t>(spos[x])][c];
    } else {
      terms.emplace_back(b.value_base[x] + c, T(1));
    }
    if (spos[y] >= 0) {
      constant -= bnd[static_cast<std::size_t>(spos[y])][c];
    } else {
      terms.emplace_back(b.value_base[y] + c, T(-1));
    }
  };

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (spos[x] >= 0 && spos[y] >= 0) continue;
      T den;
      if constexpr (is_exact_v<T>) {
        den = convert<T>(p.ambient(x, y));
      } else {
        den = std::pow(p.ambient(x, y), p.alpha);
      }
      switch (p.target.kind) {
        case TargetKind::kReal:
        case TargetKind::kLinf:
          for (std::size_t c = 0; c < k; ++c) {
            for (int sign : {1, -1}) {
              std::vector<std::pair<std::size_t, T>> terms;
              T constant;
              diff_terms(x, y, c, terms, constant);
              for (auto& t : terms) t.second *= T(sign);
              terms.emplace_back(b.l_var, T(-1) * den);
              lp.add_row(terms, opt::RowSense::kLe, T(-sign) * constant);
            }
          }
          break;
        case TargetKind::kL1: {
          std::vector<std::pair<std::size_t, T>> total;
          for (std::size_t c = 0; c < k; ++c) {
            const std::size_t t_var = lp.add_variable(T(0));
            total.emplace_back(t_var, T(1));
            for (int sign : {1, -1}) {
              std::vector<std::pair<std::size_t, T>> terms;
              T constant;
              diff_terms(x, y, c, terms, constant);
              for (auto& t : terms) t.second *= T(sign);
              terms.emplace_back(t_var, T(-1));
              lp.add_row(terms, opt::RowSense::kLe, T(-sign) * constant);
            }
          }
          total.emplace_back(b.l_var, T(-1) * den);
          lp.add_row(total, opt::RowSense::kLe, T(0));
          break;
        }
        case TargetKind::kW1: {
          // Transshipment on the complete digraph over S': out - in at node
          // a equals (F(x) - F(y))_a; total cost <= L den.
          const std::size_t first = lp.num_vars();
          std::vector<std::pair<std::size_t, T>> cost_row;
          for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t c = 0; c < k; ++c) {
              if (a == c) continue;
              const std::size_t v = lp.add_variable(T(0));
              cost_row.emplace_back(v, (*base)(a, c));
            }
          }
          auto arc = [&](std::size_t a, std::size_t c) {
            return first + a * (k - 1) + (c < a ? c : c - 1);
          };
          for (std::size_t a = 0; a < k; ++a) {
            std::vector<std::pair<std::size_t, T>> terms;
            for (std::size_t c = 0; c < k; ++c) {
              if (c == a) continue;
              terms.emplace_back(arc(a, c), T(1));
              terms.emplace_back(arc(c, a), T(-1));
            }
            std::vector<std::pair<std::size_t, T>> vals;
            T constant;
            diff_terms(x, y, a, vals, constant);
            for (auto& t : vals) terms.emplace_back(t.first, T(-1) * t.second);
            lp.add_row(terms, opt::RowSense::kEq, constant);
          }
          cost_row.emplace_back(b.l_var, T(-1) * den);
          lp.add_row(cost_row, opt::RowSense::kLe, T(0));
          break;
        }
        case TargetKind::kL2:
          fail(ErrorKind::kDomain, "Euclidean targets use min_extension_euclidean");
      }
    }
  }
  return b;
}

template <class T>
std::vector<std::vector<T>> read_values(const ExtensionProblem& p, const Built<T>& b,
                                        const std::vector<std::vector<T>>& bnd,
                                        const std::vector<T>& primal) {
  const std::size_t n = p.ambient.size();
  const std::size_t k = p.target.dim;
  std::vector<std::vector<T>> values(n, std::vector<T>(k));
  for (std::size_t i = 0; i < p.subset.indices.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      values[p.subset.indices[i]][c] = bnd[i][c];
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (b.value_base[x] == kNpos) continue;
    for (std::size_t c = 0; c < k; ++c) values[x][c] = primal[b.value_base[x] + c];
  }
  return values;
}

void fill_certificate(ExtensionSolution& s, const opt::LPSolution<double>& sol,
                      std::size_t rows, std::size_t cols, std::size_t nnz) {
  s.lp_objective = sol.objective;
  s.lp_dual_objective = sol.dual_objective;
  s.lp_gap = sol.gap;
  s.lp_rows = rows;
  s.lp_columns = cols;
  s.lp_nonzeros = nnz;
}

// Rational boundary data; W1 values are re-centred so they sum to exactly
// zero after conversion.
std::vector<std::vector<Rational>> exact_boundary(const ExtensionProblem& p) {
  std::vector<std::vector<Rational>> out;
  for (const auto& v : p.boundary) {
    std::vector<Rational> q;
    Rational sum{0};
    for (double x : v) {
      q.push_back(from_double<Rational>(x));
      sum += q.back();
    }
    if (p.target.kind == TargetKind::kW1 && sum != 0) {
      const Rational shift = sum / Rational(static_cast<long>(q.size()));
      for (auto& x : q) x -= shift;
    }
    out.push_back(std::move(q));
  }
  return out;
}

Rational exact_norm(const TargetSpace& t, const std::vector<Rational>& v,
                    const metric::FiniteMetric<Rational>* base) {
  return norm_of(t, v, base);
}

}  // namespace

ExtensionSolution min_extension_polyhedral(const ExtensionProblem& problem,
                                           opt::Backend backend) {
  problem.check();
  require(problem.target.kind != TargetKind::kL2, ErrorKind::kDomain,
          "min_extension_polyhedral: Euclidean target is not polyhedral");
  require(estimate_nonzeros(problem) <= kMaxExtensionNonzeros, ErrorKind::kCapacity,
          "min_extension_polyhedral: LP would exceed " +
              std::to_string(kMaxExtensionNonzeros) + " nonzeros");
  const bool unit_alpha = problem.alpha == 1.0;
  require(unit_alpha || backend != opt::Backend::kExact, ErrorKind::kDomain,
          "exact arithmetic needs alpha = 1 (d^alpha is irrational)");

  ExtensionSolution out;
  bool exact = false;
  if (unit_alpha && backend != opt::Backend::kFloat) {
    exact = backend == opt::Backend::kExact ||
            estimate_nonzeros(problem) <= opt::kExactNonzeroLimit;
  }

  if (exact) {
    // Boundary floor: exact norms of the fixed differences.
    const auto& s = problem.subset.indices;
    const auto d = metric::to_rational(problem.ambient);
    const auto bq = exact_boundary(problem);
    std::optional<metric::FiniteMetric<Rational>> base;
    if (problem.target.kind == TargetKind::kW1) base = exact_base(problem.target);
    const auto* bp = base ? &*base : nullptr;
    Rational floor{0};
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        floor = std::max(floor, Rational(exact_norm(problem.target, difference(bq[a], bq[b]), bp) /
                                         d(s[a], s[b])));
      }
    }
    const auto built = build_lp<Rational>(problem, bq, bp, floor);
    const auto sol = opt::solve_lp(built.lp);
    require(sol.status == opt::LpStatus::kOptimal, ErrorKind::kNumerical,
            "extension LP not optimal");
    out.values_exact = read_values(problem, built, bq, sol.primal);
    Rational achieved{0};
    for (std::size_t x = 0; x < d.size(); ++x) {
      for (std::size_t y = x + 1; y < d.size(); ++y) {
        achieved = std::max(achieved, Rational(exact_norm(problem.target,
                                                          difference(out.values_exact[x],
                                                                     out.values_exact[y]),
                                                          bp) /
                                               d(x, y)));
      }
    }
    out.constant_exact = achieved;
    require(*out.constant_exact == sol.objective, ErrorKind::kInvariant,
            "extension LP: witness constant differs from the LP optimum");
    out.values.assign(out.values_exact.size(), {});
    for (std::size_t x = 0; x < out.values_exact.size(); ++x) {
      for (const auto& v : out.values_exact[x]) out.values[x].push_back(to_double(v));
    }
    fill_certificate(out, opt::to_double(sol), built.lp.num_rows(),
                     built.lp.num_vars(), built.lp.num_nonzeros());
    out.arithmetic = Arithmetic::kExact;
    out.constant = to_double(*out.constant_exact);
    out.optimal = true;
    return out;
  }

  const auto* base = problem.target.kind == TargetKind::kW1 ? &problem.target.base : nullptr;
  const auto built = build_lp<double>(problem, problem.boundary, base, boundary_constant(problem));
  const auto sol = opt::solve_lp(built.lp);
  require(sol.status == opt::LpStatus::kOptimal, ErrorKind::kNumerical,
          "extension LP not optimal");
  out.values = read_values(problem, built, problem.boundary, sol.primal);
  if (problem.target.kind == TargetKind::kW1) {
    // Remove the solver's residual mass imbalance from free values.
    for (std::size_t x = 0; x < out.values.size(); ++x) {
      if (built.value_base[x] == kNpos) continue;
      double mean = 0.0;
      for (double v : out.values[x]) mean += v;
      mean /= static_cast<double>(out.values[x].size());
      for (double& v : out.values[x]) v -= mean;
    }
  }
  fill_certificate(out, sol, built.lp.num_rows(), built.lp.num_vars(),
                   built.lp.num_nonzeros());
  out.constant = holder_constant(out.values, problem);
  require(std::fabs(out.constant - sol.objective) <= 1e-9 * (1.0 + std::fabs(sol.objective)),
          ErrorKind::kNumerical,
          "extension LP: witness constant " + std::to_string(out.constant) +
              " differs from the LP optimum " + std::to_string(sol.objective));
  out.arithmetic = Arithmetic::kFloat;
  out.optimal = true;
  return out;
}

ExtensionSolution min_extension_euclidean(const ExtensionProblem& problem,
                                          const opt::MinimaxOptions& opts) {
  problem.check();
  require(problem.target.kind == TargetKind::kL2, ErrorKind::kDomain,
          "min_extension_euclidean: target must be l2");
  const std::size_t n = problem.ambient.size();
  std::vector<std::optional<std::vector<double>>> fixed(n);
  for (std::size_t i = 0; i < problem.subset.indices.size(); ++i) {
    fixed[problem.subset.indices[i]] = problem.boundary[i];
  }
  std::vector<opt::RatioPair> pairs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      pairs.push_back({x, y, std::pow(problem.ambient(x, y), problem.alpha)});
    }
  }
  auto o = opts;
  o.restarts = std::max<std::size_t>(o.restarts, 5);
  auto res = opt::minimize_max_ratio(n, problem.target.dim, pairs, fixed, o);
  ExtensionSolution out;
  out.values = std::move(res.assignment);
  out.constant = holder_constant(out.values, problem);
  out.optimal = false;
  out.arithmetic = Arithmetic::kFloat;
  out.trace = std::move(res.restarts);
  out.converged = res.converged;
  return out;
}

ExtensionSolution mcshane_extension(const ExtensionProblem& problem) {
  problem.check();
  require(problem.target.kind == TargetKind::kReal, ErrorKind::kDomain,
          "mcshane_extension: real-line target required");
  const double lip = boundary_constant(problem);
  const auto& s = problem.subset.indices;
  const std::size_t n = problem.ambient.size();
  ExtensionSolution out;
  out.values.assign(n, {0.0});
  std::vector<long> spos(n, -1);
  for (std::size_t i = 0; i < s.size(); ++i) spos[s[i]] = static_cast<long>(i);
  for (std::size_t x = 0; x < n; ++x) {
    if (spos[x] >= 0) {
      out.values[x][0] = problem.boundary[static_cast<std::size_t>(spos[x])][0];
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
      best = std::min(best, problem.boundary[i][0] +
                                lip * std::pow(problem.ambient(x, s[i]), problem.alpha));
    }
    out.values[x][0] = best;
  }
  out.constant = holder_constant(out.values, problem);
  out.optimal = true;
  out.arithmetic = Arithmetic::kFloat;
  return out;
}

}  // namespace lipext::ext
