#include "lipext/zext/zero_extension.hpp"

#include <string>

#include "lipext/core/error.hpp"
#include "lipext/metric/validate.hpp"

namespace lipext::zext {

template <class T>
void ZeroExtensionInstance<T>::check() const {
  const std::size_t n = graph.num_vertices();
  terminals.check(n, true);
  require(d_t.size() == terminals.indices.size(), ErrorKind::kShape,
          "zero-extension: d_T size does not match the terminal count");
  if (d_t.size() > 0) {
    metric::ValidateOptions opts;
    const auto rep = metric::validate_metric(d_t, opts);
    require(rep.ok, ErrorKind::kDomain, "zero-extension: d_T is not a metric");
  }
}

namespace {

template <class T>
std::vector<long> terminal_positions(const ZeroExtensionInstance<T>& inst) {
  std::vector<long> pos(inst.graph.num_vertices(), -1);
  for (std::size_t i = 0; i < inst.terminals.indices.size(); ++i) {
    pos[inst.terminals.indices[i]] = static_cast<long>(i);
  }
  return pos;
}

template <class T>
bool within(const T& lo, const T& hi, double tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return lo <= hi;
  } else {
    return lo <= hi + tol * (1.0 + std::abs(hi));
  }
}

}  // namespace

template <class T>
T assignment_cost(const ZeroExtensionInstance<T>& inst,
                  const std::vector<std::size_t>& assignment) {
  T cost{0};
  for (const auto& e : inst.graph.edges()) {
    const std::size_t a = assignment[e.u], b = assignment[e.v];
    if (a != b) cost += e.weight * inst.d_t(a, b);
  }
  return cost;
}

template <class T>
OptResult<T> opt_brute_force(const ZeroExtensionInstance<T>& inst) {
  inst.check();
  const std::size_t n = inst.graph.num_vertices();
  const std::size_t m = inst.terminals.indices.size();
  const auto pos = terminal_positions(inst);
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] < 0) free.push_back(v);
  }
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < free.size(); ++i) {
    require(space <= kOptSearchLimit / m, ErrorKind::kCapacity,
            "opt_brute_force: |T|^(|V|-|T|) exceeds " +
                std::to_string(kOptSearchLimit));
    space *= m;
  }

  // Incident edges per vertex for incremental cost updates.
  std::vector<std::vector<std::size_t>> incident(n);
  const auto& edges = inst.graph.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    incident[edges[k].u].push_back(k);
    incident[edges[k].v].push_back(k);
  }
  auto edge_cost = [&](std::size_t k, const std::vector<std::size_t>& a) {
    const auto& e = edges[k];
    return a[e.u] == a[e.v] ? T(0) : e.weight * inst.d_t(a[e.u], a[e.v]);
  };

  std::vector<std::size_t> a(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] >= 0) a[v] = static_cast<std::size_t>(pos[v]);
  }
  T cost = assignment_cost(inst, a);
  OptResult<T> best{cost, a, space};

  auto set_label = [&](std::size_t v, std::size_t label) {
    for (std::size_t k : incident[v]) cost -= edge_cost(k, a);
    a[v] = label;
    for (std::size_t k : incident[v]) cost += edge_cost(k, a);
  };

  for (std::uint64_t step = 1; step < space; ++step) {
    std::size_t d = 0;
    while (a[free[d]] + 1 == m) {
      set_label(free[d], 0);
      ++d;
    }
    set_label(free[d], a[free[d]] + 1);
    if (cost < best.value) {
      best.value = cost;
      best.assignment = a;
    }
  }
  // Recompute from scratch so float drift in the running sum never leaks.
  best.value = assignment_cost(inst, best.assignment);
  return best;
}

template <class T>
MetResult<T> met_relaxation(const ZeroExtensionInstance<T>& inst,
                            opt::Backend backend) {
  inst.check();
  const std::size_t n = inst.graph.num_vertices();
  const auto pos = terminal_positions(inst);
  std::vector<std::size_t> var(n * n, 0);
  opt::LinearProgram<T> lp;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t v;
      if (pos[i] >= 0 && pos[j] >= 0) {
        const T d = inst.d_t(static_cast<std::size_t>(pos[i]),
                             static_cast<std::size_t>(pos[j]));
        v = lp.add_variable(T(0), d, d);
      } else {
        v = lp.add_variable(T(0));
      }
      var[i * n + j] = var[j * n + i] = v;
    }
  }
  for (const auto& e : inst.graph.edges()) lp.objective[var[e.u * n + e.v]] += e.weight;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        lp.add_row({{var[i * n + j], T(1)}, {var[i * n + k], T(-1)}, {var[k * n + j], T(-1)}},
                   opt::RowSense::kLe, T(0));
      }
    }
  }

  const auto sol = opt::solve_lp_as(lp, backend);
  require(sol.solution.status == opt::LpStatus::kOptimal, ErrorKind::kNumerical,
          "met_relaxation: LP not optimal (" +
              std::string(opt::to_string(sol.solution.status)) + ")");
  MetResult<T> res;
  res.value = sol.solution.objective;
  res.arithmetic = sol.arithmetic;
  res.gap = sol.solution.gap;
  std::vector<T> dist(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) dist[i * n + j] = sol.solution.primal[var[i * n + j]];
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  res.metric = metric::FiniteMetric<T>(std::move(labels), std::move(dist));
  return res;
}

template <class T>
EmdResult<T> emd_relaxation(const ZeroExtensionInstance<T>& inst,
                            opt::Backend backend) {
  inst.check();
  const std::size_t n = inst.graph.num_vertices();
  const std::size_t m = inst.terminals.indices.size();
  const auto pos = terminal_positions(inst);

  opt::LinearProgram<T> lp;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> mu_base(n, kNone);
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] >= 0) continue;
    mu_base[v] = lp.num_vars();
    std::vector<std::pair<std::size_t, T>> row;
    for (std::size_t t = 0; t < m; ++t) row.emplace_back(lp.add_variable(T(0)), T(1));
    lp.add_row(row, opt::RowSense::kEq, T(1));
  }

  // Marginal row: sum of the block entries equals mu_v(s) (a variable for a
  // free vertex, a constant for a terminal).
  auto marginal = [&](std::vector<std::pair<std::size_t, T>> row, std::size_t v,
                      std::size_t s) {
    if (pos[v] < 0) {
      row.emplace_back(mu_base[v] + s, T(-1));
      lp.add_row(row, opt::RowSense::kEq, T(0));
    } else {
      lp.add_row(row, opt::RowSense::kEq,
                 static_cast<std::size_t>(pos[v]) == s ? T(1) : T(0));
    }
  };

  T constant{0};
  for (const auto& e : inst.graph.edges()) {
    if (!(e.weight > T(0))) continue;
    if (pos[e.u] >= 0 && pos[e.v] >= 0) {
      constant += e.weight * inst.d_t(static_cast<std::size_t>(pos[e.u]),
                                      static_cast<std::size_t>(pos[e.v]));
      continue;
    }
    const std::size_t base = lp.num_vars();
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t t = 0; t < m; ++t) lp.add_variable(e.weight * inst.d_t(s, t));
    }
    for (std::size_t s = 0; s < m; ++s) {
      std::vector<std::pair<std::size_t, T>> row, col;
      for (std::size_t t = 0; t < m; ++t) {
        row.emplace_back(base + s * m + t, T(1));
        col.emplace_back(base + t * m + s, T(1));
      }
      marginal(std::move(row), e.u, s);
      marginal(std::move(col), e.v, s);
    }
  }

  EmdResult<T> res;
  res.measures.assign(n, std::vector<T>(m, T(0)));
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] >= 0) res.measures[v][static_cast<std::size_t>(pos[v])] = T(1);
  }
  if (lp.num_vars() == 0) {
    res.value = constant;
    return res;
  }
  const auto sol = opt::solve_lp_as(lp, backend);
  require(sol.solution.status == opt::LpStatus::kOptimal, ErrorKind::kNumerical,
          "emd_relaxation: LP not optimal (" +
              std::string(opt::to_string(sol.solution.status)) + ")");
  res.value = sol.solution.objective + constant;
  res.arithmetic = sol.arithmetic;
  res.gap = sol.solution.gap;
  for (std::size_t v = 0; v < n; ++v) {
    if (pos[v] >= 0) continue;
    for (std::size_t t = 0; t < m; ++t) res.measures[v][t] = sol.solution.primal[mu_base[v] + t];
  }
  return res;
}

template <class T>
ZeroExtensionResult<T> relaxation_chain_check(
    const ZeroExtensionInstance<T>& inst, opt::Backend backend, double tol) {
  const auto opt_res = opt_brute_force(inst);
  const auto met = met_relaxation(inst, backend);
  const auto emd = emd_relaxation(inst, backend);
  ZeroExtensionResult<T> out;
  out.opt = opt_res.value;
  out.met = met.value;
  out.emd = emd.value;
  out.opt_partition = opt_res.assignment;
  out.met_metric = met.metric;
  out.emd_measures = emd.measures;
  out.arithmetic = (met.arithmetic == Arithmetic::kExact &&
                    emd.arithmetic == Arithmetic::kExact)
                       ? Arithmetic::kExact
                       : Arithmetic::kFloat;
  require(within(out.met, out.emd, tol) && within(out.emd, out.opt, tol),
          ErrorKind::kInvariant,
          "relaxation chain violated: MET=" + std::to_string(to_double(out.met)) +
              " EMD=" + std::to_string(to_double(out.emd)) +
              " OPT=" + std::to_string(to_double(out.opt)));
  return out;
}

#define LIPEXT_INSTANTIATE(T)                                                  \
  template struct ZeroExtensionInstance<T>;                                    \
  template T assignment_cost(const ZeroExtensionInstance<T>&,                  \
                             const std::vector<std::size_t>&);                 \
  template OptResult<T> opt_brute_force(const ZeroExtensionInstance<T>&);      \
  template MetResult<T> met_relaxation(const ZeroExtensionInstance<T>&,        \
                                       opt::Backend);                          \
  template EmdResult<T> emd_relaxation(const ZeroExtensionInstance<T>&,        \
                                       opt::Backend);                          \
  template ZeroExtensionResult<T> relaxation_chain_check(                      \
      const ZeroExtensionInstance<T>&, opt::Backend, double);

LIPEXT_INSTANTIATE(double)
LIPEXT_INSTANTIATE(Rational)

}  // namespace lipext::zext
