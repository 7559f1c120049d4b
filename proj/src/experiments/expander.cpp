#include "lipext/experiments/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "lipext/core/error.hpp"
#include "lipext/ext/extension.hpp"
#include "lipext/graphs/expansion.hpp"
#include "lipext/graphs/random_regular.hpp"
#include "lipext/metric/constructions.hpp"
#include "lipext/wasserstein/w1.hpp"

namespace lipext::experiments {

ExpanderInstance build_expander_instance(std::size_t n, std::size_t d,
                                         std::uint64_t seed) {
  require(d >= 3, ErrorKind::kDomain, "expander instance: need d >= 3");
  require(n >= 8, ErrorKind::kDomain, "expander instance: need n >= 8");
  require(n <= kMaxExpanderVertices, ErrorKind::kCapacity,
          "expander instance: n above " + std::to_string(kMaxExpanderVertices));
  ExpanderInstance inst;
  inst.n = n;
  inst.d = d;
  inst.seed = seed;
  inst.graph = graphs::random_regular_graph(n, d, seed);

  const double ln_n = std::log(static_cast<double>(n));
  const double dld = static_cast<double>(d) * std::log(static_cast<double>(d));
  inst.s_formula = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * std::sqrt(dld) / std::sqrt(ln_n)));
  inst.clamped = inst.s_formula > n;
  const std::size_t k = std::min(n, inst.s_formula);
  inst.s = metric::Subset::range(0, k);
  inst.r = std::sqrt(ln_n) / std::sqrt(dld);

  inst.graph_metric = metric::shortest_path_metric(inst.graph);
  inst.magnified = metric::magnify(inst.graph_metric, inst.s, inst.r);
  inst.base = metric::restrict_to(inst.magnified, inst.s);

  const double avg = 1.0 / static_cast<double>(k);
  inst.boundary.assign(k, std::vector<double>(k, -avg));
  for (std::size_t i = 0; i < k; ++i) inst.boundary[i][i] += 1.0;

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<double> diff(k);
      for (std::size_t c = 0; c < k; ++c) diff[c] = inst.boundary[i][c] - inst.boundary[j][c];
      const double w = wasserstein::w1_norm_value(diff, inst.base);
      inst.isometry_error = std::max(inst.isometry_error, std::fabs(w - inst.base(i, j)));
    }
  }
  require(inst.isometry_error <= 1e-9, ErrorKind::kInvariant,
          "expander instance: boundary map is not isometric");
  return inst;
}

double evaluate_expander_bound(double phi, std::size_t n, std::size_t d,
                               double diam, std::size_t s_size, double r) {
  require(phi > 0.0 && phi <= 1.0, ErrorKind::kDomain, "expander bound: phi must lie in (0,1]");
  require(s_size >= 1, ErrorKind::kDomain, "expander bound: S must be nonempty");
  require(n >= 2 && d >= 2, ErrorKind::kDomain, "expander bound: need n, d >= 2");
  require(r > 0.0 && r <= diam, ErrorKind::kDomain, "expander bound: need 0 < r <= diam");
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_d = std::log(static_cast<double>(d));
  const double s = static_cast<double>(s_size);
  const double inner = std::log(phi * s / 8.0);
  if (16.0 * r * ln_d + inner <= 0.0) return 0.0;
  const double a = s * ln_n / (static_cast<double>(n) * static_cast<double>(d) * ln_d);
  const double b = (16.0 * r * r * ln_d + r * inner) / (diam * ln_d);
  return phi / (1.0 + r * s / static_cast<double>(n)) * std::min(a, b);
}

ExpanderReport evaluate_expander_instance(const ExpanderInstance& inst,
                                          opt::Backend backend) {
  ExpanderReport rep;
  rep.n = inst.n;
  rep.d = inst.d;
  rep.seed = inst.seed;
  rep.s_size = inst.s.indices.size();
  rep.s_formula = inst.s_formula;
  rep.clamped = inst.clamped;
  rep.r = inst.r;
  rep.isometry_error = inst.isometry_error;

  const auto expansion = graphs::edge_expansion(inst.graph);
  rep.phi = expansion.phi;
  rep.phi_method = graphs::to_string(expansion.method);
  rep.phi_used = std::min(1.0, expansion.phi);
  rep.diam = metric::diameter(inst.graph_metric);
  rep.diam_s = metric::diameter(inst.graph_metric, inst.s);

  ext::ExtensionProblem problem;
  problem.ambient = inst.magnified;
  problem.subset = inst.s;
  problem.alpha = 1.0;
  problem.target = ext::TargetSpace::wasserstein(inst.base);
  problem.boundary = inst.boundary;
  const auto sol = ext::min_extension_polyhedral(problem, backend);
  rep.min_l = sol.constant;
  rep.arithmetic = to_string(sol.arithmetic);
  rep.lp_gap = sol.lp_gap;
  rep.min_l_certified =
      sol.optimal && sol.lp_gap <= 1e-8 * (1.0 + std::fabs(sol.lp_objective));

  rep.bound_value = evaluate_expander_bound(rep.phi_used, inst.n, inst.d, rep.diam,
                                            rep.s_size, inst.r);
  rep.bound_vacuous = rep.bound_value == 0.0;
  rep.ratio = rep.bound_vacuous ? std::numeric_limits<double>::infinity()
                                : rep.min_l / rep.bound_value;

  rep.epsilon_discreteness = (2.0 * inst.r + 1.0) / (2.0 * inst.r + rep.diam_s);
  rep.epsilon_measured = rep.s_size < 2
                             ? 1.0
                             : metric::min_positive_distance(inst.magnified, inst.s) /
                                   metric::diameter(inst.magnified, inst.s);

  std::vector<wasserstein::SignedMeasure<double>> f;
  f.reserve(sol.values.size());
  for (const auto& v : sol.values) f.push_back({v});
  const auto pc = wasserstein::poincare_check(inst.graph, inst.s, inst.r, f, rep.phi_used, 1e-9);
  rep.poincare_lhs = pc.lhs;
  rep.poincare_rhs = pc.rhs;
  rep.poincare_ok = pc.holds;
  return rep;
}

std::vector<ExpanderReport> run_expander_experiment(const std::vector<std::size_t>& n_list,
                                                    std::size_t d, std::uint64_t seed,
                                                    opt::Backend backend, bool parallel) {
  std::vector<ExpanderReport> rows(n_list.size());
  auto work = [&](std::size_t i) {
    try {
      rows[i] = evaluate_expander_instance(build_expander_instance(n_list[i], d, seed), backend);
    } catch (const Error& e) {
      ExpanderReport bad;
      bad.n = n_list[i];
      bad.d = d;
      bad.seed = seed;
      bad.status = std::string("error:") + to_string(e.kind()) + ": " + e.what();
      rows[i] = bad;
    }
  };
  if (parallel && rows.size() > 1) {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < rows.size(); ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) work(i);
  }
  return rows;
}

Record ExpanderReport::record() const {
  Record r;
  r.add("n", static_cast<std::int64_t>(n));
  r.add("d", static_cast<std::int64_t>(d));
  r.add("seed", static_cast<std::int64_t>(seed));
  r.add("status", status);
  r.add("log_base", std::string(kLogBase));
  r.add("phi", phi);
  r.add("phi_method", phi_method);
  r.add("phi_used", phi_used);
  r.add("diam", diam);
  r.add("diam_S", diam_s);
  r.add("S_size", static_cast<std::int64_t>(s_size));
  r.add("S_formula", static_cast<std::int64_t>(s_formula));
  r.add("S_clamped", clamped);
  r.add("r", this->r);
  r.add("isometry_error", isometry_error);
  r.add("minL", min_l);
  r.add("arithmetic", arithmetic);
  r.add("lp_gap", lp_gap);
  r.add("minL_certified", min_l_certified);
  r.add("bound_value", bound_value);
  r.add("bound_note", std::string("up to universal constant"));
  r.add("bound_vacuous", bound_vacuous);
  r.add("ratio", ratio);
  r.add("epsilon_discreteness", epsilon_discreteness);
  r.add("epsilon_measured", epsilon_measured);
  r.add("poincare_lhs", poincare_lhs);
  r.add("poincare_rhs", poincare_rhs);
  r.add("poincare_ok", poincare_ok);
  return r;
}

}  // namespace lipext::experiments
