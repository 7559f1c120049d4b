#include "lipext/experiments/holder.hpp"

#include <cmath>
#include <thread>

#include "lipext/core/error.hpp"
#include "lipext/ext/extension.hpp"
#include "lipext/metric/validate.hpp"

namespace lipext::experiments {

HolderInstance build_holder_instance(int n, double alpha) {
  require(alpha > 0.5 && alpha <= 1.0, ErrorKind::kDomain,
          "holder instance: alpha must lie in (1/2, 1]");
  require(n >= 1, ErrorKind::kDomain, "holder instance: need n >= 1");
  require(n <= kMaxHolderBuildDim, ErrorKind::kCapacity,
          "holder instance: n above " + std::to_string(kMaxHolderBuildDim));
  HolderInstance inst;
  inst.n = n;
  inst.alpha = alpha;
  const double nn = static_cast<double>(n);
  inst.r = std::pow(nn, 1.0 / (4.0 * alpha * alpha));
  inst.s = std::pow(nn, -(2.0 * alpha - 1.0) / (4.0 * alpha * alpha));
  inst.cube = metric::twisted_cube_metric(n, alpha, inst.r, inst.s);

  const std::size_t words = std::size_t{1} << n;
  inst.layer0 = metric::Subset::range(0, words);
  inst.boundary.assign(words, std::vector<double>(static_cast<std::size_t>(n)));
  for (std::size_t x = 0; x < words; ++x) {
    for (int b = 0; b < n; ++b) inst.boundary[x][static_cast<std::size_t>(b)] = (x >> b) & 1u;
  }
  for (std::size_t x = 0; x < words; ++x) {
    for (std::size_t y = x + 1; y < words; ++y) {
      double sq = 0.0;
      for (int b = 0; b < n; ++b) {
        const double t = inst.boundary[x][static_cast<std::size_t>(b)] -
                         inst.boundary[y][static_cast<std::size_t>(b)];
        sq += t * t;
      }
      const double want = std::pow(inst.cube.metric(x, y), alpha);
      inst.boundary_error = std::max(inst.boundary_error, std::fabs(std::sqrt(sq) - want));
    }
  }
  return inst;
}

double evaluate_holder_bound(double n, double alpha, double r, double s) {
  require(n > 0 && alpha > 0 && r > 0 && s > 0, ErrorKind::kDomain,
          "holder bound: arguments must be positive");
  const double rn = std::sqrt(n);
  return rn / (std::pow(s, alpha) * rn + 2.0 * std::pow(r, alpha));
}

EnfloReport enflo_check(const std::vector<std::vector<double>>& f, int n, double tol) {
  require(n >= 0 && n <= kMaxEnfloDim, ErrorKind::kCapacity,
          "enflo_check: n above " + std::to_string(kMaxEnfloDim));
  const std::size_t words = std::size_t{1} << n;
  require(f.size() == words, ErrorKind::kShape, "enflo_check: need 2^n values");
  for (const auto& v : f) {
    require(v.size() == f[0].size(), ErrorKind::kShape, "enflo_check: ragged values");
  }
  auto sq = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < f[a].size(); ++c) acc += (f[a][c] - f[b][c]) * (f[a][c] - f[b][c]);
    return acc;
  };
  EnfloReport rep;
  const std::size_t all = words - 1;
  for (std::size_t x = 0; x < words; ++x) {
    rep.lhs += sq(x ^ all, x);
    for (int j = 0; j < n; ++j) rep.rhs += sq(x ^ (std::size_t{1} << j), x);
  }
  rep.holds = rep.lhs <= rep.rhs + tol * (1.0 + rep.rhs);
  return rep;
}

HolderReport evaluate_holder_instance(const HolderInstance& inst,
                                      const opt::MinimaxOptions& opts) {
  require(inst.n <= kMaxHolderSolveDim, ErrorKind::kCapacity,
          "holder experiment: descent solve limited to n <= " +
              std::to_string(kMaxHolderSolveDim));
  HolderReport rep;
  rep.n = inst.n;
  rep.alpha = inst.alpha;
  rep.seed = opts.seed;
  rep.r = inst.r;
  rep.s = inst.s;
  rep.rs_condition_ok = inst.cube.rs_condition;
  rep.metric_valid = metric::validate_metric(inst.cube.metric).ok;
  rep.boundary_error = inst.boundary_error;

  ext::ExtensionProblem problem;
  problem.ambient = inst.cube.metric;
  problem.subset = inst.layer0;
  problem.alpha = inst.alpha;
  problem.target = ext::TargetSpace::euclidean(static_cast<std::size_t>(inst.n));
  problem.boundary = inst.boundary;
  const auto sol = ext::min_extension_euclidean(problem, opts);
  rep.min_l_upper = sol.constant;
  rep.descent_converged = sol.converged;
  rep.exact_bound = evaluate_holder_bound(inst.n, inst.alpha, inst.r, inst.s);
  rep.bound_ok = rep.min_l_upper >= rep.exact_bound - 1e-3;

  const std::size_t words = std::size_t{1} << inst.n;
  std::vector<std::vector<double>> layer1(sol.values.begin() + static_cast<long>(words),
                                          sol.values.end());
  const auto enflo = enflo_check(layer1, inst.n);
  rep.enflo_lhs = enflo.lhs;
  rep.enflo_rhs = enflo.rhs;
  rep.enflo_ok = enflo.holds;
  return rep;
}

std::vector<HolderReport> run_holder_experiment(const std::vector<int>& n_list,
                                                const std::vector<double>& alpha_list,
                                                std::uint64_t seed, bool parallel) {
  std::vector<std::pair<int, double>> grid;
  for (int n : n_list) {
    for (double a : alpha_list) grid.emplace_back(n, a);
  }
  std::vector<HolderReport> rows(grid.size());
  auto work = [&](std::size_t i) {
    try {
      opt::MinimaxOptions opts;
      opts.seed = seed;
      rows[i] = evaluate_holder_instance(build_holder_instance(grid[i].first, grid[i].second), opts);
    } catch (const Error& e) {
      HolderReport bad;
      bad.n = grid[i].first;
      bad.alpha = grid[i].second;
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

Record HolderReport::record() const {
  Record rec;
  rec.add("n", static_cast<std::int64_t>(n));
  rec.add("alpha", alpha);
  rec.add("seed", static_cast<std::int64_t>(seed));
  rec.add("status", status);
  rec.add("r", r);
  rec.add("s", s);
  rec.add("rs_condition_ok", rs_condition_ok);
  rec.add("metric_valid", metric_valid);
  rec.add("boundary_error", boundary_error);
  rec.add("minL_upper", min_l_upper);
  rec.add("descent_converged", descent_converged);
  rec.add("exact_bound", exact_bound);
  rec.add("bound_ok", bound_ok);
  rec.add("enflo_lhs", enflo_lhs);
  rec.add("enflo_rhs", enflo_rhs);
  rec.add("enflo_ok", enflo_ok);
  return rec;
}

}  // namespace lipext::experiments
