#include "lipext/opt/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "lipext/core/error.hpp"

namespace lipext::opt {

double max_ratio(const std::vector<std::vector<double>>& values,
                 const std::vector<RatioPair>& pairs) {
  double best = 0.0;
  for (const auto& p : pairs) {
    const auto& a = values[p.i];
    const auto& b = values[p.j];
    double sq = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) sq += (a[c] - b[c]) * (a[c] - b[c]);
    best = std::max(best, std::sqrt(sq) / p.denom);
  }
  return best;
}

namespace {

struct Problem {
  std::size_t n;
  std::size_t k;
  const std::vector<RatioPair>* pairs;
  std::vector<char> is_free;
  std::vector<double> lo, hi;  // bounding box per coordinate
  std::vector<double> start;   // flat n*k, fixed values in place
};

// Objective and one subgradient (of the first maximizing pair).
double evaluate(const Problem& pb, const std::vector<double>& x,
                std::vector<double>& grad, bool& locked) {
  double best = -1.0;
  std::size_t arg = 0;
  double arg_norm = 0.0;
  const auto& pairs = *pb.pairs;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto& p = pairs[q];
    double sq = 0.0;
    for (std::size_t c = 0; c < pb.k; ++c) {
      const double t = x[p.i * pb.k + c] - x[p.j * pb.k + c];
      sq += t * t;
    }
    const double nrm = std::sqrt(sq);
    const double v = nrm / p.denom;
    if (v > best) {
      best = v;
      arg = q;
      arg_norm = nrm;
    }
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  locked = true;
  if (pairs.empty() || arg_norm == 0.0) return std::max(best, 0.0);
  const auto& p = pairs[arg];
  locked = !pb.is_free[p.i] && !pb.is_free[p.j];
  for (std::size_t c = 0; c < pb.k; ++c) {
    const double t =
        (x[p.i * pb.k + c] - x[p.j * pb.k + c]) / (arg_norm * p.denom);
    if (pb.is_free[p.i]) grad[p.i * pb.k + c] += t;
    if (pb.is_free[p.j]) grad[p.j * pb.k + c] -= t;
  }
  return best;
}

struct RunOutput {
  RestartTrace trace;
  std::vector<double> x;
};

RunOutput run_restart(const Problem& pb, std::size_t index,
                      const MinimaxOptions& opts) {
  RunOutput out;
  out.trace.seed = opts.seed * 0x9E3779B97F4A7C15ull + index;
  std::mt19937_64 rng(out.trace.seed);
  std::vector<double> x = pb.start;
  if (index > 0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t v = 0; v < pb.n; ++v) {
      if (!pb.is_free[v]) continue;
      for (std::size_t c = 0; c < pb.k; ++c) {
        x[v * pb.k + c] = pb.lo[c] + u(rng) * (pb.hi[c] - pb.lo[c]);
      }
    }
  }

  double box = 0.0;
  for (std::size_t c = 0; c < pb.k; ++c) box += (pb.hi[c] - pb.lo[c]) * (pb.hi[c] - pb.lo[c]);
  box = std::sqrt(box);

  std::vector<double> g(x.size());
  bool locked = false;
  double f = evaluate(pb, x, g, locked);
  double best = f;
  std::vector<double> best_x = x;
  double delta = std::max(0.5 * f, 1e-12);
  const double path_budget = std::max(box, 1e-12);
  double travelled = 0.0;
  double window_start = best;

  std::size_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (locked) {
      out.trace.converged = true;
      break;
    }
    double gg = 0.0;
    for (double v : g) gg += v * v;
    if (gg == 0.0) {
      out.trace.converged = true;
      break;
    }
    const double level = best - delta;
    const double step = (f - level) / gg;
    for (std::size_t v = 0; v < pb.n; ++v) {
      if (!pb.is_free[v]) continue;
      for (std::size_t c = 0; c < pb.k; ++c) {
        double& xc = x[v * pb.k + c];
        xc = std::clamp(xc - step * g[v * pb.k + c], pb.lo[c], pb.hi[c]);
      }
    }
    travelled += step * std::sqrt(gg);
    f = evaluate(pb, x, g, locked);
    if (f <= best - 0.5 * delta) {
      travelled = 0.0;
    } else if (travelled > path_budget) {
      delta *= 0.5;
      travelled = 0.0;
      x = best_x;
      f = evaluate(pb, x, g, locked);
    }
    if (f < best) {
      best = f;
      best_x = x;
    }
    if ((it + 1) % opts.stall_window == 0) {
      out.trace.checkpoints.push_back(best);
      if (window_start - best <= opts.stall_tolerance * std::max(best, 1e-300)) {
        out.trace.converged = true;
        ++it;
        break;
      }
      window_start = best;
    }
  }
  out.trace.iterations = it;
  out.trace.value = best;
  out.x = std::move(best_x);
  return out;
}

}  // namespace

MinimaxResult minimize_max_ratio(
    std::size_t num_points, std::size_t k, const std::vector<RatioPair>& pairs,
    const std::vector<std::optional<std::vector<double>>>& fixed,
    const MinimaxOptions& opts) {
  require(k > 0, ErrorKind::kDomain, "minimize_max_ratio: k must be positive");
  require(fixed.size() == num_points, ErrorKind::kShape,
          "minimize_max_ratio: fixed has wrong length");
  for (const auto& p : pairs) {
    require(p.i < num_points && p.j < num_points && p.i != p.j,
            ErrorKind::kDomain, "minimize_max_ratio: bad pair");
    require(p.denom > 0.0 && std::isfinite(p.denom), ErrorKind::kDomain,
            "minimize_max_ratio: denominators must be positive");
  }

  Problem pb;
  pb.n = num_points;
  pb.k = k;
  pb.pairs = &pairs;
  pb.is_free.assign(num_points, 0);
  pb.lo.assign(k, std::numeric_limits<double>::infinity());
  pb.hi.assign(k, -std::numeric_limits<double>::infinity());
  std::vector<double> centroid(k, 0.0);
  std::size_t num_fixed = 0;
  for (std::size_t v = 0; v < num_points; ++v) {
    if (!fixed[v]) {
      pb.is_free[v] = 1;
      continue;
    }
    require(fixed[v]->size() == k, ErrorKind::kShape,
            "minimize_max_ratio: fixed value of wrong dimension");
    ++num_fixed;
    for (std::size_t c = 0; c < k; ++c) {
      const double t = (*fixed[v])[c];
      pb.lo[c] = std::min(pb.lo[c], t);
      pb.hi[c] = std::max(pb.hi[c], t);
      centroid[c] += t;
    }
  }
  require(num_fixed > 0, ErrorKind::kDomain,
          "minimize_max_ratio: need at least one fixed point");
  for (auto& c : centroid) c /= static_cast<double>(num_fixed);
  pb.start.assign(num_points * k, 0.0);
  for (std::size_t v = 0; v < num_points; ++v) {
    for (std::size_t c = 0; c < k; ++c) {
      pb.start[v * k + c] = fixed[v] ? (*fixed[v])[c] : centroid[c];
    }
  }

  const std::size_t runs = num_fixed == num_points ? 1 : std::max<std::size_t>(opts.restarts, 1);
  std::vector<RunOutput> outs(runs);
  if (opts.parallel && runs > 1) {
    std::vector<std::thread> pool;
    pool.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
      pool.emplace_back([&, r] { outs[r] = run_restart(pb, r, opts); });
    }
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t r = 0; r < runs; ++r) outs[r] = run_restart(pb, r, opts);
  }

  MinimaxResult res;
  res.best_restart = 0;
  for (std::size_t r = 1; r < runs; ++r) {
    if (outs[r].trace.value < outs[res.best_restart].trace.value) res.best_restart = r;
  }
  const auto& win = outs[res.best_restart];
  res.assignment.assign(num_points, std::vector<double>(k));
  for (std::size_t v = 0; v < num_points; ++v) {
    for (std::size_t c = 0; c < k; ++c) res.assignment[v][c] = win.x[v * k + c];
  }
  res.value = max_ratio(res.assignment, pairs);
  res.converged = win.trace.converged;
  for (auto& o : outs) res.restarts.push_back(std::move(o.trace));
  return res;
}

}  // namespace lipext::opt
