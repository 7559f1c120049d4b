#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace lipext::opt {

struct RatioPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double denom = 1.0;  // > 0
};

struct MinimaxOptions {
  std::size_t restarts = 5;
  std::size_t max_iterations = 200000;  // per restart
  std::size_t stall_window = 1000;
  double stall_tolerance = 1e-6;  // relative improvement over the window
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct RestartTrace {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double value = 0.0;
  bool converged = false;
  std::vector<double> checkpoints;  // best value at every stall_window-th step
};

struct MinimaxResult {
  double value = 0.0;
  // One k-vector per point; fixed points carry their given values.
  std::vector<std::vector<double>> assignment;
  std::vector<RestartTrace> restarts;
  std::size_t best_restart = 0;
  bool converged = false;
};

// max over pairs of ||F(i)-F(j)||_2 / denom evaluated at an assignment.
double max_ratio(const std::vector<std::vector<double>>& values,
                 const std::vector<RatioPair>& pairs);

// Heuristic minimization of max_pairs ||F(i)-F(j)||_2 / denom over the free
// points (fixed[i] == nullopt), F(i) in R^k. Projected subgradient descent
// with Polyak steps toward a variable target level, projected onto the
// bounding box of the fixed values. Restarts run concurrently with seeds
// derived from opts.seed; the smallest value wins (ties: lowest restart).
// The returned value is achieved by the returned assignment, so it is an
// upper bound on the true minimum.
//
// Throws kDomain without fixed points, on k = 0, on a fixed value of wrong
// length, on bad pair indices or on a non-positive denominator.
MinimaxResult minimize_max_ratio(
    std::size_t num_points, std::size_t k, const std::vector<RatioPair>& pairs,
    const std::vector<std::optional<std::vector<double>>>& fixed,
    const MinimaxOptions& opts = {});

}  // namespace lipext::opt
