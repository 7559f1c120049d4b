#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lipext/metric/finite_metric.hpp"

namespace lipext::metric {

enum class ViolationKind { kDiagonal, kSymmetry, kPositivity, kTriangle };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  // Intermediate point for triangle violations: d(i,j) > d(i,via) + d(via,j).
  std::size_t via = 0;
  // Amount by which the constraint is broken (as double).
  double excess = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::size_t violation_count = 0;
  // At most `max_listed` entries; violation_count has the total.
  std::vector<Violation> violations;
};

enum class MetricMode {
  kMetric,      // d(i,j) > 0 for i != j
  kSemiMetric,  // d(i,j) >= 0 for i != j
};

struct ValidateOptions {
  double tol = 1e-12;  // ignored for exact scalars
  MetricMode mode = MetricMode::kMetric;
  std::size_t max_listed = 1000;
};

// Exhaustive audit: diagonal, symmetry, positivity and all n^3 triangle
// inequalities. Triangle triples are reported once per unordered {i,j}.
// Throws kShape on a non-square matrix.
template <class T>
ValidationReport validate_metric(const std::vector<std::vector<T>>& rows,
                                 const ValidateOptions& opts = {});

template <class T>
ValidationReport validate_metric(const FiniteMetric<T>& m,
                                 const ValidateOptions& opts = {});

}  // namespace lipext::metric
