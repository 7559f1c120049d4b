#include "lipext/metric/validate.hpp"

#include <cmath>

#include "lipext/core/error.hpp"
#include "lipext/simd/kernels.hpp"

namespace lipext::metric {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDiagonal:
      return "diagonal";
    case ViolationKind::kSymmetry:
      return "symmetry";
    case ViolationKind::kPositivity:
      return "positivity";
    case ViolationKind::kTriangle:
      return "triangle";
  }
  return "?";
}

namespace {

template <class T>
class Auditor {
 public:
  Auditor(const std::vector<T>& dist, std::size_t n, const ValidateOptions& opts)
      : d_(dist), n_(n), opts_(opts) {}

  ValidationReport run() {
    check_pointwise();
    check_triangles();
    report_.ok = report_.violation_count == 0;
    return std::move(report_);
  }

 private:
  const T& at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  void record(ViolationKind kind, std::size_t i, std::size_t j, std::size_t via,
              double excess) {
    ++report_.violation_count;
    if (report_.violations.size() < opts_.max_listed) {
      report_.violations.push_back({kind, i, j, via, excess});
    }
  }

  bool exceeds(const T& lhs, const T& rhs) const {
    return !leq(lhs, rhs, opts_.tol);
  }

  void check_pointwise() {
    const T zero(0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (at(i, i) != zero) {
        record(ViolationKind::kDiagonal, i, i, i,
               std::fabs(lipext::to_double(at(i, i))));
      }
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (exceeds(at(i, j), at(j, i)) || exceeds(at(j, i), at(i, j))) {
          record(ViolationKind::kSymmetry, i, j, i,
                 std::fabs(lipext::to_double(at(i, j) - at(j, i))));
        }
        const bool bad = opts_.mode == MetricMode::kMetric
                             ? !(zero < at(i, j))
                             : at(i, j) < zero;
        if (bad) {
          record(ViolationKind::kPositivity, i, j, i,
                 -lipext::to_double(at(i, j)));
        }
      }
    }
  }

  void scan_row(std::size_t i, std::size_t k) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (j == k) continue;
      const T rhs = at(i, k) + at(k, j);
      if (exceeds(at(i, j), rhs)) {
        record(ViolationKind::kTriangle, i, j, k,
               lipext::to_double(T(at(i, j) - rhs)));
      }
    }
  }

  void check_triangles() {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == i) continue;
        if constexpr (std::is_same_v<T, double>) {
          const double worst = simd::max_triangle_excess(
              {d_.data() + i * n_, n_}, {d_.data() + k * n_, n_}, at(i, k));
          if (!(worst > opts_.tol)) continue;
        }
        scan_row(i, k);
      }
    }
  }

  const std::vector<T>& d_;
  std::size_t n_;
  const ValidateOptions& opts_;
  ValidationReport report_;
};

}  // namespace

template <class T>
ValidationReport validate_metric(const std::vector<std::vector<T>>& rows,
                                 const ValidateOptions& opts) {
  const std::size_t n = rows.size();
  std::vector<T> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    require(r.size() == n, ErrorKind::kShape, "distance matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Auditor<T>(flat, n, opts).run();
}

template <class T>
ValidationReport validate_metric(const FiniteMetric<T>& m,
                                 const ValidateOptions& opts) {
  return Auditor<T>(m.data(), m.size(), opts).run();
}

template ValidationReport validate_metric(
    const std::vector<std::vector<double>>&, const ValidateOptions&);
template ValidationReport validate_metric(
    const std::vector<std::vector<Rational>>&, const ValidateOptions&);
template ValidationReport validate_metric(const FiniteMetric<double>&,
                                          const ValidateOptions&);
template ValidationReport validate_metric(const FiniteMetric<Rational>&,
                                          const ValidateOptions&);

}  // namespace lipext::metric
