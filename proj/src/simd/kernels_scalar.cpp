#include <algorithm>
#include <cmath>
#include <limits>

#include "lipext/simd/kernels.hpp"

namespace lipext::simd {
namespace {

double max_triangle_excess_scalar(const double* row_i, const double* row_k,
                                  double d_ik, std::size_t n) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, row_i[j] - (d_ik + row_k[j]));
  }
  return worst;
}

void min_plus_relax_scalar(double* row_i, double d_ik, const double* row_k,
                           std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
  }
}

double max_ratio_scalar(const double* num, const double* den, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) best = std::max(best, num[j] / den[j]);
  return best;
}

double sum_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += std::fabs(a[j] - b[j]);
  return s;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

constexpr KernelTable kScalar{
    Isa::kScalar,        max_triangle_excess_scalar, min_plus_relax_scalar,
    max_ratio_scalar,    sum_abs_diff_scalar,        sum_sq_diff_scalar,
};

}  // namespace

namespace detail {
const KernelTable& scalar_table() noexcept { return kScalar; }
}  // namespace detail

}  // namespace lipext::simd
