// Compiled with -mavx2; only reached after a CPUID check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipext/simd/kernels.hpp"

namespace lipext::simd {
namespace {

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, hi));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, hi));
}

double max_triangle_excess_avx2(const double* row_i, const double* row_k,
                                double d_ik, std::size_t n) {
  const __m256d dik = _mm256_set1_pd(d_ik);
  __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(row_i + j);
    const __m256d b = _mm256_add_pd(dik, _mm256_loadu_pd(row_k + j));
    acc = _mm256_max_pd(acc, _mm256_sub_pd(a, b));
  }
  double worst = hmax(acc);
  for (; j < n; ++j) worst = std::max(worst, row_i[j] - (d_ik + row_k[j]));
  return worst;
}

void min_plus_relax_avx2(double* row_i, double d_ik, const double* row_k,
                         std::size_t n) {
  const __m256d dik = _mm256_set1_pd(d_ik);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cand = _mm256_add_pd(dik, _mm256_loadu_pd(row_k + j));
    const __m256d cur = _mm256_loadu_pd(row_i + j);
    // min_pd(cand, cur) returns cur when equal, matching std::min(cur, cand).
    _mm256_storeu_pd(row_i + j, _mm256_min_pd(cand, cur));
  }
  for (; j < n; ++j) row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
}

double max_ratio_avx2(const double* num, const double* den, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d q =
        _mm256_div_pd(_mm256_loadu_pd(num + j), _mm256_loadu_pd(den + j));
    acc = _mm256_max_pd(acc, q);
  }
  double best = hmax(acc);
  for (; j < n; ++j) best = std::max(best, num[j] / den[j]);
  return best;
}

double sum_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t =
        _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, t));
  }
  double s = hsum(acc);
  for (; j < n; ++j) s += std::fabs(a[j] - b[j]);
  return s;
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t =
        _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
  }
  double s = hsum(acc);
  for (; j < n; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

constexpr KernelTable kAvx2{
    Isa::kAvx2,       max_triangle_excess_avx2, min_plus_relax_avx2,
    max_ratio_avx2,   sum_abs_diff_avx2,        sum_sq_diff_avx2,
};

}  // namespace

namespace detail {
const KernelTable& avx2_table() noexcept { return kAvx2; }
}  // namespace detail

}  // namespace lipext::simd
