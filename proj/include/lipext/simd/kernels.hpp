#pragma once

#include <cstddef>
#include <span>

// Dense double-precision inner loops shared by the metric, graph and
// extension code. Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant; the variant is picked once at startup from
// CPUID (override with LIPEXT_SIMD=scalar|avx2).
//
// max_triangle_excess, min_plus_relax and max_ratio are bit-identical across
// variants (same per-lane operation order, min/max only). The two sums
// reassociate and agree to rounding.

namespace lipext::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  // max_j (row_i[j] - (d_ik + row_k[j])); -inf when n == 0.
  double (*max_triangle_excess)(const double* row_i, const double* row_k,
                                double d_ik, std::size_t n);
  // row_i[j] = min(row_i[j], d_ik + row_k[j]).
  void (*min_plus_relax)(double* row_i, double d_ik, const double* row_k,
                         std::size_t n);
  // max_j num[j] / den[j]; den entries must be positive. 0 when n == 0.
  double (*max_ratio)(const double* num, const double* den, std::size_t n);
  double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
};

[[nodiscard]] bool isa_available(Isa isa) noexcept;
[[nodiscard]] const char* isa_name(Isa isa) noexcept;

// Table for a specific ISA; falls back to scalar if unavailable.
[[nodiscard]] const KernelTable& kernels_for(Isa isa) noexcept;

// Table selected at startup.
[[nodiscard]] const KernelTable& kernels() noexcept;

// Convenience wrappers over the active table.
inline double max_triangle_excess(std::span<const double> row_i,
                                  std::span<const double> row_k, double d_ik) {
  return kernels().max_triangle_excess(row_i.data(), row_k.data(), d_ik,
                                       row_i.size());
}

inline void min_plus_relax(std::span<double> row_i, double d_ik,
                           std::span<const double> row_k) {
  kernels().min_plus_relax(row_i.data(), d_ik, row_k.data(), row_i.size());
}

inline double max_ratio(std::span<const double> num,
                        std::span<const double> den) {
  return kernels().max_ratio(num.data(), den.data(), num.size());
}

inline double sum_abs_diff(std::span<const double> a,
                           std::span<const double> b) {
  return kernels().sum_abs_diff(a.data(), b.data(), a.size());
}

inline double sum_sq_diff(std::span<const double> a,
                          std::span<const double> b) {
  return kernels().sum_sq_diff(a.data(), b.data(), a.size());
}

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(LIPEXT_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace lipext::simd
