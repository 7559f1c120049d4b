#include <cstdlib>
#include <string_view>

#include "lipext/simd/kernels.hpp"

namespace lipext::simd {

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(LIPEXT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) noexcept {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& kernels_for(Isa isa) noexcept {
#if defined(LIPEXT_HAVE_AVX2)
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) {
    return detail::avx2_table();
  }
#endif
  (void)isa;
  return detail::scalar_table();
}

namespace {

Isa select_isa() noexcept {
  if (const char* env = std::getenv("LIPEXT_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::kScalar;
  }
  return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

const KernelTable& kernels() noexcept {
  static const KernelTable& table = kernels_for(select_isa());
  return table;
}

}  // namespace lipext::simd
