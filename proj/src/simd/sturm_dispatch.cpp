#include <cstdlib>
#include <string_view>

#include "hpmkit/simd/sturm.hpp"

namespace hpmkit::simd {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(HPMKIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
  static const Isa chosen = [] {
    const char* forced = std::getenv("HPMKIT_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return Isa::Scalar;
    return detect_isa();
  }();
  return chosen;
}

void sturm_counts(Isa isa, const TridiagonalView& m, const Shifts& shifts, Counts& counts) {
#if defined(HPMKIT_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    sturm_counts_avx2(m, shifts, counts);
    return;
  }
#endif
  (void)isa;
  sturm_counts_scalar(m, shifts, counts);
}

}  // namespace hpmkit::simd
