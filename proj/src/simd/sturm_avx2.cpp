// Compiled with -mavx2 only; reached through runtime dispatch.
#include <immintrin.h>

#include "hpmkit/simd/sturm.hpp"

namespace hpmkit::simd {

void sturm_counts_avx2(const TridiagonalView& m, const Shifts& shifts, Counts& counts) {
  const std::size_t n = m.diag.size();
  const __m256d x = _mm256_loadu_pd(shifts.data());
  const __m256d pivmin = _mm256_set1_pd(m.pivmin);
  const __m256d neg_pivmin = _mm256_set1_pd(-m.pivmin);
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256i count = _mm256_setzero_si256();
  __m256d q = _mm256_set1_pd(1.0);

  for (std::size_t i = 0; i < n; ++i) {
    __m256d t = _mm256_sub_pd(_mm256_set1_pd(m.diag[i]), x);
    if (i > 0) t = _mm256_sub_pd(t, _mm256_div_pd(_mm256_set1_pd(m.offdiag_sq[i - 1]), q));
    const __m256d tiny = _mm256_cmp_pd(_mm256_andnot_pd(sign_bit, t), pivmin, _CMP_LT_OQ);
    t = _mm256_blendv_pd(t, neg_pivmin, tiny);
    // all-ones lanes are -1 as int64
    count = _mm256_sub_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(t, zero, _CMP_LT_OQ)));
    q = t;
  }

  alignas(32) long long lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
  for (int k = 0; k < kLanes; ++k) counts[k] = static_cast<int>(lanes[k]);
}

}  // namespace hpmkit::simd
