#include <cmath>

#include "hpmkit/simd/sturm.hpp"

namespace hpmkit::simd {

void sturm_counts_scalar(const TridiagonalView& m, const Shifts& shifts, Counts& counts) {
  const std::size_t n = m.diag.size();
  for (int lane = 0; lane < kLanes; ++lane) {
    const double x = shifts[lane];
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = m.diag[i] - x;
      if (i > 0) t = t - m.offdiag_sq[i - 1] / q;
      if (std::fabs(t) < m.pivmin) t = -m.pivmin;
      count += t < 0.0 ? 1 : 0;
      q = t;
    }
    counts[lane] = count;
  }
}

}  // namespace hpmkit::simd
