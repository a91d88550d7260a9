#pragma once

// Sturm-sequence eigenvalue counts for a symmetric tridiagonal matrix,
// evaluated at four shifts at once. The scalar kernel is the reference;
// vector kernels must return identical counts (same operation order, no
// contraction), which the equivalence tests check.

#include <array>
#include <span>

namespace hpmkit::simd {

inline constexpr int kLanes = 4;

using Shifts = std::array<double, kLanes>;
using Counts = std::array<int, kLanes>;

struct TridiagonalView {
  std::span<const double> diag;        // d_0 .. d_{N-1}
  std::span<const double> offdiag_sq;  // e_0^2 .. e_{N-2}^2
  double pivmin = 0.0;                 // |pivot| floor, replaces exact zeros
};

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

/// Best kernel the running CPU supports.
Isa detect_isa();
/// Kernel used by sturm_counts: detect_isa() unless HPMKIT_SIMD=scalar.
Isa active_isa();
bool isa_available(Isa isa);

/// Number of eigenvalues strictly below each shift.
void sturm_counts_scalar(const TridiagonalView& m, const Shifts& shifts, Counts& counts);
#if defined(HPMKIT_HAVE_AVX2)
void sturm_counts_avx2(const TridiagonalView& m, const Shifts& shifts, Counts& counts);
#endif

void sturm_counts(Isa isa, const TridiagonalView& m, const Shifts& shifts, Counts& counts);
inline void sturm_counts(const TridiagonalView& m, const Shifts& shifts, Counts& counts) {
  sturm_counts(active_isa(), m, shifts, counts);
}

}  // namespace hpmkit::simd
