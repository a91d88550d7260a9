#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hpmkit/simd/sturm.hpp"

using namespace hpmkit::simd;

namespace {

struct RandomTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> off_sq;

  RandomTridiagonal(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < n; ++i) diag.push_back(u(rng));
    for (int i = 0; i + 1 < n; ++i) {
      off.push_back(u(rng));
      off_sq.push_back(off.back() * off.back());
    }
  }
  TridiagonalView view() const { return {diag, off_sq, 1e-300}; }

  std::vector<double> eigenvalues() const {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXd d(n);
    Eigen::VectorXd e(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) d[i] = diag[i];
    for (int i = 0; i + 1 < n; ++i) e[i] = off[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(out.begin(), out.end());
    return out;
  }
};

Shifts random_shifts(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("isa names and dispatch") {
  CHECK(std::string(isa_name(Isa::Scalar)) == "scalar");
  CHECK(std::string(isa_name(Isa::Avx2)) == "avx2");
  CHECK(isa_available(Isa::Scalar));
  CHECK(isa_available(detect_isa()));
}

TEST_CASE("HPMKIT_SIMD selects the kernel") {
  const char* forced = std::getenv("HPMKIT_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar")
    CHECK(active_isa() == Isa::Scalar);
  else
    CHECK(active_isa() == detect_isa());
}

TEST_CASE("scalar counts match a dense eigensolver") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const RandomTridiagonal m(rng, 1 + trial % 37);
    const auto eig = m.eigenvalues();
    const Shifts x = random_shifts(rng);
    Counts c{};
    sturm_counts_scalar(m.view(), x, c);
    for (int lane = 0; lane < kLanes; ++lane) {
      const auto expected = std::lower_bound(eig.begin(), eig.end(), x[lane]) - eig.begin();
      // shifts within rounding of an eigenvalue may legitimately differ by one
      const bool near = std::any_of(eig.begin(), eig.end(), [&](double v) { return std::fabs(v - x[lane]) < 1e-9; });
      if (!near) CHECK(c[lane] == expected);
    }
  }
}

TEST_CASE("scalar counts on a known spectrum") {
  // 1D Laplacian tridiag(-1, 2, -1): eigenvalues 2 - 2 cos(k pi/(n+1)).
  const int n = 50;
  std::vector<double> d(n, 2.0), e2(n - 1, 1.0);
  const TridiagonalView v{d, e2, 1e-300};
  Counts c{};
  sturm_counts_scalar(v, {-0.1, 2.0 - 1e-9, 2.0 + 1e-9, 4.1}, c);
  CHECK(c[0] == 0);
  CHECK(c[1] == 25);
  CHECK(c[2] == 25);
  CHECK(c[3] == n);
}

#if defined(HPMKIT_HAVE_AVX2)
TEST_CASE("AVX2 kernel returns identical counts") {
  if (!isa_available(Isa::Avx2)) return;
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 2000; ++trial) {
    const RandomTridiagonal m(rng, 1 + trial % 101);
    const Shifts x = random_shifts(rng);
    Counts a{}, b{};
    sturm_counts_scalar(m.view(), x, a);
    sturm_counts_avx2(m.view(), x, b);
    CHECK(a == b);
  }
  // zero pivots: pivmin replacement must match lane by lane
  std::vector<double> d{0.0, 0.0, 1.0, 0.0}, e2{0.0, 1.0, 0.0};
  const TridiagonalView v{d, e2, 1e-12};
  Counts a{}, b{};
  sturm_counts_scalar(v, {0.0, 1.0, -1.0, 0.5}, a);
  sturm_counts_avx2(v, {0.0, 1.0, -1.0, 0.5}, b);
  CHECK(a == b);
  sturm_counts(Isa::Avx2, v, {0.0, 1.0, -1.0, 0.5}, b);
  CHECK(a == b);
}
#endif
