#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/mpfr.hpp>

#include "hpmkit/error.hpp"
#include "hpmkit/oracle.hpp"

namespace hpmkit::detail {

// ~150 significant decimal digits: the monomial Slater basis is badly
// conditioned (overlap condition numbers grow geometrically with M).
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<150>,
                                           boost::multiprecision::et_off>;

}  // namespace hpmkit::detail

// Boost's own Eigen glue predates Eigen 3.4 (no infinity/quiet_NaN), so the
// traits come from GenericNumTraits over std::numeric_limits instead.
template <>
struct Eigen::NumTraits<hpmkit::detail::MpReal> : Eigen::GenericNumTraits<hpmkit::detail::MpReal> {
  enum { IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1, ReadCost = 8, AddCost = 16, MulCost = 32 };
  static hpmkit::detail::MpReal dummy_precision() { return hpmkit::detail::MpReal("1e-140"); }
};

namespace hpmkit {
namespace {

using Real = detail::MpReal;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

Real to_real(const Rational& r) {
  Real x;
  mpfr_set_q(x.backend().data(), r.raw().get_mpq_t(), MPFR_RNDN);
  return x;
}

Rational to_rational(const Real& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.backend().data());
  return Rational(std::move(q));
}

// int_0^inf q^a e^{-2 kappa q} dq = a! / (2 kappa)^{a+1}
class MomentTable {
 public:
  MomentTable(const Rational& kappa, int max_power) {
    const Rational two_kappa = kappa * Rational(2);
    const Rational step = two_kappa.reciprocal();
    Rational value = step;  // a = 0
    moments_.push_back(value);
    for (int a = 1; a <= max_power; ++a) {
      value *= Rational(a) * step;
      moments_.push_back(value);
    }
  }
  const Rational& operator()(int a) const { return moments_.at(static_cast<std::size_t>(a)); }

 private:
  std::vector<Rational> moments_;
};

Real lowest_eigenvalues(const Rational& lambda, int l, int n_r, int K, int basis_size) {
  const int n = n_r + l + 1;
  const Rational kappa(2, 2 * n - 1);
  const int M = basis_size;
  const MomentTable I(kappa, 2 * (M - 1 + l) + K + 2);
  const Rational half(1, 2);
  const Rational l2_half(static_cast<long>(l) * l, 2);

  Matrix S(M, M);
  Matrix H(M, M);
  for (int j = 0; j < M; ++j) {
    for (int k = j; k < M; ++k) {
      const int sj = j + l;
      const int sk = k + l;
      const int a = sj + sk;
      // f = q^s e^{-kappa q},  f' = (s q^{s-1} - kappa q^s) e^{-kappa q}, measure q dq
      Rational kinetic = kappa * kappa * I(a + 1) - kappa * Rational(sj + sk) * I(a);
      if (sj * sk != 0) kinetic += Rational(static_cast<long>(sj) * sk) * I(a - 1);
      Rational h = half * kinetic - I(a) + lambda * I(a + K + 1);
      if (l > 0) h += l2_half * I(a - 1);
      S(j, k) = S(k, j) = to_real(I(a + 1));
      H(j, k) = H(k, j) = to_real(h);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(H, S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NodeCountNotFound, "Ritz eigensolver did not converge");
  if (n_r >= M) throw Error(ErrorCode::NodeCountNotFound, "Ritz basis too small for the requested state");
  return solver.eigenvalues()(n_r);
}

}  // namespace

RitzResult solve_radial_ritz(const Rational& lambda, int l, int n_r, int K, int basis_size) {
  if (lambda.sign() < 0) throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
  if (l < 0 || n_r < 0) throw Error(ErrorCode::InvalidArgument, "quantum numbers must be non-negative");
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
  if (basis_size < n_r + 10) throw Error(ErrorCode::InvalidArgument, "Ritz basis must exceed n_r + 10 functions");

  const Real fine = lowest_eigenvalues(lambda, l, n_r, K, basis_size);
  const Real coarse = lowest_eigenvalues(lambda, l, n_r, K, basis_size - 8);
  RitzResult out;
  out.epsilon = to_rational(fine);
  out.error_estimate = (to_rational(coarse) - out.epsilon).abs().to_long_double();
  out.basis_size = basis_size;
  return out;
}

}  // namespace hpmkit
