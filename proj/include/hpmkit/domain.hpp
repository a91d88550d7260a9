#pragma once

#include <concepts>

#include "hpmkit/poly_nl.hpp"
#include "hpmkit/rational.hpp"

namespace hpmkit {

// The recurrence engine is written once against this contract. A domain
// fixes the scalar type and supplies the two problem constants: the
// centrifugal parameter xi and the reciprocal 1/eps0 of the unperturbed
// energy. 1/eps0 = -(2n-1)^2/2 is a polynomial in n, which keeps the
// symbolic domain closed under the recurrence.
template <class D>
concept CoefficientDomain = requires(const D& d, const typename D::Value& a, const typename D::Value& b,
                                     const Rational& r) {
  typename D::Value;
  { d.zero() } -> std::convertible_to<typename D::Value>;
  { d.one() } -> std::convertible_to<typename D::Value>;
  { d.embed(r) } -> std::convertible_to<typename D::Value>;
  { d.xi() } -> std::convertible_to<typename D::Value>;
  { d.inv_epsilon_zero() } -> std::convertible_to<typename D::Value>;
  { a + b } -> std::convertible_to<typename D::Value>;
  { a - b } -> std::convertible_to<typename D::Value>;
  { -a } -> std::convertible_to<typename D::Value>;
  { a * b } -> std::convertible_to<typename D::Value>;
  { a * r } -> std::convertible_to<typename D::Value>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

/// Numeric mode: fixed quantum numbers, every quantity is a Rational.
class RationalDomain {
 public:
  using Value = Rational;

  /// n = n_r + l + 1.
  RationalDomain(long n, long l);

  Value zero() const { return Rational(0); }
  Value one() const { return Rational(1); }
  Value embed(const Rational& r) const { return r; }
  const Value& xi() const { return xi_; }
  const Value& inv_epsilon_zero() const { return inv_eps0_; }

 private:
  Rational xi_;
  Rational inv_eps0_;
};

/// Symbolic mode: coefficients are polynomials in the formal symbols n, l.
class PolyDomain {
 public:
  using Value = PolyNL;

  PolyDomain();

  Value zero() const { return PolyNL(); }
  Value one() const { return PolyNL(Rational(1)); }
  Value embed(const Rational& r) const { return PolyNL(r); }
  const Value& xi() const { return xi_; }
  const Value& inv_epsilon_zero() const { return inv_eps0_; }

 private:
  PolyNL xi_;
  PolyNL inv_eps0_;
};

static_assert(CoefficientDomain<RationalDomain>);
static_assert(CoefficientDomain<PolyDomain>);

}  // namespace hpmkit
