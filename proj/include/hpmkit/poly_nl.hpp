#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hpmkit/rational.hpp"

namespace hpmkit {

struct Monomial {
  std::uint32_t n_exp = 0;
  std::uint32_t l_exp = 0;

  std::uint32_t degree() const { return n_exp + l_exp; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical monomial order: graded lexicographic, n before l. Higher total
/// degree comes first; within a degree the larger n exponent comes first.
bool monomial_precedes(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in the formal symbols n and l with rational
/// coefficients. Terms are kept sorted in the canonical order with no zero
/// coefficients and no repeated monomials, so structural equality is value
/// equality and serialization is deterministic.
class PolyNL {
 public:
  PolyNL() = default;
  PolyNL(Rational constant);  // NOLINT(implicit)
  PolyNL(long constant) : PolyNL(Rational(constant)) {}  // NOLINT(implicit)

  static PolyNL n();
  static PolyNL l();
  static PolyNL monomial(Rational coeff, std::uint32_t n_exp, std::uint32_t l_exp);
  /// Builds from arbitrary terms; combines duplicates and drops zeros.
  static PolyNL from_terms(std::vector<Term> terms);

  /// Accepts the serialized form ("c*n^a*l^b" sums) and, more generally,
  /// products of rational literals, n, l and parenthesised sub-expressions
  /// with non-negative integer powers.
  static PolyNL parse(std::string_view text);
  std::string str() const;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t degree_n() const;
  std::uint32_t degree_l() const;
  /// Coefficient of n^a l^b (zero when absent).
  Rational coefficient(std::uint32_t n_exp, std::uint32_t l_exp) const;

  Rational evaluate(const Rational& n_val, const Rational& l_val) const;

  PolyNL operator-() const;
  PolyNL& operator+=(const PolyNL& rhs);
  PolyNL& operator-=(const PolyNL& rhs);
  PolyNL& operator*=(const PolyNL& rhs);
  PolyNL& operator*=(const Rational& scalar);

  friend PolyNL operator+(PolyNL a, const PolyNL& b) { return a += b; }
  friend PolyNL operator-(PolyNL a, const PolyNL& b) { return a -= b; }
  friend PolyNL operator*(const PolyNL& a, const PolyNL& b);
  friend PolyNL operator*(PolyNL a, const Rational& s) { return a *= s; }
  friend PolyNL operator*(const Rational& s, PolyNL a) { return a *= s; }

  PolyNL pow(unsigned exponent) const;

  friend bool operator==(const PolyNL&, const PolyNL&) = default;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const PolyNL& p);

enum class PolyOp { Add, Sub, Mul };
PolyNL poly_arith(const PolyNL& p, const PolyNL& q, PolyOp op);
Rational poly_eval(const PolyNL& p, const Rational& n_val, const Rational& l_val);

}  // namespace hpmkit
