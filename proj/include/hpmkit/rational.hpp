#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "hpmkit/error.hpp"

namespace hpmkit {

/// Exact rational number in canonical form: the denominator is positive,
/// numerator and denominator are coprime, and zero is 0/1.
///
/// Every arithmetic operation renormalises eagerly, so values never carry
/// common factors between steps of a long recurrence.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(implicit)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "-p" or "p/q". The result is canonicalised, so "6/4"
  /// yields 3/2. Throws Error(ParseError) on malformed input and
  /// Error(DivisionByZero) when q is zero.
  static Rational parse(std::string_view text);
  /// Exact value of a decimal literal such as "0.001", "1e-3" or "-2.5E+2".
  static Rational from_decimal(std::string_view text);

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  std::string numerator_str() const { return value_.get_num().get_str(); }
  std::string denominator_str() const { return value_.get_den().get_str(); }
  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;
  Rational reciprocal() const;

  /// Nearest representable long double (truncated to the 64-bit mantissa).
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(unsigned exponent) const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

enum class ArithOp { Add, Sub, Mul, Div };

/// Result of a checked operation: either a value or the error that
/// prevented it. Used where callers prefer not to deal with exceptions.
template <class T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}  // NOLINT(implicit)
  Checked(Error error) : state_(std::move(error)) {}  // NOLINT(implicit)

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }
  const T& value() const {
    if (!ok()) throw std::get<Error>(state_);
    return std::get<T>(state_);
  }
  const Error& error() const { return std::get<Error>(state_); }

 private:
  std::variant<T, Error> state_;
};

Checked<Rational> rational_arith(const Rational& a, const Rational& b, ArithOp op);

}  // namespace hpmkit
