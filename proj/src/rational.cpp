#include "hpmkit/rational.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <ostream>

namespace hpmkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::DivisionByZero, "Rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorCode::ParseError, "malformed rational: '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

Rational Rational::from_decimal(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "malformed decimal: '" + std::string(text) + "'"); };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }
  std::string digits;
  if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = body.substr(dot + 1);
    digits = std::string(body.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(body);
  }
  if (!all_digits(digits)) throw fail();
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(mpq_class(mantissa * scale));
  return Rational(mpq_class(mantissa, scale));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), value_.get_mpq_t());
  return Rational(std::move(r));
}

long double Rational::to_long_double() const {
  if (is_zero()) return 0.0L;
  mpz_class num = ::abs(value_.get_num());
  const mpz_class& den = value_.get_den();
  const long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // Quotient scaled to carry at least 66 significant bits.
  const long shift = 66 - (nb - db);
  mpz_class q;
  if (shift >= 0) {
    mpz_class scaled = num << static_cast<mp_bitcnt_t>(shift);
    mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_class scaled = den << static_cast<mp_bitcnt_t>(-shift);
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  long exponent = -shift;
  const long qb = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  if (qb > 64) {
    q >>= static_cast<mp_bitcnt_t>(qb - 64);
    exponent += qb - 64;
  }
  static_assert(sizeof(unsigned long) * CHAR_BIT >= 64);
  const unsigned long mantissa = mpz_get_ui(q.get_mpz_t());
  const long double magnitude = std::ldexp(static_cast<long double>(mantissa), static_cast<int>(exponent));
  return sign() < 0 ? -magnitude : magnitude;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::pow(unsigned exponent) const {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Checked<Rational> rational_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div:
      if (b.is_zero()) return Error(ErrorCode::DivisionByZero, "division by zero");
      return a / b;
  }
  return Error(ErrorCode::InvalidArgument, "unknown arithmetic operation");
}

}  // namespace hpmkit
