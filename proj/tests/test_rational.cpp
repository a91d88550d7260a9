#include <doctest.h>

#include <random>

#include "hpmkit/rational.hpp"

using hpmkit::ArithOp;
using hpmkit::Error;
using hpmkit::ErrorCode;
using hpmkit::Rational;
using hpmkit::rational_arith;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 100000);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational_arith examples") {
  CHECK(rational_arith(Rational(1, 2), Rational(1, 3), ArithOp::Add).value() == Rational(5, 6));
  const Rational zero = rational_arith(Rational(3, 8), Rational(3, 8), ArithOp::Sub).value();
  CHECK(zero.str() == "0");
  CHECK(zero.denominator() == 1);
  CHECK(rational_arith(Rational(-159, 1024), Rational(1024), ArithOp::Mul).value().str() == "-159");
}

TEST_CASE("division by zero is an error value") {
  const auto r = rational_arith(Rational(1), Rational(0), ArithOp::Div);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().code() == ErrorCode::DivisionByZero);
  CHECK_THROWS_AS((void)(Rational(1) / Rational(0)), Error);
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS((void)Rational(0).reciprocal(), Error);
}

TEST_CASE("canonical form") {
  const Rational r(6, -4);
  CHECK(r.str() == "-3/2");
  CHECK(r.denominator() > 0);
  CHECK(Rational(0, 17).str() == "0");
  CHECK(Rational::parse("-0/5").str() == "0");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "/", "1/", "/2", "1.5", "a/b", "1//2", "--1", "1/-2"})
    CHECK_THROWS_AS(Rational::parse(bad), Error);
  CHECK_THROWS_WITH_AS(Rational::parse("3/0"), doctest::Contains("zero denominator"), Error);
}

TEST_CASE("from_decimal is exact") {
  CHECK(Rational::from_decimal("0.001") == Rational(1, 1000));
  CHECK(Rational::from_decimal("1e-3") == Rational(1, 1000));
  CHECK(Rational::from_decimal("-2.5E+2") == Rational(-250));
  CHECK(Rational::from_decimal("0.125") == Rational(1, 8));
  CHECK_THROWS_AS(Rational::from_decimal("1e"), Error);
  CHECK_THROWS_AS(Rational::from_decimal("x"), Error);
}

TEST_CASE("conversion to long double") {
  CHECK(Rational(3, 8).to_long_double() == 0.375L);
  CHECK(Rational(-159, 1024).to_long_double() == -159.0L / 1024.0L);
  const long double third = Rational(1, 3).to_long_double();
  CHECK(std::fabs(third - 1.0L / 3.0L) <= 2.0L * std::numeric_limits<long double>::epsilon());
  // ~1e64 / 4e40
  const Rational big = Rational::parse(
      "-2593203450314371618931792865686398116783507010792581025252777725/43556142965880123323311949751266331066368");
  CHECK(big.to_long_double() == doctest::Approx(-5.953703137455876e22).epsilon(1e-15));
  const Rational tiny = Rational(1) / Rational(10).pow(400);
  CHECK(tiny.to_long_double() == doctest::Approx(1e-400L).epsilon(1e-15));
}

TEST_CASE("field axioms hold exactly on random values") {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const Rational c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("serialization round-trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a = random_rational(rng) * random_rational(rng).pow(5);
    CHECK(Rational::parse(a.str()) == a);
  }
}
