#include <doctest.h>

#include <cmath>

#include "hpmkit/reference_data.hpp"
#include "hpmkit/series_eval.hpp"

using namespace hpmkit;

namespace {

// eps_0..eps_20 for n = 1, l = 0, K = 2 straight from the embedded data.
std::vector<Rational> ground_coefficients() {
  std::vector<Rational> c{Rational(-2)};
  for (const auto& r : ReferenceData::embedded().coefficients()) c.push_back(r);
  return c;
}

std::vector<Rational> constant_series(int length, long value = 1) { return std::vector<Rational>(length, Rational(value)); }

}  // namespace

TEST_CASE("lambda_from_field examples") {
  CHECK(lambda_from_field({1.0L, 1.0L}) == 0.125L);
  CHECK(lambda_from_field({0.0L, 1.0L}) == 0.0L);
  CHECK(lambda_from_field({2.0L, 2.0L}) == 1.0L / 32.0L);
  CHECK_THROWS_AS(lambda_from_field({-1.0L, 1.0L}), Error);
  CHECK_THROWS_AS(lambda_from_field({1.0L, 0.0L}), Error);
}

TEST_CASE("zeeman_shift examples") {
  CHECK(zeeman_shift(0.125L, 1) == doctest::Approx(0.5));
  CHECK(zeeman_shift(0.125L, -1) == doctest::Approx(-0.5));
  CHECK(zeeman_shift(0.02L, 0) == 0.0L);
  CHECK_THROWS_AS(zeeman_shift(-1.0L, 1), Error);
}

TEST_CASE("partial_sum examples") {
  const auto c = ground_coefficients();
  for (int order = 0; order <= 20; ++order) CHECK(partial_sum(c, 0.0L, order) == -2.0L);
  CHECK(partial_sum(c, 0.1L, 1) == doctest::Approx(-1.9625).epsilon(1e-15));
  CHECK(partial_sum(c, 0.1L, 2) == doctest::Approx(-1.9625 - 159.0 / 1024.0 * 0.01).epsilon(1e-15));
  CHECK_THROWS_AS(partial_sum(c, 0.1L, 21), Error);
  CHECK(partial_sum_exact(c, Rational(1, 10), 2) == Rational(-2) + Rational(3, 80) - Rational(159, 102400));
}

TEST_CASE("optimal_truncation") {
  const auto c = ground_coefficients();
  // Frozen from a brute-force scan of |eps_p 0.1^p| etc. over the published values.
  const Truncation at_01 = optimal_truncation(c, 0.1L);
  CHECK(at_01.order == 6);
  CHECK(at_01.asymptotic_regime);
  CHECK(at_01.error_estimate == doctest::Approx(std::fabs(c[7].to_double()) * 1e-7).epsilon(1e-12));
  CHECK(optimal_truncation(c, 0.05L).order == 9);
  const Truncation tiny = optimal_truncation(c, 0.001L);
  CHECK(tiny.order == 19);
  CHECK_FALSE(tiny.asymptotic_regime);

  // |eps_p lambda^p| strictly growing from p = 1 selects p* = 0.
  const std::vector<Rational> growing{Rational(1), Rational(1), Rational(10), Rational(1000)};
  CHECK(optimal_truncation(growing, 1.0L).order == 0);
  // exact tie: smallest order wins
  CHECK(optimal_truncation(constant_series(5), 1.0L).order == 0);

  CHECK_THROWS_AS(optimal_truncation(c, 0.0L), Error);
  CHECK_THROWS_AS(optimal_truncation(constant_series(1), 0.1L), Error);
}

TEST_CASE("error estimate equals the next partial-sum increment") {
  const auto c = ground_coefficients();
  for (long double lambda : {0.2L, 0.1L, 0.05L, 0.01L}) {
    const Truncation t = optimal_truncation(c, lambda);
    const long double gap = std::fabs(partial_sum(c, lambda, t.order + 1) - partial_sum(c, lambda, t.order));
    CHECK(gap == doctest::Approx(static_cast<double>(t.error_estimate)).epsilon(1e-9));
  }
}

TEST_CASE("pade_eval examples") {
  const auto c = ground_coefficients();
  CHECK(pade_eval(c, 0.3L, 0, 0).value == -2.0L);
  const auto geometric = constant_series(4);
  const PadeValue g = pade_eval(geometric, 0.5L, 1, 1);
  CHECK(g.value == doctest::Approx(2.0));
  CHECK_FALSE(g.pole_nearby);
  REQUIRE(g.nearest_pole.has_value());
  CHECK(*g.nearest_pole == doctest::Approx(1.0));

  const PadeApproximant a = pade_approximant(geometric, 1, 1);
  CHECK(a.numerator == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(a.denominator == std::vector<Rational>{Rational(1), Rational(-1)});
}

TEST_CASE("[10/10] resummation sits inside the optimal-truncation band") {
  const auto c = ground_coefficients();
  const long double lambda = 0.05L;
  const Truncation t = optimal_truncation(c, lambda);
  const PadeValue p = pade_eval(c, lambda, 10, 10);
  CHECK_FALSE(p.pole_nearby);
  CHECK(std::fabs(p.value - partial_sum(c, lambda, t.order)) <= t.error_estimate);
}

TEST_CASE("[L/0] approximant is the partial sum") {
  const auto c = ground_coefficients();
  for (int L = 0; L <= 20; L += 4)
    for (long double lambda : {0.0L, 0.01L, 0.1L, 0.7L})
      CHECK(pade_eval(c, lambda, L, 0).value == doctest::Approx(static_cast<double>(partial_sum(c, lambda, L))).epsilon(1e-15));
}

TEST_CASE("pade errors and pole flag") {
  const std::vector<Rational> singular{Rational(1), Rational(0), Rational(1)};
  CHECK_THROWS_WITH_AS(pade_approximant(singular, 1, 1), doctest::Contains("singular"), Error);
  try {
    (void)pade_approximant(singular, 1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateApproximant);
  }
  CHECK_THROWS_AS(pade_approximant(constant_series(3), 2, 1), Error);

  const auto geometric = constant_series(3);
  const PadeValue near = pade_eval(geometric, 1.0L + 1e-9L, 0, 1);
  CHECK(near.pole_nearby);
  const PadeValue at = pade_eval(geometric, 1.0L, 0, 1);
  CHECK(at.pole_nearby);
  CHECK_FALSE(pade_eval(geometric, 0.9L, 0, 1).pole_nearby);
}

TEST_CASE("ratio_diagnostics") {
  const auto c = ground_coefficients();
  const std::vector<Rational> first_three(c.begin(), c.begin() + 4);
  const auto r3 = ratio_diagnostics(first_three);
  REQUIRE(r3.size() == 2);
  CHECK(*r3[0] == 0.4140625L);
  CHECK(*r3[1] == 1.765625L);

  const auto flat = ratio_diagnostics(constant_series(4));
  CHECK(flat.size() == 2);
  CHECK(*flat[0] == 1.0L);
  CHECK(*flat[1] == 1.0L);

  const auto all = ratio_diagnostics(c);
  REQUIRE(all.size() == 19);
  for (std::size_t k = 1; k + 1 < all.size(); ++k) CHECK(*all[k + 1] > *all[k]);

  const std::vector<Rational> with_zero{Rational(1), Rational(0), Rational(2)};
  const auto z = ratio_diagnostics(with_zero);
  CHECK_FALSE(z[0].has_value());
  CHECK_THROWS_AS(ratio_diagnostics(constant_series(2)), Error);
}
