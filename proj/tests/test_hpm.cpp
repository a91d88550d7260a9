#include <doctest.h>

#include "hpmkit/hpm.hpp"
#include "hpmkit/reference_data.hpp"

using namespace hpmkit;

namespace {

// <q^j> in the unperturbed nodeless state (n_r = 0) from the closed-form
// density P^2 = q^{2l+1} e^{-2 kappa q}, kappa = 2/(2l+1):
//   <q^j> = Gamma(2l+2+j) / (Gamma(2l+2) (2 kappa)^j)
Rational nodeless_moment(int l, int j) {
  const Rational two_kappa(4, 2 * l + 1);
  Rational ratio(1);
  if (j >= 0) {
    for (int k = 0; k < j; ++k) ratio *= Rational(2 * l + 2 + k);
  } else {
    for (int k = -1; k >= j; --k) ratio /= Rational(2 * l + 2 + k);
  }
  return ratio / (j >= 0 ? two_kappa.pow(static_cast<unsigned>(j)) : two_kappa.pow(static_cast<unsigned>(-j)).reciprocal());
}

}  // namespace

TEST_CASE("epsilon_zero examples") {
  CHECK(epsilon_zero(StateSpec(0, 0)) == Rational(-2));
  CHECK(epsilon_zero(StateSpec(1, 0)) == Rational(-2, 9));
  CHECK(epsilon_zero(StateSpec(0, 1)) == Rational(-2, 9));
}

TEST_CASE("state and problem validation") {
  CHECK_THROWS_AS(StateSpec(-1, 0), Error);
  CHECK_THROWS_AS(StateSpec(0, 1, 0), Error);
  CHECK_NOTHROW(StateSpec(0, 2, -2));
  CHECK(StateSpec(0, 0).xi() == Rational(-1, 4));
  CHECK(StateSpec::from_n_l(3, 2) == StateSpec(0, 2));
  CHECK_THROWS_AS(StateSpec::from_n_l(2, 2), Error);
  CHECK_THROWS_AS(compute_series(StateSpec(0, 0), ProblemSpec{0, 3}), Error);
  CHECK_THROWS_AS(compute_series(StateSpec(0, 0), ProblemSpec{2, -1}), Error);
}

TEST_CASE("compute_series reproduces the published low orders") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 3});
  const std::vector<Rational> expected{Rational(-2), Rational(3, 8), Rational(-159, 1024), Rational(17967, 65536)};
  CHECK(run.series.coefficients == expected);
  CHECK(run.series.order() == 3);
}

TEST_CASE("compute_series order 20") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 20});
  CHECK(run.series.coefficients[20].str() ==
        "-2593203450314371618931792865686398116783507010792581025252777725/"
        "43556142965880123323311949751266331066368");
  const auto reference = ReferenceData::embedded().coefficients();
  for (int p = 1; p <= 20; ++p) CHECK(run.series.coefficients[p] == reference[p - 1]);
}

TEST_CASE("order-zero table matches the closed-form unperturbed moments") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 1});
  CHECK(run.raw.table.at(1, 0) == Rational(1, 2));
  for (int l = 0; l <= 3; ++l) {
    for (int K : {1, 2, 3}) {
      const NumericRun r = compute_series(StateSpec(0, l), ProblemSpec{K, 3});
      for (int j = -1; j <= r.raw.table.j_max(0); ++j) CHECK(r.raw.table.at(j, 0) == nodeless_moment(l, j));
      // first-order Hellmann-Feynman: eps_1 = <q^K>_0
      CHECK(r.series.coefficients[1] == nodeless_moment(l, K));
    }
  }
}

TEST_CASE("table extent and bookkeeping") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 5});
  const auto& Q = run.raw.table;
  for (int i = 0; i < 5; ++i) {
    CHECK(Q.j_max(i) == 2 * (5 - i));
    CHECK(Q.contains(Q.j_max(i), i));
    CHECK_FALSE(Q.contains(Q.j_max(i) + 1, i));
    CHECK(Q.at(0, i) == Rational(i == 0 ? 1 : 0));
  }
  CHECK_FALSE(Q.contains(-2, 0));
  CHECK_FALSE(Q.contains(0, 5));
  CHECK_THROWS_AS(Q.at(0, 5), Error);

  QTable<Rational> t(1, 2);
  t.set(1, 0, Rational(1));
  CHECK_THROWS_AS(t.set(1, 0, Rational(2)), Error);
  CHECK_THROWS_AS(t.set(-2, 0, Rational(2)), Error);
}

TEST_CASE("Hellmann-Feynman identity i eps_i = Q_{K,i-1}") {
  for (int K : {1, 2, 3}) {
    const NumericRun run = compute_series(StateSpec(1, 2), ProblemSpec{K, 10});
    for (int i = 1; i <= 10; ++i)
      CHECK(Rational(i) * run.series.coefficients[i] == run.raw.table.at(K, i - 1));
  }
}

TEST_CASE("hypervirial_residual examples") {
  const NumericRun ground = compute_series(StateSpec(0, 0), ProblemSpec{2, 6});
  CHECK(hypervirial_residual(ground, 1, 0).is_zero());
  CHECK(hypervirial_residual(ground, 3, 2).is_zero());
  const NumericRun excited = compute_series(StateSpec(1, 2), ProblemSpec{1, 10});
  CHECK(hypervirial_residual(excited, 4, 3).is_zero());
}

TEST_CASE("residual identity across the computed range") {
  for (int K : {1, 2, 3}) {
    for (const auto& [n_r, l] : std::vector<std::pair<int, int>>{{0, 0}, {2, 0}, {1, 1}, {0, 3}}) {
      const int P = 8;
      const NumericRun run = compute_series(StateSpec(n_r, l), ProblemSpec{K, P});
      const auto& Q = run.raw.table;
      for (int i = 0; i < P; ++i)
        for (int j = 1; j <= Q.j_max(i) + 1; ++j) {
          // entries needed: Q_{j-1,i} and Q_{j+K-1,i-1}
          if (i >= 1 && j + K - 1 > Q.j_max(i - 1)) continue;
          CHECK(hypervirial_residual(run, j, i).is_zero());
        }
    }
  }
}

TEST_CASE("residual reports missing table entries") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 2});
  CHECK_THROWS_AS(hypervirial_residual(run, 9, 1), Error);
  CHECK_THROWS_AS(hypervirial_residual(run, 1, 4), Error);
  CHECK_THROWS_AS(hypervirial_residual(run, 0, 0), Error);
}

TEST_CASE("a corrupted table entry is caught by the residual") {
  NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 4});
  // Rebuild the table with one perturbed entry.
  QTable<Rational> tampered(2, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = -1; j <= run.raw.table.j_max(i); ++j) {
      Rational v = run.raw.table.at(j, i);
      if (j == 3 && i == 1) v += Rational(1, 1000);
      tampered.set(j, i, v);
    }
  run.raw.table = tampered;
  CHECK_FALSE(hypervirial_residual(run, 4, 1).is_zero());
}

TEST_CASE("degenerate states share eps0 but not eps1") {
  const NumericRun a = compute_series(StateSpec(1, 0), ProblemSpec{2, 1});
  const NumericRun b = compute_series(StateSpec(0, 1), ProblemSpec{2, 1});
  CHECK(a.series.coefficients[0] == b.series.coefficients[0]);
  CHECK(a.series.coefficients[1] != b.series.coefficients[1]);
}

TEST_CASE("sign alternation on the ground state") {
  const NumericRun run = compute_series(StateSpec(0, 0), ProblemSpec{2, 20});
  for (int p = 1; p <= 20; ++p) CHECK(run.series.coefficients[p].sign() == (p % 2 == 1 ? 1 : -1));
}

TEST_CASE("deterministic serialization") {
  auto serialize = [] {
    std::string out;
    for (const auto& c : compute_series(StateSpec(2, 1), ProblemSpec{1, 15}).series.coefficients) out += c.str() + ";";
    for (const auto& c : compute_series_symbolic(ProblemSpec{2, 3}).series.corrections) out += c.str() + ";";
    return out;
  };
  CHECK(serialize() == serialize());
}

TEST_CASE("symbolic series matches the factored displays") {
  const SymbolicRun run = compute_series_symbolic(ProblemSpec{2, 4});
  REQUIRE(run.series.corrections.size() == 4);
  CHECK(run.series.correction(1) == PolyNL::parse("1/8*(2*n-1)^2*(-3*l^2+3+5*n^2-5*n)"));
  CHECK(run.series.correction(1).coefficient(4, 0) == Rational(5, 2));
  const auto reference = ReferenceData::embedded().symbolic_eps();
  for (int p = 1; p <= 4; ++p) CHECK(run.series.correction(p) == reference[p - 1]);
  CHECK(run.series.correction(4).degree_l() == 8);
}

TEST_CASE("symbolic P = 0 has no polynomial coefficients") {
  const SymbolicRun run = compute_series_symbolic(ProblemSpec{2, 0});
  CHECK(run.series.corrections.empty());
  const auto& e0 = run.series.epsilon0;
  for (int n = 1; n <= 5; ++n)
    CHECK(poly_eval(e0.numerator, Rational(n), Rational(0)) / poly_eval(e0.denominator, Rational(n), Rational(0)) ==
          epsilon_zero(StateSpec(n - 1, 0)));
}

TEST_CASE("symbolic and numeric modes agree exactly") {
  for (int K : {1, 2}) {
    const SymbolicRun sym = compute_series_symbolic(ProblemSpec{K, 6});
    for (const auto& [n_r, l] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 3}}) {
      const StateSpec s(n_r, l);
      const NumericRun num = compute_series(s, ProblemSpec{K, 6});
      for (int p = 1; p <= 6; ++p)
        CHECK(poly_eval(sym.series.correction(p), Rational(s.n()), Rational(l)) == num.series.coefficients[p]);
    }
  }
}

TEST_CASE("symbolic residuals vanish") {
  const SymbolicRun run = compute_series_symbolic(ProblemSpec{2, 4});
  for (int i = 0; i <= 2; ++i)
    for (int j = 1; j <= 5; ++j) CHECK(hypervirial_residual(run, j, i).is_zero());
  CHECK_THROWS_AS(run.raw.table.at(-1, 0), Error);
}
