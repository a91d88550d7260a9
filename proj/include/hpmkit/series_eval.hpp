#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hpmkit/hpm.hpp"
#include "hpmkit/rational.hpp"

namespace hpmkit {

/// Field strength in units of B0 = hbar/(e a0) and nuclear charge Z.
struct FieldSpec {
  long double B_over_B0 = 0.0L;
  long double Z = 1.0L;

  void validate() const;
};

/// lambda = (B/B0)^2 / (8 Z^4).
long double lambda_from_field(const FieldSpec& field);

/// sqrt(2 lambda) m_l, the term separating eps from the total energy.
long double zeeman_shift(long double lambda, int m_l);

/// sum_{p=0}^{order} eps_p lambda^p. Throws Error(OutOfRange) if order > P.
long double partial_sum(std::span<const Rational> coeffs, long double lambda, int order);
long double partial_sum(const PerturbationSeries& series, long double lambda, int order);

/// Same sum in exact arithmetic for a rational lambda.
Rational partial_sum_exact(std::span<const Rational> coeffs, const Rational& lambda, int order);

struct Truncation {
  int order = 0;
  long double error_estimate = 0.0L;  // |eps_{order+1} lambda^{order+1}|
  // False when the smallest term sits at the last available order, i.e. the
  // terms were still shrinking and more orders would be needed.
  bool asymptotic_regime = true;
};

/// Order p* minimising |eps_{p+1} lambda^{p+1}| over p+1 <= P, smallest
/// order on ties.
Truncation optimal_truncation(std::span<const Rational> coeffs, long double lambda);
Truncation optimal_truncation(const PerturbationSeries& series, long double lambda);

struct PadeApproximant {
  std::vector<Rational> numerator;    // a_0..a_L
  std::vector<Rational> denominator;  // b_0 = 1, b_1..b_M
};

/// [L/M] approximant from exact coefficients; the denominator system is
/// solved in rational arithmetic. Throws Error(DegenerateApproximant) when
/// the system is singular, Error(OutOfRange) when L + M > P.
PadeApproximant pade_approximant(std::span<const Rational> coeffs, int L, int M);

struct PadeValue {
  long double value = 0.0L;
  bool pole_nearby = false;
  std::optional<long double> nearest_pole;
};

/// Pole flag: a real root r of the denominator with |lambda - r| below
/// 1e-6 max(1, lambda).
PadeValue pade_eval(std::span<const Rational> coeffs, long double lambda, int L, int M);
PadeValue pade_eval(const PerturbationSeries& series, long double lambda, int L, int M);

/// |eps_{p+1}/eps_p| for p = 1..P-1; nullopt where eps_p = 0.
std::vector<std::optional<long double>> ratio_diagnostics(std::span<const Rational> coeffs);
std::vector<std::optional<long double>> ratio_diagnostics(const PerturbationSeries& series);

}  // namespace hpmkit
