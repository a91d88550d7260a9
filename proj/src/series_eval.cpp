#include "hpmkit/series_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hpmkit {

void FieldSpec::validate() const {
  if (!(B_over_B0 >= 0.0L)) throw Error(ErrorCode::InvalidArgument, "B/B0 must be non-negative");
  if (!(Z > 0.0L)) throw Error(ErrorCode::InvalidArgument, "Z must be positive");
}

long double lambda_from_field(const FieldSpec& field) {
  field.validate();
  const long double z2 = field.Z * field.Z;
  return field.B_over_B0 * field.B_over_B0 / (8.0L * z2 * z2);
}

long double zeeman_shift(long double lambda, int m_l) {
  if (!(lambda >= 0.0L)) throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
  return std::sqrt(2.0L * lambda) * static_cast<long double>(m_l);
}

long double partial_sum(std::span<const Rational> coeffs, long double lambda, int order) {
  if (order < 0 || order >= static_cast<int>(coeffs.size()))
    throw Error(ErrorCode::OutOfRange, "partial sum order " + std::to_string(order) + " exceeds the series order " +
                                           std::to_string(static_cast<int>(coeffs.size()) - 1));
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int p = 0; p <= order; ++p) {
    sum += coeffs[p].to_long_double() * power;
    power *= lambda;
  }
  return sum;
}

long double partial_sum(const PerturbationSeries& series, long double lambda, int order) {
  return partial_sum(series.coefficients, lambda, order);
}

Rational partial_sum_exact(std::span<const Rational> coeffs, const Rational& lambda, int order) {
  if (order < 0 || order >= static_cast<int>(coeffs.size()))
    throw Error(ErrorCode::OutOfRange, "partial sum order " + std::to_string(order) + " exceeds the series order");
  Rational sum;
  for (int p = order; p >= 0; --p) sum = sum * lambda + coeffs[p];
  return sum;
}

Truncation optimal_truncation(std::span<const Rational> coeffs, long double lambda) {
  const int P = static_cast<int>(coeffs.size()) - 1;
  if (P < 1) throw Error(ErrorCode::InvalidArgument, "optimal truncation needs P >= 1");
  if (!(lambda > 0.0L)) throw Error(ErrorCode::InvalidArgument, "optimal truncation needs lambda > 0");

  Truncation best;
  long double power = lambda;
  for (int p = 0; p + 1 <= P; ++p) {
    const long double term = std::fabs(coeffs[p + 1].to_long_double()) * power;
    if (p == 0 || term < best.error_estimate) {
      best.order = p;
      best.error_estimate = term;
    }
    power *= lambda;
  }
  best.asymptotic_regime = best.order < P - 1;
  return best;
}

Truncation optimal_truncation(const PerturbationSeries& series, long double lambda) {
  return optimal_truncation(series.coefficients, lambda);
}

PadeApproximant pade_approximant(std::span<const Rational> coeffs, int L, int M) {
  if (L < 0 || M < 0) throw Error(ErrorCode::InvalidArgument, "Pade orders must be non-negative");
  if (L + M >= static_cast<int>(coeffs.size()))
    throw Error(ErrorCode::OutOfRange, "Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                           "] needs more coefficients than the series holds");
  auto c = [&](int k) { return k < 0 ? Rational(0) : coeffs[k]; };

  // sum_{k=1}^{M} b_k c_{L+j-k} = -c_{L+j},  j = 1..M
  std::vector<std::vector<Rational>> a(M, std::vector<Rational>(M + 1));
  for (int j = 1; j <= M; ++j) {
    for (int k = 1; k <= M; ++k) a[j - 1][k - 1] = c(L + j - k);
    a[j - 1][M] = -c(L + j);
  }
  for (int col = 0; col < M; ++col) {
    int pivot = col;
    while (pivot < M && a[pivot][col].is_zero()) ++pivot;
    if (pivot == M)
      throw Error(ErrorCode::DegenerateApproximant,
                  "Pade [" + std::to_string(L) + "/" + std::to_string(M) + "] denominator system is singular");
    std::swap(a[col], a[pivot]);
    const Rational inv = a[col][col].reciprocal();
    for (int k = col; k <= M; ++k) a[col][k] *= inv;
    for (int row = 0; row < M; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col];
      for (int k = col; k <= M; ++k) a[row][k] -= f * a[col][k];
    }
  }

  PadeApproximant out;
  out.denominator.push_back(Rational(1));
  for (int k = 0; k < M; ++k) out.denominator.push_back(a[k][M]);
  for (int i = 0; i <= L; ++i) {
    Rational s;
    for (int k = 0; k <= std::min(i, M); ++k) s += out.denominator[k] * c(i - k);
    out.numerator.push_back(std::move(s));
  }
  return out;
}

namespace {

struct Horner {
  long double value = 0.0L;
  long double derivative = 0.0L;
};

Horner horner(const std::vector<long double>& coeffs, long double x) {
  Horner h;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    h.derivative = h.derivative * x + h.value;
    h.value = h.value * x + *it;
  }
  return h;
}

std::vector<long double> to_floats(const std::vector<Rational>& v) {
  std::vector<long double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.to_long_double());
  return out;
}

}  // namespace

PadeValue pade_eval(std::span<const Rational> coeffs, long double lambda, int L, int M) {
  const PadeApproximant approx = pade_approximant(coeffs, L, M);
  const auto num = to_floats(approx.numerator);
  const auto den = to_floats(approx.denominator);

  PadeValue out;
  const long double tolerance = 1e-6L * std::max(1.0L, std::fabs(lambda));
  const Horner d = horner(den, lambda);
  if (d.value == 0.0L) {
    out.pole_nearby = true;
    out.nearest_pole = lambda;
    out.value = std::numeric_limits<long double>::infinity();
    return out;
  }
  if (M > 0) {
    // Newton from lambda settles on the closest real root of the
    // denominator whenever one lies inside the flagging radius.
    long double x = lambda;
    for (int iter = 0; iter < 60; ++iter) {
      const Horner h = horner(den, x);
      if (h.derivative == 0.0L) break;
      const long double step = h.value / h.derivative;
      x -= step;
      if (!std::isfinite(x)) break;
      if (std::fabs(step) <= 1e-15L * std::max(1.0L, std::fabs(x))) {
        out.nearest_pole = x;
        out.pole_nearby = std::fabs(x - lambda) < tolerance;
        break;
      }
    }
  }
  out.value = horner(num, lambda).value / d.value;
  return out;
}

PadeValue pade_eval(const PerturbationSeries& series, long double lambda, int L, int M) {
  return pade_eval(series.coefficients, lambda, L, M);
}

std::vector<std::optional<long double>> ratio_diagnostics(std::span<const Rational> coeffs) {
  const int P = static_cast<int>(coeffs.size()) - 1;
  if (P < 2) throw Error(ErrorCode::InvalidArgument, "ratio diagnostics need P >= 2");
  std::vector<std::optional<long double>> out;
  for (int p = 1; p <= P - 1; ++p) {
    if (coeffs[p].is_zero()) {
      out.push_back(std::nullopt);
      continue;
    }
    out.push_back((coeffs[p + 1] / coeffs[p]).abs().to_long_double());
  }
  return out;
}

std::vector<std::optional<long double>> ratio_diagnostics(const PerturbationSeries& series) {
  return ratio_diagnostics(series.coefficients);
}

}  // namespace hpmkit
