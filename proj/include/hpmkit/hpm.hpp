#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpmkit/domain.hpp"
#include "hpmkit/error.hpp"
#include "hpmkit/poly_nl.hpp"
#include "hpmkit/rational.hpp"

namespace hpmkit {

/// Quantum numbers of one (n_r, l) channel. m_l only enters the Zeeman
/// shift; |m_l| = l is enforced.
class StateSpec {
 public:
  StateSpec(int n_r, int l);
  StateSpec(int n_r, int l, int m_l);
  static StateSpec from_n_l(int n, int l);

  int n_r() const { return n_r_; }
  int l() const { return l_; }
  int m_l() const { return m_l_; }
  int n() const { return n_r_ + l_ + 1; }
  Rational xi() const { return Rational(static_cast<long>(l_) * l_) - Rational(1, 4); }

  friend bool operator==(const StateSpec&, const StateSpec&) = default;

 private:
  int n_r_;
  int l_;
  int m_l_;
};

/// Perturbation lambda q^K, expanded through order P.
struct ProblemSpec {
  int K = 2;
  int P = 0;

  void validate() const;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Triangular table of the expansion coefficients Q_{j,i} of <q^j>.
///
/// Row i holds j = -1 .. J_max(i) with J_max(i) = K (P - i): computing
/// eps_P needs Q_{K,P-1}, and Q_{j,i} reads Q_{j+K,i-1}, so each order
/// back needs K more columns. Entries are write-once.
template <class V>
class QTable {
 public:
  QTable() = default;
  QTable(int K, int P) : K_(K), P_(P), rows_(static_cast<std::size_t>(std::max(P, 0))) {
    for (int i = 0; i < P; ++i) rows_[i].resize(static_cast<std::size_t>(j_max(i) + 2));
  }

  int K() const { return K_; }
  int P() const { return P_; }
  int orders() const { return static_cast<int>(rows_.size()); }
  int j_max(int i) const { return K_ * (P_ - i); }

  bool contains(int j, int i) const {
    return i >= 0 && i < orders() && j >= -1 && j <= j_max(i) && rows_[i][j + 1].has_value();
  }

  const V& at(int j, int i) const {
    if (!contains(j, i))
      throw Error(ErrorCode::OutOfRange,
                  "Q table entry (" + std::to_string(j) + "," + std::to_string(i) + ") is not available");
    return *rows_[i][j + 1];
  }

  void set(int j, int i, V value) {
    if (i < 0 || i >= orders() || j < -1 || j > j_max(i))
      throw Error(ErrorCode::OutOfRange,
                  "Q table index (" + std::to_string(j) + "," + std::to_string(i) + ") outside the table");
    auto& slot = rows_[i][j + 1];
    if (slot.has_value())
      throw Error(ErrorCode::InvalidArgument,
                  "Q table entry (" + std::to_string(j) + "," + std::to_string(i) + ") written twice");
    slot = std::move(value);
  }

 private:
  int K_ = 0;
  int P_ = 0;
  std::vector<std::vector<std::optional<V>>> rows_;
};

/// Raw engine output: eps_1..eps_P (corrections[p-1] = eps_p) and the table.
template <class V>
struct HpmOutput {
  std::vector<V> corrections;
  QTable<V> table;

  const V& correction(int p) const { return corrections.at(static_cast<std::size_t>(p - 1)); }
};

namespace detail {

// (1/eps0) Q_{-1,i}. For i = 0 the virial value Q_{-1,0} = -2 eps0 is not
// representable in the polynomial domain, but its scaled form is -2.
template <CoefficientDomain D>
typename D::Value scaled_q_minus_one(const D& dom, const QTable<typename D::Value>& table, int i) {
  if (i == 0) return dom.embed(Rational(-2));
  return dom.inv_epsilon_zero() * table.at(-1, i);
}

}  // namespace detail

/// Runs the hypervirial recurrences closed by Hellmann-Feynman.
///
/// Per order i, in this order: eps_i = Q_{K,i-1}/i (i >= 1);
/// Q_{-1,i} = -2 eps_i + (K+2) Q_{K,i-1} (i >= 1); then Q_{j,i} for
/// j = 1 .. J_max(i) ascending. Q_{0,i} = delta_{i0}. When `epsilon_zero`
/// is given (numeric mode) Q_{-1,0} = -2 eps0 is stored as well.
template <CoefficientDomain D>
HpmOutput<typename D::Value> run_hpm(const D& dom, const ProblemSpec& problem,
                                     const std::optional<typename D::Value>& epsilon_zero = std::nullopt) {
  using V = typename D::Value;
  problem.validate();
  const int K = problem.K;
  const int P = problem.P;

  HpmOutput<V> out;
  out.table = QTable<V>(K, P);
  out.corrections.reserve(static_cast<std::size_t>(P));
  QTable<V>& Q = out.table;
  const V& xi = dom.xi();
  const V& inv_eps0 = dom.inv_epsilon_zero();

  for (int i = 0; i < P; ++i) {
    if (i >= 1) out.corrections.push_back(Q.at(K, i - 1) * Rational(1, i));

    Q.set(0, i, i == 0 ? dom.one() : dom.zero());
    if (i >= 1)
      Q.set(-1, i, out.correction(i) * Rational(-2) + Q.at(K, i - 1) * Rational(K + 2));
    else if (epsilon_zero)
      Q.set(-1, 0, *epsilon_zero * Rational(-2));

    for (int j = 1; j <= Q.j_max(i); ++j) {
      // 2(j+1) eps0 Q_{j,i} = j[xi - (j^2-1)/4] Q_{j-2,i} - (2j+1) Q_{j-1,i}
      //   - 2(j+1) sum_{m=1}^{i} eps_m Q_{j,i-m} + (2j+K+2) Q_{j+K,i-1}
      V acc = Q.at(j - 1, i) * Rational(-(2 * j + 1));
      if (j >= 2) {
        const V factor = xi * Rational(j) - dom.embed(Rational(static_cast<long>(j) * (j * j - 1), 4));
        acc = acc + factor * Q.at(j - 2, i);
      }
      for (int m = 1; m <= i; ++m) {
        const V& q = Q.at(j, i - m);
        if (!q.is_zero()) acc = acc + out.correction(m) * q * Rational(-2 * (j + 1));
      }
      if (i >= 1) acc = acc + Q.at(j + K, i - 1) * Rational(2 * j + K + 2);

      V value = inv_eps0 * acc * Rational(1, 2 * (j + 1));
      if (j == 1) value = value + xi * detail::scaled_q_minus_one(dom, Q, i) * Rational(1, 4);
      Q.set(j, i, std::move(value));
    }
  }
  if (P >= 1) out.corrections.push_back(Q.at(K, P - 1) * Rational(1, P));
  return out;
}

/// lambda^i coefficient of the hypervirial relation
///   2j eps Q_{j-1} + (j-1)[j(j-2)/4 - xi] Q_{j-3} + (2j-1) Q_{j-2}
///     - (2j+K) lambda Q_{j+K-1}
/// multiplied through by 1/eps0 (eps0 itself is not a polynomial). Zero
/// exactly when the unscaled coefficient is zero.
template <CoefficientDomain D>
typename D::Value scaled_hypervirial_residual(const D& dom, const HpmOutput<typename D::Value>& run, int K, int j,
                                              int i) {
  using V = typename D::Value;
  if (j < 1 || i < 0)
    throw Error(ErrorCode::OutOfRange, "hypervirial residual needs j >= 1 and i >= 0");
  const auto& Q = run.table;
  const V& inv_eps0 = dom.inv_epsilon_zero();
  auto scaled_q = [&](int jj, int ii) -> V {
    if (jj == -1) return detail::scaled_q_minus_one(dom, Q, ii);
    return inv_eps0 * Q.at(jj, ii);
  };

  // eps0 term of the product eps Q_{j-1}, already divided by eps0.
  V r = Q.at(j - 1, i) * Rational(2 * j);
  for (int m = 1; m <= i; ++m) {
    if (m > static_cast<int>(run.corrections.size()))
      throw Error(ErrorCode::OutOfRange, "hypervirial residual needs eps_" + std::to_string(m));
    r = r + run.correction(m) * scaled_q(j - 1, i - m) * Rational(2 * j);
  }
  if (j >= 2) {
    // (j-1)[j(j-2)/4 - xi]
    const V factor = dom.embed(Rational(static_cast<long>(j - 1) * j * (j - 2), 4)) - dom.xi() * Rational(j - 1);
    r = r + factor * scaled_q(j - 3, i);
  }
  r = r + scaled_q(j - 2, i) * Rational(2 * j - 1);
  if (i >= 1) r = r - scaled_q(j + K - 1, i - 1) * Rational(2 * j + K);
  return r;
}

/// Numeric-mode series eps_0..eps_P with the state and problem it belongs to.
struct PerturbationSeries {
  StateSpec state{0, 0};
  ProblemSpec problem;
  std::vector<Rational> coefficients;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

struct NumericRun {
  PerturbationSeries series;
  HpmOutput<Rational> raw;
};

/// eps0 = -1 / (2 (n_r + l + 1/2)^2) = -2/(2n-1)^2.
Rational epsilon_zero(const StateSpec& state);

NumericRun compute_series(const StateSpec& state, const ProblemSpec& problem);

/// eps0 of symbolic mode: the rational function numerator/denominator in n.
struct RationalFunctionNL {
  PolyNL numerator;
  PolyNL denominator;
};

/// Symbolic series carries eps_1..eps_P as polynomials; eps0 is reported
/// separately since it is not polynomial in n.
struct SymbolicSeries {
  ProblemSpec problem;
  RationalFunctionNL epsilon0;
  std::vector<PolyNL> corrections;  // corrections[p-1] = eps_p

  const PolyNL& correction(int p) const { return corrections.at(static_cast<std::size_t>(p - 1)); }
};

struct SymbolicRun {
  SymbolicSeries series;
  HpmOutput<PolyNL> raw;
};

RationalFunctionNL symbolic_epsilon_zero();
SymbolicRun compute_series_symbolic(const ProblemSpec& problem);

/// Unscaled lambda^i coefficient of the relation at index j for a numeric run.
Rational hypervirial_residual(const NumericRun& run, int j, int i);
/// Symbolic residual, scaled by 1/eps0 (see scaled_hypervirial_residual).
PolyNL hypervirial_residual(const SymbolicRun& run, int j, int i);

}  // namespace hpmkit
