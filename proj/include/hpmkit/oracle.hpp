#pragma once

#include <string>

#include "hpmkit/rational.hpp"
#include "hpmkit/simd/sturm.hpp"

namespace hpmkit {

/// Uniform radial grid for the finite-difference oracle.
struct GridSpec {
  double q_max = 40.0;
  int points = 8000;
  /// Convergence threshold, relative to max(1, |eps|).
  double tolerance = 1e-6;
  std::string scheme = "box-fd2";

  /// q_max = (2n-1)(12+3n) / (1 + lambda^{1/4}(2n-1)), at least 12.
  static GridSpec default_for(double lambda, int n_r, int l);
  void validate() const;
};

struct OracleResult {
  double epsilon = 0.0;
  /// Unextrapolated eigenvalue on the finest grid used.
  double raw_epsilon = 0.0;
  int node_count = 0;
  GridSpec grid;
  bool converged = false;
  double residual_norm = 0.0;
  /// Eigenvector amplitude at q_max relative to its maximum.
  double tail_amplitude = 0.0;
  int refinements = 0;

  double lambda = 0.0;
  int l = 0;
  int n_r = 0;
  int K = 2;
};

/// Eigenvalue with exactly n_r interior nodes of
///   -1/2 P'' + [xi/(2q^2) - 1/q + lambda q^K] P = eps P
/// with P -> 0 at both ends. Discretised on R = P/sqrt(q) with a
/// second-order box scheme (weight q), which keeps the l = 0 channel
/// regular at the origin. epsilon is the value on `grid.points`;
/// residual_norm is the change on doubling the grid.
///
/// Throws Error(NodeCountNotFound) when the selected eigenvector does not
/// have n_r sign changes, Error(InvalidArgument) on bad input.
OracleResult solve_radial(double lambda, int l, int n_r, int K, const GridSpec& grid);
OracleResult solve_radial(double lambda, int l, int n_r, int K, const GridSpec& grid, simd::Isa isa);

/// Doubles the grid, re-solves and Richardson-extrapolates the h^2 term.
OracleResult refine(const OracleResult& result);
OracleResult refine(const OracleResult& result, simd::Isa isa);

/// High-precision Rayleigh-Ritz value in the basis q^{k+l} e^{-kappa q},
/// kappa = 2/(2n-1). Matrix elements are exact rationals; the generalized
/// eigenproblem is solved with ~150 significant digits. Used where the
/// comparison band is far below double precision.
struct RitzResult {
  Rational epsilon;  // exact value of the multiprecision eigenvalue
  long double error_estimate = 0.0L;  // |E(M) - E(M - 8)|
  int basis_size = 0;
};

RitzResult solve_radial_ritz(const Rational& lambda, int l, int n_r, int K, int basis_size = 40);

}  // namespace hpmkit
