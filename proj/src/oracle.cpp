#include "hpmkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hpmkit/error.hpp"

namespace hpmkit {

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> offdiag_sq;
  std::vector<double> weight;
};

// Box discretisation of
//   E[R] = int [ R'^2/2 + (l^2/(2q^2) - 1/q + lambda q^K) R^2 ] q dq / int R^2 q dq
// on q_i = i h, R(q_max) = 0, and R(0) = 0 when l > 0. The generalized
// problem A R = eps W R is symmetrised with W^{-1/2}.
Tridiagonal assemble(double lambda, int l, int K, double q_max, int points) {
  const double h = q_max / points;
  const int first = l > 0 ? 1 : 0;
  const int n = points - first;
  Tridiagonal m;
  m.diag.resize(n);
  m.weight.resize(n);
  std::vector<double> upper(std::max(n - 1, 0));
  const double l2 = static_cast<double>(l) * l;

  for (int k = 0; k < n; ++k) {
    const int i = k + first;
    const double q = i * h;
    const double q_plus = q + 0.5 * h;
    const double q_minus = i == 0 ? 0.0 : q - 0.5 * h;
    double w;
    double potential;
    if (i == 0) {
      // Half cell [0, h/2]: int q dq, int q V dq with l = 0.
      w = h * h / 8.0;
      potential = -0.5 * h + lambda * std::pow(0.5 * h, K + 2) / (K + 2);
    } else {
      w = q * h;
      potential = w * (l2 / (2.0 * q * q) - 1.0 / q + lambda * std::pow(q, K));
    }
    m.weight[k] = w;
    m.diag[k] = (q_plus + q_minus) / (2.0 * h) + potential;
    if (k + 1 < n) upper[k] = -q_plus / (2.0 * h);
  }
  for (int k = 0; k < n; ++k) m.diag[k] /= m.weight[k];
  m.offdiag.resize(upper.size());
  m.offdiag_sq.resize(upper.size());
  for (std::size_t k = 0; k < upper.size(); ++k) {
    m.offdiag[k] = upper[k] / std::sqrt(m.weight[k] * m.weight[k + 1]);
    m.offdiag_sq[k] = m.offdiag[k] * m.offdiag[k];
  }
  return m;
}

// index-th eigenvalue (0-based, ascending) by Sturm multisection.
double kth_eigenvalue(const Tridiagonal& m, int index, simd::Isa isa) {
  const std::size_t n = m.diag.size();
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  double max_e2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::fabs(m.offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(m.offdiag[i]) : 0.0);
    lo = std::min(lo, m.diag[i] - radius);
    hi = std::max(hi, m.diag[i] + radius);
    if (i + 1 < n) max_e2 = std::max(max_e2, m.offdiag_sq[i]);
  }
  const simd::TridiagonalView view{m.diag, m.offdiag_sq, std::numeric_limits<double>::min() * std::max(1.0, max_e2)};
  const double span = hi - lo;
  lo -= 1e-9 * span + 1e-300;
  hi += 1e-9 * span + 1e-300;

  simd::Shifts shifts{};
  simd::Counts counts{};
  for (int iter = 0; iter < 400; ++iter) {
    const double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi))) break;
    for (int k = 0; k < simd::kLanes; ++k) shifts[k] = lo + width * (k + 1) / (simd::kLanes + 1);
    simd::sturm_counts(isa, view, shifts, counts);
    // count(x) = eigenvalues below x; keep count(lo) <= index < count(hi).
    double new_lo = lo;
    double new_hi = hi;
    for (int k = 0; k < simd::kLanes; ++k) {
      if (counts[k] <= index)
        new_lo = shifts[k];
      else {
        new_hi = shifts[k];
        break;
      }
    }
    if (new_lo == lo && new_hi == hi) break;
    lo = new_lo;
    hi = new_hi;
  }
  return 0.5 * (lo + hi);
}

// Solves (T - shift) x = b for symmetric tridiagonal T with partial pivoting.
std::vector<double> tridiagonal_solve(const Tridiagonal& m, double shift, std::vector<double> b) {
  const std::size_t n = m.diag.size();
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = m.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    du[i] = m.offdiag[i];
    dl[i] = m.offdiag[i];
  }
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
    } else {
      // swap rows i and i+1
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      du[i] = tmp;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du[k] * x[k + 1];
    if (k + 2 < n) s -= du2[k] * x[k + 2];
    x[k] = s / d[k];
  }
  return x;
}

struct GridSolution {
  double epsilon = 0.0;
  int node_count = 0;
  double tail_amplitude = 0.0;
};

GridSolution solve_on_grid(double lambda, int l, int n_r, int K, double q_max, int points, simd::Isa isa) {
  const Tridiagonal m = assemble(lambda, l, K, q_max, points);
  if (n_r >= static_cast<int>(m.diag.size()))
    throw Error(ErrorCode::NodeCountNotFound, "grid too small to hold the requested radial excitation");
  GridSolution out;
  out.epsilon = kth_eigenvalue(m, n_r, isa);

  // Inverse iteration for the eigenvector, then count its sign changes.
  const double shift = out.epsilon + 1e-10 * std::max(1.0, std::fabs(out.epsilon));
  std::vector<double> x(m.diag.size(), 1.0);
  for (int iter = 0; iter < 3; ++iter) {
    x = tridiagonal_solve(m, shift, std::move(x));
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::fabs(v));
    for (double& v : x) v /= norm;
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));
  const double threshold = 1e-8 * peak;
  int changes = 0;
  double last = 0.0;
  for (double v : x) {
    if (std::fabs(v) < threshold) continue;
    if (last != 0.0 && (v < 0.0) != (last < 0.0)) ++changes;
    last = v;
  }
  out.node_count = changes;
  out.tail_amplitude = std::fabs(x.back()) / peak;
  if (changes != n_r)
    throw Error(ErrorCode::NodeCountNotFound, "eigenvector " + std::to_string(n_r) + " has " +
                                                  std::to_string(changes) + " sign changes instead of " +
                                                  std::to_string(n_r));
  return out;
}

void check_inputs(double lambda, int l, int n_r, int K) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
  if (l < 0 || n_r < 0) throw Error(ErrorCode::InvalidArgument, "quantum numbers must be non-negative");
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
}

}  // namespace

GridSpec GridSpec::default_for(double lambda, int n_r, int l) {
  const int n = n_r + l + 1;
  const double width = 2.0 * n - 1.0;
  GridSpec g;
  g.q_max = std::max(12.0, width * (12.0 + 3.0 * n) / (1.0 + std::pow(lambda, 0.25) * width));
  g.points = 8000;
  return g;
}

void GridSpec::validate() const {
  if (points < 100) throw Error(ErrorCode::InvalidArgument, "grid needs at least 100 points");
  if (!(q_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "q_max must be positive");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
}

OracleResult solve_radial(double lambda, int l, int n_r, int K, const GridSpec& grid) {
  return solve_radial(lambda, l, n_r, K, grid, simd::active_isa());
}

OracleResult solve_radial(double lambda, int l, int n_r, int K, const GridSpec& grid, simd::Isa isa) {
  check_inputs(lambda, l, n_r, K);
  grid.validate();
  const GridSolution coarse = solve_on_grid(lambda, l, n_r, K, grid.q_max, grid.points, isa);
  const GridSolution fine = solve_on_grid(lambda, l, n_r, K, grid.q_max, 2 * grid.points, isa);

  OracleResult r;
  r.epsilon = coarse.epsilon;
  r.raw_epsilon = coarse.epsilon;
  r.node_count = coarse.node_count;
  r.grid = grid;
  r.residual_norm = std::fabs(fine.epsilon - coarse.epsilon);
  r.converged = r.residual_norm <= grid.tolerance * std::max(1.0, std::fabs(r.epsilon));
  r.tail_amplitude = coarse.tail_amplitude;
  r.lambda = lambda;
  r.l = l;
  r.n_r = n_r;
  r.K = K;
  return r;
}

OracleResult refine(const OracleResult& result) { return refine(result, simd::active_isa()); }

OracleResult refine(const OracleResult& result, simd::Isa isa) {
  GridSpec grid = result.grid;
  grid.points *= 2;
  grid.validate();
  const GridSolution coarse = solve_on_grid(result.lambda, result.l, result.n_r, result.K, grid.q_max, grid.points, isa);
  const GridSolution fine =
      solve_on_grid(result.lambda, result.l, result.n_r, result.K, grid.q_max, 2 * grid.points, isa);

  OracleResult r = result;
  r.grid = grid;
  r.raw_epsilon = fine.epsilon;
  r.epsilon = (4.0 * fine.epsilon - coarse.epsilon) / 3.0;
  r.residual_norm = std::fabs(r.epsilon - fine.epsilon);
  r.node_count = fine.node_count;
  r.tail_amplitude = fine.tail_amplitude;
  r.converged = result.converged || r.residual_norm <= grid.tolerance * std::max(1.0, std::fabs(r.epsilon));
  r.refinements = result.refinements + 1;
  return r;
}

}  // namespace hpmkit
