#include "hpmkit/hpm.hpp"

#include <cstdlib>

namespace hpmkit {

StateSpec::StateSpec(int n_r, int l) : StateSpec(n_r, l, l) {}

StateSpec::StateSpec(int n_r, int l, int m_l) : n_r_(n_r), l_(l), m_l_(m_l) {
  if (n_r < 0) throw Error(ErrorCode::InvalidArgument, "n_r must be non-negative");
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "l must be non-negative");
  if (std::abs(m_l) != l) throw Error(ErrorCode::InvalidArgument, "|m_l| must equal l");
}

StateSpec StateSpec::from_n_l(int n, int l) {
  if (n < l + 1) throw Error(ErrorCode::InvalidArgument, "n must be at least l + 1");
  return StateSpec(n - l - 1, l);
}

void ProblemSpec::validate() const {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
  if (P < 0) throw Error(ErrorCode::InvalidArgument, "P must be non-negative");
}

Rational epsilon_zero(const StateSpec& state) {
  return Rational(-2) / Rational(2L * state.n() - 1).pow(2);
}

NumericRun compute_series(const StateSpec& state, const ProblemSpec& problem) {
  const RationalDomain dom(state.n(), state.l());
  const Rational eps0 = epsilon_zero(state);
  NumericRun run{{state, problem, {}}, run_hpm(dom, problem, std::optional<Rational>(eps0))};
  run.series.coefficients.reserve(static_cast<std::size_t>(problem.P) + 1);
  run.series.coefficients.push_back(eps0);
  for (const auto& c : run.raw.corrections) run.series.coefficients.push_back(c);
  return run;
}

RationalFunctionNL symbolic_epsilon_zero() {
  return {PolyNL(Rational(-2)), PolyNL::parse("2*n-1").pow(2)};
}

SymbolicRun compute_series_symbolic(const ProblemSpec& problem) {
  const PolyDomain dom;
  SymbolicRun run{{problem, symbolic_epsilon_zero(), {}}, run_hpm(dom, problem)};
  run.series.corrections = run.raw.corrections;
  return run;
}

Rational hypervirial_residual(const NumericRun& run, int j, int i) {
  const auto& state = run.series.state;
  const RationalDomain dom(state.n(), state.l());
  return epsilon_zero(state) * scaled_hypervirial_residual(dom, run.raw, run.series.problem.K, j, i);
}

PolyNL hypervirial_residual(const SymbolicRun& run, int j, int i) {
  return scaled_hypervirial_residual(PolyDomain{}, run.raw, run.series.problem.K, j, i);
}

}  // namespace hpmkit
