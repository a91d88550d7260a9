#include "hpmkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <future>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "hpmkit/oracle.hpp"
#include "hpmkit/series_eval.hpp"

#ifndef HPMKIT_VERSION
#define HPMKIT_VERSION "0.0.0"
#endif

namespace hpmkit::cli {

namespace {

using json = nlohmann::ordered_json;

std::string timestamp_utc() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0')
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json metadata(const std::string& command) {
  return json{{"tool", "hpmkit"}, {"version", HPMKIT_VERSION}, {"command", command}, {"timestamp", timestamp_utc()}};
}

json state_json(const StateSpec& s) {
  return json{{"n_r", s.n_r()}, {"l", s.l()}, {"m_l", s.m_l()}, {"n", s.n()}, {"xi", s.xi().str()}};
}

json problem_json(const ProblemSpec& p) { return json{{"K", p.K}, {"P", p.P}}; }

std::string fmt_float(long double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// Fixed-point decimal expansion of an exact rational (truncated).
std::string fixed_decimal(const Rational& r, int decimals) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  mpz_class scaled = ::abs(r.numerator()) * scale / r.denominator();
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  digits.insert(digits.size() - decimals, ".");
  return (r.sign() < 0 ? "-" : "") + digits;
}

std::string csv_report(const json& report, int digits) {
  std::ostringstream os;
  os << "field,value\n";
  for (const auto& [key, value] : report.items()) {
    if (value.is_structured()) continue;
    os << key << ',';
    if (value.is_number_float())
      os << fmt_float(value.get<double>(), digits);
    else if (value.is_string())
      os << value.get<std::string>();
    else
      os << value.dump();
    os << '\n';
  }
  return os.str();
}

void check_order(int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "order must be non-negative");
}

}  // namespace

int order_cap_from_env() {
  if (const char* env = std::getenv("HPMKIT_MAX_ORDER"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return kDefaultOrderCap;
}

std::string OutputDocument::render() const {
  if (format == Format::Csv) return csv;
  return json.dump(2) + "\n";
}

OutputDocument cmd_coeffs(const CoeffsArgs& args) {
  check_order(args.order);
  const StateSpec state(args.n_r, args.l);
  const ProblemSpec problem{args.K, args.order};
  const NumericRun run = compute_series(state, problem);

  OutputDocument doc;
  doc.format = args.format;
  json coeffs = json::array();
  std::ostringstream csv;
  csv << "order,coefficient\n";
  for (int p = 0; p <= problem.P; ++p) {
    const std::string s = run.series.coefficients[p].str();
    coeffs.push_back(s);
    csv << p << ',' << s << '\n';
  }
  doc.json = json{{"metadata", metadata("coeffs")},
                  {"state", state_json(state)},
                  {"problem", problem_json(problem)},
                  {"coefficients", coeffs}};
  doc.csv = csv.str();
  return doc;
}

OutputDocument cmd_symbolic(const SymbolicArgs& args) {
  check_order(args.order);
  const ProblemSpec problem{args.K, args.order};
  const SymbolicRun run = compute_series_symbolic(problem);

  OutputDocument doc;
  doc.format = args.format;
  json coeffs = json::array();
  std::ostringstream csv;
  csv << "order,polynomial\n";
  for (int p = 1; p <= problem.P; ++p) {
    const std::string s = run.series.correction(p).str();
    coeffs.push_back(s);
    csv << p << ',' << s << '\n';
  }
  const auto& e0 = run.series.epsilon0;
  json report{{"first_order", 1},
              {"epsilon0", {{"numerator", e0.numerator.str()}, {"denominator", e0.denominator.str()}}},
              {"notice", "eps0 = -2/(2n-1)^2 is not a polynomial in n; coefficients list eps_1..eps_P"}};
  doc.json = json{{"metadata", metadata("symbolic")},
                  {"state", "symbolic"},
                  {"problem", problem_json(problem)},
                  {"coefficients", coeffs},
                  {"report", report}};
  if (problem.P == 0) csv << "0," << e0.numerator.str() << "/(" << e0.denominator.str() << ")\n";
  doc.csv = csv.str();
  return doc;
}

OutputDocument cmd_energy(const EnergyArgs& args) {
  check_order(args.order);
  const FieldSpec field{args.B_over_B0, args.Z};
  const long double lambda = lambda_from_field(field);
  const StateSpec state(args.n_r, std::abs(args.m_l), args.m_l);
  const int P = args.order;
  // One extra order supplies the first omitted term of the truncation.
  const NumericRun run = compute_series(state, ProblemSpec{2, P + 1});
  const std::span<const Rational> all(run.series.coefficients);
  const std::span<const Rational> coeffs = all.first(static_cast<std::size_t>(P) + 1);

  OutputDocument doc;
  doc.format = args.format;
  json report;
  report["lambda"] = static_cast<double>(lambda);
  json partial = json::array();
  for (int p = 0; p <= P; ++p) partial.push_back(static_cast<double>(partial_sum(coeffs, lambda, p)));

  long double estimate = 0.0L;
  long double error = 0.0L;
  int chosen = P;
  std::string method;
  switch (args.method) {
    case EnergyMethod::Truncate:
      method = "truncate";
      estimate = partial_sum(coeffs, lambda, P);
      error = std::fabs(all[P + 1].to_long_double() * std::pow(lambda, static_cast<long double>(P + 1)));
      break;
    case EnergyMethod::Optimal:
    case EnergyMethod::Pade: {
      method = args.method == EnergyMethod::Optimal ? "optimal" : "pade";
      if (lambda > 0.0L && P >= 1) {
        const Truncation t = optimal_truncation(coeffs, lambda);
        chosen = t.order;
        error = t.error_estimate;
        estimate = partial_sum(coeffs, lambda, chosen);
        report["asymptotic_regime"] = t.asymptotic_regime;
        if (!t.asymptotic_regime)
          doc.warnings.push_back("smallest term at the last available order; series not yet in its asymptotic regime");
      } else {
        chosen = 0;
        estimate = partial_sum(coeffs, lambda, 0);
      }
      if (args.method == EnergyMethod::Pade) {
        const int L = args.pade_L.value_or(P / 2);
        const int M = args.pade_M.value_or(P - L);
        report["pade_order"] = std::to_string(L) + "/" + std::to_string(M);
        try {
          const PadeValue pv = pade_eval(coeffs, lambda, L, M);
          report["pade_value"] = static_cast<double>(pv.value);
          if (pv.pole_nearby) {
            doc.warnings.push_back("Pade approximant has a pole within tolerance of lambda");
          } else {
            estimate = pv.value;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegenerateApproximant) throw;
          doc.warnings.push_back(std::string("degenerate approximant: ") + e.what());
        }
      }
      break;
    }
  }

  const long double zeeman = zeeman_shift(lambda, args.m_l);
  report["method"] = method;
  report["chosen_order"] = chosen;
  report["epsilon"] = static_cast<double>(estimate);
  report["error_estimate"] = static_cast<double>(error);
  report["zeeman"] = static_cast<double>(zeeman);
  report["total_dimensionless_energy"] = static_cast<double>(estimate + zeeman);
  report["partial_sums"] = partial;
  report["warnings"] = doc.warnings;

  json coeff_strings = json::array();
  for (const auto& c : coeffs) coeff_strings.push_back(c.str());
  doc.json = json{{"metadata", metadata("energy")},
                  {"state", state_json(state)},
                  {"problem", problem_json(ProblemSpec{2, P})},
                  {"coefficients", coeff_strings},
                  {"report", report}};
  // CSV keeps the long double precision for the derived values.
  std::ostringstream csv;
  csv << "field,value\n"
      << "lambda," << fmt_float(lambda, args.digits) << '\n'
      << "method," << method << '\n'
      << "chosen_order," << chosen << '\n'
      << "epsilon," << fmt_float(estimate, args.digits) << '\n'
      << "error_estimate," << fmt_float(error, args.digits) << '\n'
      << "zeeman," << fmt_float(zeeman, args.digits) << '\n'
      << "total_dimensionless_energy," << fmt_float(estimate + zeeman, args.digits) << '\n';
  for (const auto& w : doc.warnings) csv << "warning," << w << '\n';
  doc.csv = csv.str();
  return doc;
}

ValidateOutcome cmd_validate(const ValidateArgs& args, const ReferenceData& reference) {
  ValidateOutcome outcome;
  json checks = json::array();
  auto record = [&](const std::string& item, const std::string& expected, const std::string& actual, bool pass) {
    checks.push_back(json{{"item", item}, {"expected", expected}, {"actual", actual}, {"pass", pass}});
    if (!pass && outcome.first_failure.empty())
      outcome.first_failure = item + " mismatch\n  expected: " + expected + "\n  computed: " + actual;
  };

  const StateSpec ground(0, 0);
  const int numeric_orders = static_cast<int>(reference.coeffs_n1_l0.size());
  const NumericRun numeric = compute_series(ground, ProblemSpec{2, numeric_orders});
  for (int p = 1; p <= numeric_orders; ++p) {
    const std::string& expected = reference.coeffs_n1_l0[p - 1];
    const Rational& actual = numeric.series.coefficients[p];
    bool pass = false;
    try {
      pass = Rational::parse(expected) == actual;
    } catch (const Error&) {
      pass = false;
    }
    record("order " + std::to_string(p) + " (n=1, l=0, K=2)", expected, actual.str(), pass);
  }

  int symbolic_orders = 0;
  for (const auto& f : reference.symbolic) symbolic_orders = std::max(symbolic_orders, f.order);
  const SymbolicRun symbolic = compute_series_symbolic(ProblemSpec{2, symbolic_orders});
  for (const auto& f : reference.symbolic) {
    const PolyNL& actual = symbolic.series.correction(f.order);
    std::string expected_str;
    bool pass = false;
    try {
      const PolyNL expected = f.expand();
      expected_str = expected.str();
      pass = expected == actual;
    } catch (const Error& e) {
      expected_str = std::string("unparseable reference: ") + e.what();
    }
    record("symbolic order " + std::to_string(f.order) + " (K=2)", expected_str, actual.str(), pass);
  }

  // Hypervirial residual suite.
  int residual_total = 0;
  int residual_zero = 0;
  std::string residual_failure;
  for (int K : {1, 2}) {
    for (const auto& [n_r, l] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}}) {
      const NumericRun run = compute_series(StateSpec(n_r, l), ProblemSpec{K, 12});
      for (int j = 1; j <= 6; ++j)
        for (int i = 0; i <= 6; ++i) {
          ++residual_total;
          if (hypervirial_residual(run, j, i).is_zero())
            ++residual_zero;
          else if (residual_failure.empty())
            residual_failure = "residual (j=" + std::to_string(j) + ", i=" + std::to_string(i) + ") nonzero for n_r=" +
                               std::to_string(n_r) + ", l=" + std::to_string(l) + ", K=" + std::to_string(K);
        }
    }
  }
  for (int j = 1; j <= 4; ++j)
    for (int i = 0; i <= std::min(2, symbolic_orders - 2); ++i) {
      ++residual_total;
      if (hypervirial_residual(symbolic, j, i).is_zero())
        ++residual_zero;
      else if (residual_failure.empty())
        residual_failure = "symbolic residual (j=" + std::to_string(j) + ", i=" + std::to_string(i) + ") nonzero";
    }
  const bool residuals_pass = residual_zero == residual_total;
  if (!residuals_pass && outcome.first_failure.empty()) outcome.first_failure = residual_failure;

  const bool checksum_pass = reference.checksum_ok();
  if (!checksum_pass && outcome.first_failure.empty())
    outcome.first_failure = "reference data checksum mismatch";

  json agreement = json::array();
  bool agreement_pass = true;
  if (args.orders || !args.states.empty()) {
    const auto [lo, hi] = args.orders.value_or(std::pair<int, int>{1, 8});
    if (lo < 1 || hi < lo) throw Error(ErrorCode::InvalidArgument, "order range must satisfy 1 <= lo <= hi");
    std::vector<std::pair<int, int>> states = args.states;
    if (states.empty()) states = {{1, 0}, {2, 0}, {2, 1}, {3, 2}};
    for (const auto& [n, l] : states) (void)StateSpec::from_n_l(n, l);
    const SymbolicRun sym = compute_series_symbolic(ProblemSpec{2, hi});
    std::vector<std::future<NumericRun>> jobs;
    for (const auto& [n, l] : states)
      jobs.push_back(std::async(std::launch::async, [n = n, l = l, hi = hi] {
        return compute_series(StateSpec::from_n_l(n, l), ProblemSpec{2, hi});
      }));
    for (std::size_t s = 0; s < states.size(); ++s) {
      const NumericRun run = jobs[s].get();
      const auto [n, l] = states[s];
      json row{{"n", n}, {"l", l}};
      json equal = json::array();
      for (int p = lo; p <= hi; ++p) {
        const bool same = poly_eval(sym.series.correction(p), Rational(n), Rational(l)) == run.series.coefficients[p];
        equal.push_back(same);
        if (!same) {
          agreement_pass = false;
          if (outcome.first_failure.empty())
            outcome.first_failure = "symbolic/numeric disagreement at order " + std::to_string(p) +
                                    " for n=" + std::to_string(n) + ", l=" + std::to_string(l);
        }
      }
      row["orders"] = {lo, hi};
      row["equal"] = equal;
      agreement.push_back(row);
    }
  }

  bool checks_pass = true;
  for (const auto& c : checks) checks_pass = checks_pass && c["pass"].get<bool>();
  outcome.passed = checks_pass && residuals_pass && checksum_pass && agreement_pass;

  json coeffs = json::array();
  for (const auto& c : numeric.series.coefficients) coeffs.push_back(c.str());
  json report{{"passed", outcome.passed},
              {"checks", checks},
              {"checks_passed", static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                                               [](const json& c) { return c["pass"].get<bool>(); }))},
              {"checks_total", static_cast<int>(checks.size())},
              {"residual_suite", {{"zero", residual_zero}, {"total", residual_total}, {"pass", residuals_pass}}},
              {"reference_checksum_ok", checksum_pass}};
  if (!agreement.empty()) report["agreement"] = agreement;

  OutputDocument& doc = outcome.document;
  doc.format = args.format;
  doc.json = json{{"metadata", metadata("validate")},
                  {"state", state_json(ground)},
                  {"problem", problem_json(numeric.series.problem)},
                  {"coefficients", coeffs},
                  {"report", report}};
  std::ostringstream csv;
  csv << "item,expected,actual,pass\n";
  for (const auto& c : checks)
    csv << '"' << c["item"].get<std::string>() << "\"," << c["expected"].get<std::string>() << ','
        << c["actual"].get<std::string>() << ',' << (c["pass"].get<bool>() ? "pass" : "FAIL") << '\n';
  csv << "\"residual suite\"," << residual_total << ',' << residual_zero << ',' << (residuals_pass ? "pass" : "FAIL")
      << '\n';
  csv << "\"reference checksum\",,," << (checksum_pass ? "pass" : "FAIL") << '\n';
  for (const auto& row : agreement) {
    bool all = true;
    for (const auto& e : row["equal"]) all = all && e.get<bool>();
    csv << "\"agreement n=" << row["n"].get<int>() << " l=" << row["l"].get<int>() << "\",,,"
        << (all ? "pass" : "FAIL") << '\n';
  }
  doc.csv = csv.str();
  return outcome;
}

OutputDocument cmd_oracle_check(const OracleCheckArgs& args) {
  check_order(args.order);
  const Rational lambda = Rational::from_decimal(args.lambda);
  if (lambda.sign() < 0) throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
  const double lambda_d = lambda.to_double();
  const StateSpec state(args.n_r, args.l);
  const ProblemSpec problem{args.K, args.order};
  const NumericRun run = compute_series(state, problem);
  const auto& coeffs = run.series.coefficients;

  OutputDocument doc;
  doc.format = args.format;

  int chosen = 0;
  long double band = 0.0L;
  if (lambda.sign() > 0 && problem.P >= 1) {
    const Truncation t = optimal_truncation(coeffs, lambda.to_long_double());
    chosen = t.order;
    band = t.error_estimate;
  }
  const Rational series_exact = partial_sum_exact(coeffs, lambda, chosen);

  GridSpec grid = GridSpec::default_for(lambda_d, args.n_r, args.l);
  if (args.points) grid.points = *args.points;
  if (args.q_max) grid.q_max = *args.q_max;
  const OracleResult fd = refine(solve_radial(lambda_d, args.l, args.n_r, args.K, grid));
  const long double fd_discrepancy = std::fabs(static_cast<long double>(fd.epsilon) - series_exact.to_long_double());
  if (!fd.converged) doc.warnings.push_back("finite-difference oracle not converged");
  if (fd.tail_amplitude > 1e-6) doc.warnings.push_back("eigenvector not negligible at q_max; enlarge the grid");

  json report;
  report["lambda"] = lambda.str();
  report["lambda_float"] = lambda_d;
  report["chosen_order"] = chosen;
  report["series_estimate"] = fixed_decimal(series_exact, 45);
  report["band"] = static_cast<double>(band);
  report["oracle_epsilon"] = fd.epsilon;
  report["oracle_residual_norm"] = fd.residual_norm;
  report["oracle_converged"] = fd.converged;
  report["oracle_node_count"] = fd.node_count;
  report["oracle_q_max"] = fd.grid.q_max;
  report["oracle_points"] = fd.grid.points;
  report["oracle_isa"] = simd::isa_name(simd::active_isa());
  report["oracle_discrepancy"] = static_cast<double>(fd_discrepancy);

  long double discrepancy = fd_discrepancy;
  if (args.ritz) {
    const RitzResult ritz = solve_radial_ritz(lambda, args.l, args.n_r, args.K);
    discrepancy = (ritz.epsilon - series_exact).abs().to_long_double();
    report["ritz_epsilon"] = fixed_decimal(ritz.epsilon, 45);
    report["ritz_error_estimate"] = static_cast<double>(ritz.error_estimate);
    report["ritz_basis_size"] = ritz.basis_size;
    report["ritz_discrepancy"] = static_cast<double>(discrepancy);
  }
  bool within;
  if (lambda.sign() == 0) {
    within = discrepancy < 1e-6L * std::fabs(series_exact.to_long_double());
  } else {
    within = discrepancy <= 3.0L * band;
  }
  report["discrepancy"] = static_cast<double>(discrepancy);
  report["within_band"] = within;
  report["fd_within_band"] = lambda.sign() == 0 ? fd_discrepancy < 1e-6L * std::fabs(series_exact.to_long_double())
                                                  : fd_discrepancy <= 3.0L * band;
  if (!within) doc.warnings.push_back("oracle/series discrepancy exceeds 3x the first omitted term");
  report["warnings"] = doc.warnings;

  doc.json = json{{"metadata", metadata("oracle-check")},
                  {"state", state_json(state)},
                  {"problem", problem_json(problem)},
                  {"coefficients", json::array()},
                  {"report", report}};
  for (const auto& c : coeffs) doc.json["coefficients"].push_back(c.str());
  doc.csv = csv_report(report, args.digits);
  for (const auto& w : doc.warnings) doc.csv += "warning," + w + "\n";
  return doc;
}

std::pair<int, int> parse_order_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "malformed order range '" + text + "'");
  }
}

std::vector<std::pair<int, int>> parse_states(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "state '" + item + "' is not 'n,l'");
    try {
      out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "state '" + item + "' is not 'n,l'");
    }
  }
  return out;
}

CommandResult run(const std::vector<std::string>& args, const ReferenceData& reference) {
  CommandResult result;
  CLI::App app{"Large-order perturbation coefficients by the hypervirial method", "hpmkit"};
  app.require_subcommand(1);
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};
  int max_order = order_cap_from_env();

  CoeffsArgs coeffs;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "exact eps_0..eps_P for fixed quantum numbers");
  coeffs_cmd->add_option("--nr", coeffs.n_r, "radial quantum number")->check(CLI::NonNegativeNumber);
  coeffs_cmd->add_option("--l", coeffs.l, "angular quantum number |m_l|")->check(CLI::NonNegativeNumber);
  coeffs_cmd->add_option("--K", coeffs.K, "perturbation power q^K")->check(CLI::PositiveNumber);
  coeffs_cmd->add_option("--order", coeffs.order, "maximum order P")->check(CLI::NonNegativeNumber);
  coeffs_cmd->add_option("--format", coeffs.format)->transform(CLI::CheckedTransformer(formats));
  coeffs_cmd->add_option("--max-order", max_order, "override the order cap");

  SymbolicArgs symbolic;
  auto* symbolic_cmd = app.add_subcommand("symbolic", "eps_1..eps_P as polynomials in n and l");
  symbolic_cmd->add_option("--K", symbolic.K)->check(CLI::PositiveNumber);
  symbolic_cmd->add_option("--order", symbolic.order)->check(CLI::NonNegativeNumber);
  symbolic_cmd->add_option("--format", symbolic.format)->transform(CLI::CheckedTransformer(formats));
  symbolic_cmd->add_option("--max-order", max_order, "override the order cap");

  EnergyArgs energy;
  double b_field = 0.0;
  double z_charge = 1.0;
  const std::map<std::string, EnergyMethod> methods{
      {"truncate", EnergyMethod::Truncate}, {"optimal", EnergyMethod::Optimal}, {"pade", EnergyMethod::Pade}};
  auto* energy_cmd = app.add_subcommand("energy", "dimensionless energy at a given field");
  energy_cmd->add_option("--B", b_field, "field in units of B0")->check(CLI::NonNegativeNumber);
  energy_cmd->add_option("--Z", z_charge, "nuclear charge")->check(CLI::PositiveNumber);
  energy_cmd->add_option("--nr", energy.n_r)->check(CLI::NonNegativeNumber);
  energy_cmd->add_option("--ml", energy.m_l, "magnetic quantum number; l = |m_l|");
  energy_cmd->add_option("--order", energy.order)->check(CLI::NonNegativeNumber);
  energy_cmd->add_option("--method", energy.method)->transform(CLI::CheckedTransformer(methods));
  energy_cmd->add_option("--pade-L", energy.pade_L);
  energy_cmd->add_option("--pade-M", energy.pade_M);
  energy_cmd->add_option("--digits", energy.digits, "significant digits in CSV")->check(CLI::Range(1, 40));
  energy_cmd->add_option("--format", energy.format)->transform(CLI::CheckedTransformer(formats));
  energy_cmd->add_option("--max-order", max_order, "override the order cap");

  ValidateArgs validate;
  std::string orders_text;
  std::string states_text;
  auto* validate_cmd = app.add_subcommand("validate", "check against the embedded reference data");
  validate_cmd->add_option("--orders", orders_text, "agreement matrix orders, e.g. 1..8");
  validate_cmd->add_option("--states", states_text, "agreement matrix states as n,l pairs, e.g. 1,0;2,1");
  validate_cmd->add_option("--format", validate.format)->transform(CLI::CheckedTransformer(formats));

  OracleCheckArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the series with a numerical eigensolver");
  oracle_cmd->add_option("--lambda", oracle.lambda, "perturbation strength (decimal)");
  oracle_cmd->add_option("--nr", oracle.n_r)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--l", oracle.l)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--K", oracle.K)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--order", oracle.order)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--points", oracle.points);
  oracle_cmd->add_option("--qmax", oracle.q_max);
  oracle_cmd->add_flag("--ritz,!--no-ritz", oracle.ritz, "also run the high-precision Ritz oracle");
  oracle_cmd->add_option("--digits", oracle.digits)->check(CLI::Range(1, 40));
  oracle_cmd->add_option("--format", oracle.format)->transform(CLI::CheckedTransformer(formats));
  oracle_cmd->add_option("--max-order", max_order, "override the order cap");

  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kSuccess : kUsageError;
    return result;
  }

  auto emit = [&](const OutputDocument& doc) {
    out << doc.render();
    for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
  };
  auto cap_check = [&](int order) {
    if (order > max_order)
      throw Error(ErrorCode::OutOfRange, "order " + std::to_string(order) + " exceeds the cap " +
                                             std::to_string(max_order) +
                                             " (raise with --max-order or HPMKIT_MAX_ORDER)");
  };

  try {
    if (*coeffs_cmd) {
      cap_check(coeffs.order);
      emit(cmd_coeffs(coeffs));
    } else if (*symbolic_cmd) {
      cap_check(symbolic.order);
      emit(cmd_symbolic(symbolic));
    } else if (*energy_cmd) {
      cap_check(energy.order);
      energy.B_over_B0 = b_field;
      energy.Z = z_charge;
      emit(cmd_energy(energy));
    } else if (*validate_cmd) {
      if (!orders_text.empty()) validate.orders = parse_order_range(orders_text);
      if (!states_text.empty()) validate.states = parse_states(states_text);
      if (validate.orders) cap_check(validate.orders->second);
      ValidateOutcome v = cmd_validate(validate, reference);
      emit(v.document);
      if (!v.passed) {
        err << "validation failed: " << v.first_failure << '\n';
        result.exit_code = kValidationFailure;
      }
    } else if (*oracle_cmd) {
      cap_check(oracle.order);
      emit(cmd_oracle_check(oracle));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kUsageError;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace hpmkit::cli
