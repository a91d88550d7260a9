#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpmkit/hpm.hpp"
#include "hpmkit/reference_data.hpp"

namespace hpmkit::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

enum class Format { Json, Csv };

inline constexpr int kDefaultOrderCap = 200;

/// Order cap: HPMKIT_MAX_ORDER when set, otherwise kDefaultOrderCap.
int order_cap_from_env();

/// One command's output: a JSON document plus its CSV rendering.
struct OutputDocument {
  Format format = Format::Json;
  nlohmann::ordered_json json;
  std::string csv;
  std::vector<std::string> warnings;

  std::string render() const;
};

struct CoeffsArgs {
  int n_r = 0;
  int l = 0;
  int K = 2;
  int order = 20;
  Format format = Format::Json;
};
OutputDocument cmd_coeffs(const CoeffsArgs& args);

struct SymbolicArgs {
  int K = 2;
  int order = 4;
  Format format = Format::Json;
};
OutputDocument cmd_symbolic(const SymbolicArgs& args);

enum class EnergyMethod { Truncate, Optimal, Pade };

struct EnergyArgs {
  long double B_over_B0 = 0.0L;
  long double Z = 1.0L;
  int n_r = 0;
  int m_l = 0;
  int order = 20;
  EnergyMethod method = EnergyMethod::Optimal;
  std::optional<int> pade_L;
  std::optional<int> pade_M;
  int digits = 17;
  Format format = Format::Json;
};
/// Hard failures (invalid input) throw; Pade degeneracy or a nearby pole
/// only adds a warning.
OutputDocument cmd_energy(const EnergyArgs& args);

struct ValidateArgs {
  // Agreement matrix: orders lo..hi over (n, l) states. Empty = default run.
  std::optional<std::pair<int, int>> orders;
  std::vector<std::pair<int, int>> states;
  Format format = Format::Json;
};

struct ValidateOutcome {
  OutputDocument document;
  bool passed = false;
  /// Full description of the first failed item, empty when all pass.
  std::string first_failure;
};
ValidateOutcome cmd_validate(const ValidateArgs& args, const ReferenceData& reference = ReferenceData::embedded());

struct OracleCheckArgs {
  std::string lambda = "0";
  int n_r = 0;
  int l = 0;
  int K = 2;
  int order = 20;
  std::optional<int> points;
  std::optional<double> q_max;
  bool ritz = true;
  int digits = 17;
  Format format = Format::Json;
};
OutputDocument cmd_oracle_check(const OracleCheckArgs& args);

struct CommandResult {
  int exit_code = kSuccess;
  std::string out;
  std::string err;
};

/// Parses argv-style arguments (without the program name) and runs the
/// selected subcommand.
CommandResult run(const std::vector<std::string>& args, const ReferenceData& reference = ReferenceData::embedded());

/// Parses "a..b" or "a".
std::pair<int, int> parse_order_range(const std::string& text);
/// Parses "n,l;n,l;..." pairs.
std::vector<std::pair<int, int>> parse_states(const std::string& text);

}  // namespace hpmkit::cli
