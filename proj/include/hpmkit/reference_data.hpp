#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpmkit/poly_nl.hpp"
#include "hpmkit/rational.hpp"

namespace hpmkit {

/// Published symbolic correction in factored form:
///   eps_p = prefactor * (2n-1)^power * inner(n, l)
struct FactoredCorrection {
  int order = 0;
  std::string prefactor;
  unsigned power = 0;
  std::string inner;

  PolyNL expand() const;
};

/// Golden data compiled into the binary: eps_1..eps_20 for n = 1, l = 0,
/// K = 2, and eps_1..eps_4 as polynomials in n and l.
class ReferenceData {
 public:
  static const ReferenceData& embedded();
  /// FNV-1a digest of the pristine embedded data.
  static std::uint64_t embedded_checksum();

  std::vector<std::string> coeffs_n1_l0;  // "p/q" strings, index p-1
  std::vector<FactoredCorrection> symbolic;

  std::vector<Rational> coefficients() const;
  std::vector<PolyNL> symbolic_eps() const;
  std::uint64_t checksum() const;
  bool checksum_ok() const { return checksum() == embedded_checksum(); }
};

}  // namespace hpmkit
