#include "hpmkit/domain.hpp"

namespace hpmkit {

RationalDomain::RationalDomain(long n, long l)
    : xi_(Rational(l * l) - Rational(1, 4)), inv_eps0_(-Rational(2 * n - 1).pow(2) / Rational(2)) {}

PolyDomain::PolyDomain()
    : xi_(PolyNL::l().pow(2) - PolyNL(Rational(1, 4))),
      inv_eps0_(PolyNL::parse("2*n-1").pow(2) * Rational(-1, 2)) {}

}  // namespace hpmkit
