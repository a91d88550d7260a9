#include "hpmkit/reference_data.hpp"

namespace hpmkit {

PolyNL FactoredCorrection::expand() const {
  return PolyNL::parse("2*n-1").pow(power) * PolyNL::parse(inner) * Rational::parse(prefactor);
}

const ReferenceData& ReferenceData::embedded() {
  static const ReferenceData data{
      {
          "3/8",
          "-159/1024",
          "17967/65536",
          "-15522195/16777216",
          "5189052801/1073741824",
          "-4896676641339/137438953472",
          "3094900497137871/8796093022208",
          "-20233178231139761499/4503599627370496",
          "20808558827825859998445/288230376151711744",
          "-52693485465369543566065089/36893488147419103232",
          "80639435078901048406195920633/2361183241434822606848",
          "-587353055515797037508553136130823/604462909807314587353088",
          "1255613239147236284205667622925365349/38685626227668133590597632",
          "-6229668057619980010555555519950165544755/4951760157141521099596496896",
          "17753264589549239693872523415436400485638255/316912650057057350374175801344",
          "-921721759137179716887942948086717222595277533675/324518553658426726783156020576256",
          "3379056665253674076167201632469154672196055608756005/20769187434139310514121985316880384",
          "-27797116247667972439940810526714208588100705850127986405/2658455991569831745807614120560689152",
          "127484555261829518463134910686385252583016203699835125715445/"
          "170141183460469231731687303715884105728",
          "-2593203450314371618931792865686398116783507010792581025252777725/"
          "43556142965880123323311949751266331066368",
      },
      {
          {1, "1/8", 2, "-3*l^2+3+5*n^2-5*n"},
          {2, "-1/1024", 6, "-21*l^4-138*l^2+159-90*l^2*n^2+90*l^2*n+582*n^2-439*n+143*n^4-286*n^3"},
          {3, "1/65536", 10,
           "17967-65495*n+68835*n^4-107070*n^3+115970*n^2-18066*l^2-35130*l^2*n^2"
           "+29910*l^2*n+231*l^4-132*l^6-18360*n^5+6120*n^6+10440*l^2*n^3-5220*l^2*n^4"},
          {4, "-1/16777216", 14,
           "15522195-67825511*n-4005*l^8+153888490*n^4-180523168*n^3+145662172*n^2"
           "-17506020*l^2-64292340*l^2*n^2+43194060*l^2*n+1991850*l^4-4020*l^6-80558702*n^5+33863592*n^6"
           "+43836660*l^2*n^3-26018580*l^2*n^4-1640100*l^2*n^6+4920300*l^2*n^5-502740*l^4*n^3+2563680*l^4*n^2"
           "-2312310*l^4*n-3060*l^6*n^2+3060*l^6*n+251370*l^4*n^4-6009164*n^7+1502291*n^8"},
      },
  };
  return data;
}

std::uint64_t ReferenceData::embedded_checksum() { return 0x6cab5936b6a47389ULL; }

std::vector<Rational> ReferenceData::coefficients() const {
  std::vector<Rational> out;
  out.reserve(coeffs_n1_l0.size());
  for (const auto& s : coeffs_n1_l0) out.push_back(Rational::parse(s));
  return out;
}

std::vector<PolyNL> ReferenceData::symbolic_eps() const {
  std::vector<PolyNL> out;
  out.reserve(symbolic.size());
  for (const auto& f : symbolic) out.push_back(f.expand());
  return out;
}

std::uint64_t ReferenceData::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= '\n';
    h *= 0x100000001b3ULL;
  };
  for (const auto& c : coeffs_n1_l0) feed(c);
  for (const auto& f : symbolic) {
    feed(std::to_string(f.order));
    feed(f.prefactor);
    feed(std::to_string(f.power));
    feed(f.inner);
  }
  return h;
}

}  // namespace hpmkit
