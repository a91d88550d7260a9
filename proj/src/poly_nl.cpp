#include "hpmkit/poly_nl.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace hpmkit {

bool monomial_precedes(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.n_exp > b.n_exp;
}

namespace {

bool term_precedes(const Term& a, const Term& b) { return monomial_precedes(a.monomial, b.monomial); }

// Merge two canonical term lists; sign is applied to the right-hand side.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && monomial_precedes(ia->monomial, ib->monomial))) {
      out.push_back(*ia++);
    } else if (ia == a.end() || monomial_precedes(ib->monomial, ia->monomial)) {
      out.push_back({ib->monomial, subtract ? -ib->coeff : ib->coeff});
      ++ib;
    } else {
      Rational c = subtract ? ia->coeff - ib->coeff : ia->coeff + ib->coeff;
      if (!c.is_zero()) out.push_back({ia->monomial, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PolyNL parse_all() {
    PolyNL p = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  PolyNL parse_sum() {
    PolyNL acc;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    PolyNL t = parse_product();
    acc = negative ? -t : t;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      get();
      PolyNL next = parse_product();
      if (c == '+')
        acc += next;
      else
        acc -= next;
    }
    return acc;
  }

  PolyNL parse_product() {
    PolyNL acc = parse_power();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      get();
      acc *= parse_power();
    }
    return acc;
  }

  PolyNL parse_power() {
    PolyNL base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      base = base.pow(static_cast<unsigned>(std::stoul(digits())));
    }
    return base;
  }

  PolyNL parse_atom() {
    skip_ws();
    const char c = peek();
    if (c == 'n') {
      get();
      return PolyNL::n();
    }
    if (c == 'l') {
      get();
      return PolyNL::l();
    }
    if (c == '(') {
      get();
      PolyNL inner = parse_sum();
      skip_ws();
      if (get() != ')') fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string literal = digits();
      skip_ws();
      if (peek() == '/') {
        get();
        skip_ws();
        literal += "/" + digits();
      }
      return PolyNL(Rational::parse(literal));
    }
    fail("expected a term");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  [[noreturn]] void fail(const char* why) const {
    throw Error(ErrorCode::ParseError,
                std::string("polynomial parse error at offset ") + std::to_string(pos_) + ": " + why +
                    " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyNL::PolyNL(Rational constant) {
  if (!constant.is_zero()) terms_.push_back({Monomial{}, std::move(constant)});
}

PolyNL PolyNL::n() { return monomial(Rational(1), 1, 0); }
PolyNL PolyNL::l() { return monomial(Rational(1), 0, 1); }

PolyNL PolyNL::monomial(Rational coeff, std::uint32_t n_exp, std::uint32_t l_exp) {
  PolyNL p;
  if (!coeff.is_zero()) p.terms_.push_back({Monomial{n_exp, l_exp}, std::move(coeff)});
  return p;
}

PolyNL PolyNL::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(), term_precedes);
  PolyNL p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

PolyNL PolyNL::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string PolyNL::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.sign() < 0;
    if (negative)
      out += '-';
    else if (!first)
      out += '+';
    first = false;

    std::string mono;
    auto append = [&mono](char symbol, std::uint32_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += symbol;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    append('n', t.monomial.n_exp);
    append('l', t.monomial.l_exp);

    const Rational magnitude = t.coeff.abs();
    if (mono.empty())
      out += magnitude.str();
    else if (magnitude == Rational(1))
      out += mono;
    else
      out += magnitude.str() + '*' + mono;
  }
  return out;
}

std::uint32_t PolyNL::degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

std::uint32_t PolyNL::degree_n() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.n_exp);
  return d;
}

std::uint32_t PolyNL::degree_l() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.l_exp);
  return d;
}

Rational PolyNL::coefficient(std::uint32_t n_exp, std::uint32_t l_exp) const {
  for (const auto& t : terms_)
    if (t.monomial == Monomial{n_exp, l_exp}) return t.coeff;
  return Rational(0);
}

Rational PolyNL::evaluate(const Rational& n_val, const Rational& l_val) const {
  std::vector<Rational> n_pow{Rational(1)};
  std::vector<Rational> l_pow{Rational(1)};
  const std::uint32_t dn = degree_n();
  const std::uint32_t dl = degree_l();
  for (std::uint32_t k = 1; k <= dn; ++k) n_pow.push_back(n_pow.back() * n_val);
  for (std::uint32_t k = 1; k <= dl; ++k) l_pow.push_back(l_pow.back() * l_val);
  Rational sum;
  for (const auto& t : terms_) sum += t.coeff * n_pow[t.monomial.n_exp] * l_pow[t.monomial.l_exp];
  return sum;
}

PolyNL PolyNL::operator-() const {
  PolyNL p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

PolyNL& PolyNL::operator+=(const PolyNL& rhs) {
  terms_ = merge(terms_, rhs.terms_, false);
  return *this;
}

PolyNL& PolyNL::operator-=(const PolyNL& rhs) {
  terms_ = merge(terms_, rhs.terms_, true);
  return *this;
}

PolyNL& PolyNL::operator*=(const PolyNL& rhs) {
  *this = *this * rhs;
  return *this;
}

PolyNL& PolyNL::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scalar;
  return *this;
}

PolyNL operator*(const PolyNL& a, const PolyNL& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Dense accumulation over the exponent box; degrees stay modest (a few
  // hundred at most) so the box is small compared to the coefficient sizes.
  const std::uint32_t dn = a.degree_n() + b.degree_n();
  const std::uint32_t dl = a.degree_l() + b.degree_l();
  const std::size_t stride = dl + 1;
  std::vector<mpq_class> box((dn + 1) * stride);
  std::vector<bool> touched(box.size(), false);
  mpq_class product;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const std::size_t idx = (ta.monomial.n_exp + tb.monomial.n_exp) * stride + ta.monomial.l_exp + tb.monomial.l_exp;
      mpq_mul(product.get_mpq_t(), ta.coeff.raw().get_mpq_t(), tb.coeff.raw().get_mpq_t());
      box[idx] += product;
      touched[idx] = true;
    }
  }
  std::vector<Term> terms;
  for (std::uint32_t en = 0; en <= dn; ++en)
    for (std::uint32_t el = 0; el <= dl; ++el) {
      const std::size_t idx = en * stride + el;
      if (touched[idx] && sgn(box[idx]) != 0) terms.push_back({Monomial{en, el}, Rational(std::move(box[idx]))});
    }
  return PolyNL::from_terms(std::move(terms));
}

PolyNL PolyNL::pow(unsigned exponent) const {
  PolyNL result(Rational(1));
  PolyNL base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const PolyNL& p) { return os << p.str(); }

PolyNL poly_arith(const PolyNL& p, const PolyNL& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown polynomial operation");
}

Rational poly_eval(const PolyNL& p, const Rational& n_val, const Rational& l_val) {
  return p.evaluate(n_val, l_val);
}

}  // namespace hpmkit
