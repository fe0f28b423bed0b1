#include "polext/text.hpp"

#include <cctype>
#include <sstream>

namespace polext {

namespace {

class Parser {
public:
  Parser(std::string_view text, const RingPtr& ring, const MonomialOrder& order, std::size_t line,
         std::size_t first_column)
      : text_(text), ring_(ring), order_(order), line_(line), col0_(first_column) {}

  Polynomial run() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    Polynomial f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col0_ + pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial f = term();
    for (;;) {
      if (accept('+')) {
        f += term();
      } else if (accept('-')) {
        f -= term();
      } else {
        return f;
      }
    }
  }

  Polynomial term() {
    Polynomial f = unary();
    while (accept('*')) f = f * unary();
    return f;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a nonnegative integer literal");
      const mpz_class e = digits();
      if (e > 65535) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const mpz_class num = digits();
      mpz_class den = 1;
      if (accept('/')) {
        skip_ws();
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected denominator");
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      return Polynomial::constant(ring_, Scalar(ring_->field(), num, den), order_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *idx, order_);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  const MonomialOrder& order_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

std::string format_terms(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const Polynomial g = f.with_order(MonomialOrder::grevlex());
  const PolyRing& ring = *g.ring();
  std::ostringstream os;
  bool first = true;
  for (const Term& t : g.terms()) {
    std::string c = t.coeff.to_string();
    bool negative = !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (t.mono.is_one()) {
      os << c;
    } else {
      if (c != "1") os << c << '*';
      os << format_monomial(t.mono, ring);
    }
  }
  return os.str();
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const MonomialOrder& order,
                            std::size_t line, std::size_t first_column) {
  return Parser(text, ring, order, line, first_column).run();
}

std::string format_monomial(const Monomial& m, const PolyRing& ring) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

std::string format(const Polynomial& f) {
  return format_terms(f.with_order(MonomialOrder::grevlex()).normalized());
}

std::string format_exact(const Polynomial& f) { return format_terms(f); }

std::vector<Polynomial> normalize_tuple(std::span<const Polynomial> forms) {
  std::vector<Polynomial> out(forms.begin(), forms.end());
  const Polynomial* lead = nullptr;
  for (const Polynomial& f : forms)
    if (!f.is_zero()) {
      lead = &f;
      break;
    }
  if (lead == nullptr) return out;
  const FieldSpec field = lead->field();
  Scalar scale = Scalar::one(field);
  const Polynomial lead_g = lead->with_order(MonomialOrder::grevlex());
  if (field.is_rational()) {
    mpz_class l = 1, g = 0;
    for (const Polynomial& f : forms)
      for (const Term& t : f.terms()) {
        const mpq_class& q = t.coeff.rational();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
      }
    mpq_class s(l, g);
    s.canonicalize();
    if (sgn(lead_g.leading_coeff().rational()) < 0) s = -s;
    scale = Scalar(field, s.get_num(), s.get_den());
  } else {
    scale = lead_g.leading_coeff().inverse();
  }
  for (Polynomial& f : out) f *= scale;
  return out;
}

}  // namespace polext
