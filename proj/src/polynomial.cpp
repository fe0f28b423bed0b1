#include "polext/polynomial.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace polext {

RingPtr PolyRing::make(std::vector<std::string> variables, const FieldSpec& field) {
  if (variables.empty()) throw UsageError("a ring needs at least one variable");
  if (variables.size() > kMaxVariables)
    throw UsageError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  std::unordered_set<std::string> seen;
  for (const std::string& v : variables) {
    if (v.empty()) throw UsageError("empty variable name");
    if (!seen.insert(v).second) throw UsageError("duplicate variable name '" + v + "'");
  }
  return RingPtr(new PolyRing(std::move(variables), field));
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

Polynomial::Polynomial(RingPtr ring, MonomialOrder order)
    : ring_(std::move(ring)), order_(order) {
  order_.check_compatible(ring_->size());
}

Polynomial::Polynomial(RingPtr ring, MonomialOrder order, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), order_(order), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms, MonomialOrder order) {
  order.check_compatible(ring->size());
  for (const Term& t : terms) {
    if (t.mono.size() != ring->size()) throw UsageError("monomial arity does not match ring");
    if (!t.coeff.same_field(Scalar::zero(ring->field())))
      throw UsageError("coefficient from a different field");
  }
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (Term& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return Polynomial(std::move(ring), order, std::move(out));
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c, MonomialOrder order) {
  const std::size_t n = ring->size();
  return monomial(std::move(ring), Monomial(n), c, order);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index, MonomialOrder order) {
  const std::size_t n = ring->size();
  const Scalar one = Scalar::one(ring->field());
  return monomial(std::move(ring), Monomial::variable(n, index), one, order);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Scalar& c,
                                MonomialOrder order) {
  std::vector<Term> terms;
  terms.push_back({c, m});
  return from_terms(std::move(ring), std::move(terms), order);
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || is_homogeneous(static_cast<int>(terms_.front().mono.degree()));
}

bool Polynomial::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return static_cast<int>(t.mono.degree()) == degree; });
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  for (const Term& t : terms_)
    if (t.mono == m) return t.coeff;
  return Scalar::zero(field());
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  return from_terms(ring_, terms_, order);
}

void Polynomial::check_compatible(const Polynomial& g) const {
  if (!same_ring(ring_, g.ring_)) throw UsageError("polynomials belong to different rings");
  if (!(order_ == g.order_)) throw UsageError("polynomials use different monomial orders");
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Polynomial Polynomial::axpy(const Scalar& a, const Polynomial& f, const Scalar& b,
                            const Monomial& m, const Polynomial& g) {
  f.check_compatible(g);
  std::vector<Term> out;
  out.reserve(f.terms_.size() + g.terms_.size());
  const bool a_one = a.is_one();
  auto fi = f.terms_.begin();
  auto gi = g.terms_.begin();
  while (fi != f.terms_.end() || gi != g.terms_.end()) {
    if (gi == g.terms_.end()) {
      out.push_back({a_one ? fi->coeff : a * fi->coeff, fi->mono});
      ++fi;
      continue;
    }
    Monomial gm = gi->mono * m;
    const int cmp = fi == f.terms_.end() ? -1 : f.order_.compare(fi->mono, gm);
    if (cmp > 0) {
      out.push_back({a_one ? fi->coeff : a * fi->coeff, fi->mono});
      ++fi;
    } else if (cmp < 0) {
      out.push_back({-(b * gi->coeff), gm});
      ++gi;
    } else {
      Scalar c = a_one ? fi->coeff : a * fi->coeff;
      c -= b * gi->coeff;
      if (!c.is_zero()) out.push_back({std::move(c), gm});
      ++fi;
      ++gi;
    }
  }
  return Polynomial(f.ring_, f.order_, std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  const Scalar one = Scalar::one(field());
  *this = axpy(one, *this, -one, Monomial(ring_->size()), g);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  const Scalar one = Scalar::one(field());
  *this = axpy(one, *this, one, Monomial(ring_->size()), g);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.check_compatible(g);
  if (f.is_zero() || g.is_zero()) return Polynomial(f.ring_, f.order_);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(f.size() * g.size());
  for (const Term& a : f.terms_)
    for (const Term& b : g.terms_) {
      Monomial m = a.mono * b.mono;
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(m, a.coeff * b.coeff);
      } else {
        it->second += a.coeff * b.coeff;
      }
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({std::move(c), m});
  return Polynomial::from_terms(f.ring_, std::move(terms), f.order_);
}

Polynomial Polynomial::mul_term(const Scalar& c, const Monomial& m) const {
  if (c.is_zero()) return Polynomial(ring_, order_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) out.push_back({t.coeff * c, t.mono * m});
  return Polynomial(ring_, order_, std::move(out));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, Scalar::one(field()), order_);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != ring_->size()) throw UsageError("point arity does not match ring");
  std::vector<std::vector<Scalar>> powers(point.size());
  Scalar sum = Scalar::zero(field());
  for (const Term& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      const std::size_t e = t.mono[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Scalar::one(field()));
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      v *= pw[e];
    }
    sum += v;
  }
  return sum;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (!same_ring(f.ring_, g.ring_) || f.terms_.size() != g.terms_.size()) return false;
  const Polynomial& h = f.order_ == g.order_ ? g : g.with_order(f.order_);
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (!(f.terms_[i].mono == h.terms_[i].mono) || !(f.terms_[i].coeff == h.terms_[i].coeff))
      return false;
  }
  return true;
}

Polynomial Polynomial::normalized() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  if (field().is_rational()) {
    mpz_class l = 1, g = 0;
    for (const Term& t : terms_) {
      const mpq_class& q = t.coeff.rational();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
    mpq_class scale(l, g);
    scale.canonicalize();
    if (sgn(leading_coeff().rational()) < 0) scale = -scale;
    out *= Scalar(field(), scale.get_num(), scale.get_den());
  } else {
    out *= leading_coeff().inverse();
  }
  return out;
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (images.size() != f.ring()->size())
    throw UsageError("substitute needs one image per variable of the target ring");
  if (images.empty()) throw UsageError("substitute needs images");
  const RingPtr& src = images.front().ring();
  const MonomialOrder& order = images.front().order();
  for (const Polynomial& img : images) {
    if (!same_ring(img.ring(), src)) throw UsageError("substitution images live in different rings");
    if (!(img.order() == order)) throw UsageError("substitution images use different orders");
  }
  if (f.field() != src->field()) throw UsageError("substitution across different fields");

  std::vector<std::vector<Polynomial>> powers(images.size());
  Polynomial result(src, order);
  for (const Term& t : f.terms()) {
    Polynomial prod = Polynomial::constant(src, t.coeff, order);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const std::size_t e = t.mono[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial::constant(src, Scalar::one(src->field()), order));
      while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
      prod = prod * pw[e];
    }
    result += prod;
  }
  return result;
}

std::vector<Polynomial> compose(std::span<const Polynomial> outer,
                                std::span<const Polynomial> inner) {
  std::vector<Polynomial> out;
  out.reserve(outer.size());
  for (const Polynomial& f : outer) out.push_back(substitute(f, inner));
  return out;
}

namespace {

void enumerate(std::size_t var, int remaining, std::vector<int>& exps, std::size_t nvars,
               std::vector<Monomial>& out) {
  if (var + 1 == nvars) {
    exps[var] = remaining;
    out.emplace_back(nvars, exps);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[var] = e;
    enumerate(var + 1, remaining - e, exps, nvars, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const PolyRing& ring, int n, const MonomialOrder& order) {
  if (n < 0) throw UsageError("degree must be nonnegative");
  std::vector<Monomial> out;
  std::vector<int> exps(ring.size(), 0);
  enumerate(0, n, exps, ring.size(), out);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return out;
}

Polynomial random_homogeneous(const RingPtr& ring, int n, std::int64_t bound, Rng& rng,
                              const MonomialOrder& order) {
  std::vector<Term> terms;
  for (const Monomial& m : monomials_of_degree(*ring, n, order))
    terms.push_back({random_scalar(ring->field(), bound, rng), m});
  return Polynomial::from_terms(ring, std::move(terms), order);
}

std::vector<Scalar> coefficient_vector(const Polynomial& f, std::span<const Monomial> basis) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<Scalar> out(basis.size(), Scalar::zero(f.field()));
  for (const Term& t : f.terms()) {
    auto it = index.find(t.mono);
    if (it == index.end()) throw UsageError("polynomial has a term outside the monomial basis");
    out[it->second] = t.coeff;
  }
  return out;
}

Polynomial from_coefficients(const RingPtr& ring, std::span<const Monomial> basis,
                             std::span<const Scalar> coeffs, const MonomialOrder& order) {
  if (basis.size() != coeffs.size()) throw UsageError("coefficient count does not match basis");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) terms.push_back({coeffs[i], basis[i]});
  return Polynomial::from_terms(ring, std::move(terms), order);
}

Polynomial reduce_modulo(const Polynomial& f, const RingPtr& target) {
  if (!f.field().is_rational() || target->field().is_rational())
    throw UsageError("reduce_modulo maps rational polynomials into a prime field");
  if (target->variables() != f.ring()->variables())
    throw UsageError("reduce_modulo needs matching variables");
  std::vector<Term> terms;
  const Polynomial primitive = f.normalized();
  for (const Term& t : primitive.terms())
    terms.push_back({Scalar(target->field(), t.coeff.rational().get_num()), t.mono});
  return Polynomial::from_terms(target, std::move(terms), f.order());
}

}  // namespace polext
