#include "polext/groebner.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include "polext/matrix.hpp"

namespace polext {

namespace {

// Over Q every polynomial handled here has integer coefficients; reductions
// cross-multiply instead of dividing so no fractions ever form.

mpz_class integer_content(const Polynomial& p) {
  mpz_class g = 0;
  for (const Term& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class denominator_lcm(const Polynomial& p) {
  mpz_class l = 1;
  for (const Term& t : p.terms())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.rational().get_den_mpz_t());
  return l;
}

struct Reduced {
  Polynomial remainder;
  // remainder = scale * f - (combination of the basis)
  Scalar scale;
};

const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial* const> basis) {
  for (const Polynomial* g : basis)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

Reduced reduce(const Polynomial& f, std::span<const Polynomial* const> basis) {
  const FieldSpec field = f.field();
  const bool rational = field.is_rational();
  Polynomial p = f;
  Scalar scale = Scalar::one(field);
  if (rational) {
    const mpz_class l = denominator_lcm(p);
    if (l != 1) {
      const Scalar ls(field, l);
      p *= ls;
      scale *= ls;
    }
  }
  std::size_t k = 0;
  unsigned steps = 0;
  while (k < p.size()) {
    const Term& t = p.terms()[k];
    const Polynomial* g = find_reducer(t.mono, basis);
    if (g == nullptr) {
      ++k;
      continue;
    }
    const Monomial m = t.mono / g->leading_monomial();
    if (rational) {
      mpz_class a = g->leading_coeff().rational().get_num();
      mpz_class c = t.coeff.rational().get_num();
      mpz_class d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      if (a < 0) {
        a = -a;
        c = -c;
      }
      const Scalar as(field, a);
      p = Polynomial::axpy(as, p, Scalar(field, c), m, *g);
      scale *= as;
      if (++steps % 16 == 0) {
        const mpz_class cont = integer_content(p);
        if (cont > 1) {
          const Scalar inv(field, mpz_class(1), cont);
          p *= inv;
          scale *= inv;
        }
      }
    } else {
      const Scalar c = t.coeff / g->leading_coeff();
      p = Polynomial::axpy(Scalar::one(field), p, c, m, *g);
    }
  }
  return {std::move(p), std::move(scale)};
}

std::vector<const Polynomial*> pointers(std::span<const Polynomial> polys) {
  std::vector<const Polynomial*> out;
  out.reserve(polys.size());
  for (const Polynomial& p : polys) out.push_back(&p);
  return out;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Engine {
public:
  explicit Engine(const MonomialOrder& order) : order_(order) {}

  // Returns false once the unit ideal is detected.
  bool insert(Polynomial h) {
    if (h.leading_monomial().is_one()) return false;
    polys_.push_back(std::move(h));
    update(polys_.size() - 1);
    return true;
  }

  bool run() {
    while (!pairs_.empty()) {
      const std::size_t sel = select();
      const Pair pair = pairs_[sel];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(sel));
      const Polynomial s = s_polynomial(polys_[pair.i], polys_[pair.j]);
      Polynomial h = reduce_by_active(s);
      if (h.is_zero()) continue;
      if (!insert(h.normalized())) return false;
    }
    return true;
  }

  Polynomial reduce_by_active(const Polynomial& f) const {
    std::vector<const Polynomial*> basis;
    basis.reserve(active_.size());
    for (std::size_t a : active_) basis.push_back(&polys_[a]);
    return reduce(f, basis).remainder;
  }

  std::vector<Polynomial> reduced_basis() const {
    std::vector<const Polynomial*> minimal;
    for (std::size_t a : active_) minimal.push_back(&polys_[a]);
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial* x, const Polynomial* y) {
      return order_.greater(x->leading_monomial(), y->leading_monomial());
    });
    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<const Polynomial*> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      out.push_back(reduce(*minimal[i], others).remainder.normalized());
    }
    return out;
  }

private:
  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.lcm.degree() != b.lcm.degree()) {
        if (a.lcm.degree() < b.lcm.degree()) best = k;
        continue;
      }
      const int c = order_.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) best = k;
    }
    return best;
  }

  // Gebauer-Möller update for the new element t.
  void update(std::size_t t) {
    const Monomial& lt = polys_[t].leading_monomial();
    std::vector<Pair> fresh;
    for (std::size_t a : active_) fresh.push_back({a, t, lcm(polys_[a].leading_monomial(), lt)});

    std::vector<Pair> kept;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      const Pair& p = fresh[k];
      if (coprime(polys_[p.i].leading_monomial(), lt)) {
        kept.push_back(p);
        continue;
      }
      bool dominated = false;
      for (std::size_t l = k + 1; l < fresh.size() && !dominated; ++l)
        dominated = fresh[l].lcm.divides(p.lcm);
      for (const Pair& q : kept) {
        if (dominated) break;
        dominated = q.lcm.divides(p.lcm);
      }
      if (!dominated) kept.push_back(p);
    }

    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      const bool chain = lt.divides(p.lcm) &&
                         !(lcm(polys_[p.i].leading_monomial(), lt) == p.lcm) &&
                         !(lcm(polys_[p.j].leading_monomial(), lt) == p.lcm);
      if (!chain) next.push_back(p);
    }
    for (const Pair& p : kept)
      if (!coprime(polys_[p.i].leading_monomial(), lt)) next.push_back(p);
    pairs_ = std::move(next);

    std::vector<std::size_t> survivors;
    for (std::size_t a : active_)
      if (!lt.divides(polys_[a].leading_monomial())) survivors.push_back(a);
    survivors.push_back(t);
    active_ = std::move(survivors);
  }

  MonomialOrder order_;
  std::vector<Polynomial> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

void require_homogeneous_graded(const GroebnerBasis& g) {
  if (!g.is_homogeneous()) throw UsageError("operation requires a homogeneous ideal");
  if (!g.order().is_graded()) throw UsageError("operation requires a graded monomial order");
}

}  // namespace

bool GroebnerBasis::is_unit() const {
  return elements_.size() == 1 && elements_.front().leading_monomial().is_one();
}

bool GroebnerBasis::is_homogeneous() const {
  return std::all_of(sources_.begin(), sources_.end(),
                     [](const Polynomial& p) { return p.is_homogeneous(); });
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const FieldSpec field = f.field();
  const Monomial mf = l / f.leading_monomial();
  const Monomial mg = l / g.leading_monomial();
  if (field.is_rational()) {
    Polynomial fi = f * Scalar(field, denominator_lcm(f));
    Polynomial gi = g * Scalar(field, denominator_lcm(g));
    mpz_class a = fi.leading_coeff().rational().get_num();
    mpz_class b = gi.leading_coeff().rational().get_num();
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
    return Polynomial::axpy(Scalar(field, b), fi.mul_term(Scalar::one(field), mf), Scalar(field, a),
                            mg, gi);
  }
  const Scalar one = Scalar::one(field);
  return Polynomial::axpy(one, f.mul_term(f.leading_coeff().inverse(), mf),
                          g.leading_coeff().inverse(), mg, g);
}

GroebnerBasis buchberger(std::span<const Polynomial> generators, const MonomialOrder& order) {
  if (generators.empty()) throw UsageError("buchberger needs at least one generator");
  const RingPtr ring = generators.front().ring();
  order.check_compatible(ring->size());
  for (const Polynomial& f : generators)
    if (!same_ring(f.ring(), ring)) throw UsageError("generators belong to different rings");

  GroebnerBasis out(ring, order);
  out.sources_.assign(generators.begin(), generators.end());

  Engine engine(order);
  bool proper = true;
  for (const Polynomial& f : generators) {
    if (f.is_zero()) continue;
    Polynomial h = engine.reduce_by_active(f.with_order(order));
    if (h.is_zero()) continue;
    if (!engine.insert(h.normalized())) {
      proper = false;
      break;
    }
  }
  if (proper) proper = engine.run();
  if (!proper) {
    out.elements_.push_back(Polynomial::constant(ring, Scalar::one(ring->field()), order));
  } else {
    out.elements_ = engine.reduced_basis();
  }
  return out;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) {
  if (!same_ring(f.ring(), g.ring())) throw UsageError("polynomial and basis belong to different rings");
  const Polynomial h = f.with_order(g.order());
  if (h.is_zero()) return h;
  Reduced r = reduce(h, pointers(g.elements()));
  if (!r.scale.is_one()) r.remainder *= r.scale.inverse();
  return r.remainder;
}

Division divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  const FieldSpec field = f.field();
  for (const Polynomial& d : divisors) {
    if (!same_ring(d.ring(), f.ring())) throw UsageError("divisor from a different ring");
    if (!(d.order() == f.order())) throw UsageError("divisor uses a different order");
  }
  std::vector<std::vector<Term>> quotient_terms(divisors.size());
  Polynomial p = f;
  std::size_t k = 0;
  while (k < p.size()) {
    const Term& t = p.terms()[k];
    std::size_t i = 0;
    while (i < divisors.size() &&
           (divisors[i].is_zero() || !divisors[i].leading_monomial().divides(t.mono)))
      ++i;
    if (i == divisors.size()) {
      ++k;
      continue;
    }
    const Scalar c = t.coeff / divisors[i].leading_coeff();
    const Monomial m = t.mono / divisors[i].leading_monomial();
    quotient_terms[i].push_back({c, m});
    p = Polynomial::axpy(Scalar::one(field), p, c, m, divisors[i]);
  }
  Division out{{}, p};
  for (auto& terms : quotient_terms)
    out.quotients.push_back(Polynomial::from_terms(f.ring(), std::move(terms), f.order()));
  return out;
}

bool is_member(const Polynomial& f, const GroebnerBasis& g) {
  return f.is_zero() || normal_form(f, g).is_zero();
}

GradedPiece graded_piece(const GroebnerBasis& g, int n) {
  require_homogeneous_graded(g);
  const RingPtr& ring = g.ring();
  const FieldSpec field = ring->field();
  const std::vector<Monomial> mons = monomials_of_degree(*ring, n, g.order());
  DenseMatrix rows(field, mons.size(), mons.size());
  for (std::size_t r = 0; r < mons.size(); ++r) {
    const Polynomial m = Polynomial::monomial(ring, mons[r], Scalar::one(field), g.order());
    const std::vector<Scalar> v = coefficient_vector(m - normal_form(m, g), mons);
    for (std::size_t c = 0; c < mons.size(); ++c) rows(r, c) = v[c];
  }
  const RrefResult red = rref(rows);
  GradedPiece piece;
  piece.degree = n;
  piece.ambient_dimension = mons.size();
  for (std::size_t r = 0; r < red.rank; ++r) {
    std::vector<Scalar> v(mons.size(), Scalar::zero(field));
    for (std::size_t c = 0; c < mons.size(); ++c) v[c] = red.reduced(r, c);
    piece.basis.push_back(from_coefficients(ring, mons, v, g.order()).normalized());
  }
  return piece;
}

std::size_t hilbert_function(const GroebnerBasis& g, int n) {
  require_homogeneous_graded(g);
  std::size_t count = 0;
  for (const Monomial& m : monomials_of_degree(*g.ring(), n, g.order())) {
    const bool standard = std::none_of(g.elements().begin(), g.elements().end(),
                                       [&](const Polynomial& e) {
                                         return e.leading_monomial().divides(m);
                                       });
    if (standard) ++count;
  }
  return count;
}

namespace {

// Smallest number of variables hitting every support set; branch on the
// variables of the first unhit set.
int min_transversal(std::span<const std::uint32_t> supports, std::uint32_t chosen, int size,
                    int best) {
  if (size >= best) return best;
  for (std::uint32_t s : supports) {
    if ((s & chosen) != 0) continue;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      best = min_transversal(supports, chosen | bit, size + 1, best);
    }
    return best;
  }
  return size;
}

}  // namespace

int affine_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  const int nvars = static_cast<int>(g.ring()->size());
  std::vector<std::uint32_t> supports;
  for (const Polynomial& e : g.elements()) supports.push_back(e.leading_monomial().support_mask());
  // Fewer variables per set first tightens the bound sooner.
  std::sort(supports.begin(), supports.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return nvars - min_transversal(supports, 0, 0, nvars + 1);
}

bool is_projectively_empty(const GroebnerBasis& g) {
  if (!g.is_homogeneous()) throw UsageError("projective emptiness requires a homogeneous ideal");
  if (g.is_unit()) return true;
  const std::size_t nvars = g.ring()->size();
  std::vector<bool> has_power(nvars, false);
  for (const Polynomial& e : g.elements()) {
    const std::uint32_t mask = e.leading_monomial().support_mask();
    if (std::popcount(mask) == 1) has_power[static_cast<std::size_t>(std::countr_zero(mask))] = true;
  }
  return std::all_of(has_power.begin(), has_power.end(), [](bool b) { return b; });
}

int certified_dimension(std::span<const Polynomial> generators, std::uint64_t prime) {
  if (generators.empty()) throw UsageError("certified_dimension needs generators");
  for (const Polynomial& f : generators)
    if (!f.is_homogeneous()) throw UsageError("certified_dimension needs homogeneous generators");
  const RingPtr& ring = generators.front().ring();
  if (!ring->field().is_rational()) return affine_dimension(buchberger(generators));
  const RingPtr fp = PolyRing::make(ring->variables(), FieldSpec::prime(prime));
  std::vector<Polynomial> reduced;
  reduced.reserve(generators.size());
  for (const Polynomial& f : generators)
    reduced.push_back(reduce_modulo(f.with_order(MonomialOrder::grevlex()), fp));
  return affine_dimension(buchberger(reduced));
}

std::vector<Polynomial> elimination_ideal(const GroebnerBasis& g, std::size_t k) {
  if (k == 0) return g.elements();
  if (g.order().kind() != MonomialOrder::Kind::block_elimination || g.order().first_block_size() != k)
    throw UsageError("elimination needs a basis in block_elimination order with matching block");
  const RingPtr& ring = g.ring();
  std::vector<std::string> tail(ring->variables().begin() + static_cast<std::ptrdiff_t>(k),
                                ring->variables().end());
  const RingPtr small = PolyRing::make(std::move(tail), ring->field());
  const std::uint32_t block_mask = (1u << k) - 1;
  std::vector<Polynomial> out;
  for (const Polynomial& e : g.elements()) {
    const bool free = std::all_of(e.terms().begin(), e.terms().end(), [&](const Term& t) {
      return (t.mono.support_mask() & block_mask) == 0;
    });
    if (!free) continue;
    std::vector<Term> terms;
    for (const Term& t : e.terms()) {
      Monomial m(small->size());
      for (std::size_t i = 0; i < small->size(); ++i) m.set(i, t.mono[k + i]);
      terms.push_back({t.coeff, m});
    }
    out.push_back(Polynomial::from_terms(small, std::move(terms)).normalized());
  }
  return out;
}

std::vector<Polynomial> eliminate(std::span<const Polynomial> generators, std::size_t k) {
  if (k == 0) return buchberger(generators).elements();
  return elimination_ideal(buchberger(generators, MonomialOrder::block_elimination(k)), k);
}

}  // namespace polext
