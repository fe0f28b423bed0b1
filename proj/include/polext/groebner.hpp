#ifndef POLEXT_GROEBNER_HPP
#define POLEXT_GROEBNER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polext/polynomial.hpp"

namespace polext {

/// Reduced Gröbner basis of the ideal generated by `source_generators`.
///
/// Elements are inter-reduced, sorted by leading monomial descending and
/// normalized (integer-primitive with positive leading coefficient over Q,
/// monic over F_p). Instances only come out of buchberger().
class GroebnerBasis {
public:
  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  const std::vector<Polynomial>& source_generators() const { return sources_; }

  bool is_unit() const;
  bool is_zero_ideal() const { return elements_.empty(); }
  // Every source generator is homogeneous.
  bool is_homogeneous() const;

private:
  friend GroebnerBasis buchberger(std::span<const Polynomial>, const MonomialOrder&);
  GroebnerBasis(RingPtr ring, MonomialOrder order) : ring_(std::move(ring)), order_(order) {}

  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> elements_;
  std::vector<Polynomial> sources_;
};

/// Buchberger's algorithm with the Gebauer-Möller pair update (product
/// and chain criteria) and normal pair selection: smallest lcm degree
/// first, ties by the term order. Zero generators are dropped.
GroebnerBasis buchberger(std::span<const Polynomial> generators,
                         const MonomialOrder& order = MonomialOrder::grevlex());

// Cancels leading terms; scaled so the result has integer coefficients
// over Q (content removed).
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// The unique remainder of f modulo G: no term divisible by a leading
/// monomial of G and f - result in the ideal. Exact (never rescaled).
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g);

struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division recording quotients:
/// f = sum quotients[i] * divisors[i] + remainder.
Division divide(const Polynomial& f, std::span<const Polynomial> divisors);

bool is_member(const Polynomial& f, const GroebnerBasis& g);

/// Basis of the degree-n part I_n of a homogeneous ideal.
struct GradedPiece {
  int degree = 0;
  std::vector<Polynomial> basis;
  // dim S_n
  std::size_t ambient_dimension = 0;

  std::size_t dimension() const { return basis.size(); }
};

GradedPiece graded_piece(const GroebnerBasis& g, int n);

// dim (S/I)_n: degree-n monomials outside the leading-term ideal.
std::size_t hilbert_function(const GroebnerBasis& g, int n);

/// Krull dimension of S/I from the leading-term ideal: number of variables
/// minus the smallest set of variables meeting the support of every
/// leading monomial. -1 for the unit ideal.
int affine_dimension(const GroebnerBasis& g);

/// A homogeneous ideal has no projective zero iff every variable has a
/// pure power among the leading monomials.
bool is_projectively_empty(const GroebnerBasis& g);

/// Prime used by certified_dimension for rational inputs (2^61 - 1).
inline constexpr std::uint64_t kCertificationPrime = 2305843009213693951ULL;

/// Affine dimension of the cone V(generators) over the algebraic closure,
/// for homogeneous generators, certified without a Gröbner basis over Q.
///
/// Over F_p this is affine_dimension(buchberger(generators)). Over Q the
/// generators are cleared to integer-primitive form and reduced modulo
/// `prime`; by upper semicontinuity of fiber dimension for the projective
/// scheme over Spec Z, the result is an upper bound for the dimension over
/// Q. When it equals nvars - (number of generators) it is exact, since
/// each equation cuts the cone by at most one dimension.
int certified_dimension(std::span<const Polynomial> generators,
                        std::uint64_t prime = kCertificationPrime);

/// Elements of G free of the first k variables, rewritten in the ring of
/// the remaining variables (grevlex). G must use block_elimination(k);
/// k = 0 returns G's elements unchanged.
std::vector<Polynomial> elimination_ideal(const GroebnerBasis& g, std::size_t k);

// buchberger with block_elimination(k) followed by elimination_ideal.
std::vector<Polynomial> eliminate(std::span<const Polynomial> generators, std::size_t k);

}  // namespace polext

#endif
