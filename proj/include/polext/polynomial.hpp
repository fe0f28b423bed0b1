#ifndef POLEXT_POLYNOMIAL_HPP
#define POLEXT_POLYNOMIAL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polext/field.hpp"
#include "polext/monomial.hpp"

namespace polext {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// Polynomial ring k[v_0, ..., v_{n-1}] with named variables.
class PolyRing {
public:
  static RingPtr make(std::vector<std::string> variables, const FieldSpec& field);

  const std::vector<std::string>& variables() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const FieldSpec& field() const { return field_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

private:
  PolyRing(std::vector<std::string> names, const FieldSpec& field)
      : names_(std::move(names)), field_(field) {}

  std::vector<std::string> names_;
  FieldSpec field_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Scalar coeff;
  Monomial mono;
};

/// A polynomial with terms strictly descending in its order and no zero
/// coefficients; the zero polynomial has no terms.
class Polynomial {
public:
  explicit Polynomial(RingPtr ring, MonomialOrder order = MonomialOrder::grevlex());

  // Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial constant(RingPtr ring, const Scalar& c,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(RingPtr ring, std::size_t index,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Scalar& c,
                             MonomialOrder order = MonomialOrder::grevlex());

  const RingPtr& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_->field(); }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Precondition: nonzero.
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }

  // Largest total degree among terms; -1 for zero.
  int total_degree() const;
  // Zero counts as homogeneous of every degree.
  bool is_homogeneous() const;
  bool is_homogeneous(int degree) const;

  // Coefficient of m, zero if absent.
  Scalar coefficient(const Monomial& m) const;

  Polynomial with_order(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(Polynomial f, const Scalar& c) { return f *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial f) { return f *= c; }

  Polynomial mul_term(const Scalar& c, const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  // a*f - b*m*g in one merge pass. Both operands share ring and order.
  static Polynomial axpy(const Scalar& a, const Polynomial& f, const Scalar& b, const Monomial& m,
                         const Polynomial& g);

  Scalar evaluate(std::span<const Scalar> point) const;

  friend bool operator==(const Polynomial& f, const Polynomial& g);

  // Canonical representative of k^* f: over Q integer coefficients with
  // content 1 and positive leading coefficient; over F_p monic.
  Polynomial normalized() const;

private:
  Polynomial(RingPtr ring, MonomialOrder order, std::vector<Term> sorted_terms);
  void check_compatible(const Polynomial& g) const;

  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

/// f(images_0, ..., images_{n-1}) where f lives in the target ring and
/// every image lives in one common source ring.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);

// Composition of tuples: out_i = outer_i(inner).
std::vector<Polynomial> compose(std::span<const Polynomial> outer,
                                std::span<const Polynomial> inner);

/// All monomials of total degree n, descending in `order`.
std::vector<Monomial> monomials_of_degree(const PolyRing& ring, int n,
                                          const MonomialOrder& order = MonomialOrder::grevlex());

// Sum of c_m * m over monomials of degree n with c_m from random_scalar.
Polynomial random_homogeneous(const RingPtr& ring, int n, std::int64_t bound, Rng& rng,
                              const MonomialOrder& order = MonomialOrder::grevlex());

/// Coefficients of a homogeneous polynomial along a fixed monomial basis.
std::vector<Scalar> coefficient_vector(const Polynomial& f, std::span<const Monomial> basis);

Polynomial from_coefficients(const RingPtr& ring, std::span<const Monomial> basis,
                             std::span<const Scalar> coeffs,
                             const MonomialOrder& order = MonomialOrder::grevlex());

/// Image of f under Z_(p) -> F_p after clearing denominators: the
/// integer-primitive representative of f reduced coefficientwise into
/// `target`, a ring with the same variables over F_p.
Polynomial reduce_modulo(const Polynomial& f, const RingPtr& target);

}  // namespace polext

#endif
