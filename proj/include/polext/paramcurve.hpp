#ifndef POLEXT_PARAMCURVE_HPP
#define POLEXT_PARAMCURVE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polext/extender.hpp"
#include "polext/matrix.hpp"

namespace polext {

// True iff the binary forms have no common zero on P^1: their ideal
// contains a pure power of each variable.
bool no_common_zero(std::span<const Polynomial> forms);

/// A rational curve x_i = p_i(u, v) in P^m. The forms share a degree
/// e >= 1 and have no common zero on P^1.
class CurveParametrization {
public:
  // `ambient` is the ring x_0..x_m; its variable names must differ from
  // those of the parameter ring. Throws UsageError.
  CurveParametrization(RingPtr ambient, std::vector<Polynomial> forms);

  const RingPtr& ambient_ring() const { return ambient_; }
  const RingPtr& param_ring() const { return forms_.front().ring(); }
  const std::vector<Polynomial>& forms() const { return forms_; }
  int degree() const { return degree_; }
  std::size_t ambient_dimension() const { return forms_.size() - 1; }

private:
  RingPtr ambient_;
  std::vector<Polynomial> forms_;
  int degree_;
};

// Ring x0..xm over `field`.
RingPtr make_ambient_ring(std::size_t m, const FieldSpec& field);

/// (u:v) -> (P:Q) with P, Q forms of a common degree q >= 2 without common
/// zero. Throws UsageError.
class CurveSelfMap {
public:
  CurveSelfMap(Polynomial p, Polynomial q);

  const Polynomial& p() const { return forms_[0]; }
  const Polynomial& q() const { return forms_[1]; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  int degree() const { return degree_; }

private:
  std::vector<Polynomial> forms_;
  int degree_;
};

// (P_r, Q_r) with P_1 = P and P_{k+1} = P(P_k, Q_k).
std::vector<Polynomial> iterate_selfmap(const CurveSelfMap& map, int r);

/// p_i(P_r, Q_r): the coordinate pullbacks of the r-th iterate along the
/// curve, of degree e q^r.
std::vector<Polynomial> pullbacks(const CurveParametrization& curve, const CurveSelfMap& map, int r);

/// Matrix of S_d -> k[u,v]_{e d}, x^a -> p^a. Column j holds the
/// coefficients of the j-th degree-d monomial along `rows`.
struct RestrictionMatrix {
  int degree = 0;
  DenseMatrix matrix;
  std::vector<Monomial> rows;
  std::vector<Monomial> columns;
};

RestrictionMatrix restriction_matrix(const CurveParametrization& curve, int d);

/// Echelon basis of the image of S_d in k[u,v]_{e d}. Each basis element
/// has a distinct leading `pivot` monomial; monomials that are not pivots
/// are `missing`, and an element of the degree-(e d) part lies in the image
/// iff its residual against the basis vanishes.
struct ImageBasis {
  int degree = 0;
  RingPtr ring;
  // All monomials of k[u,v]_{e d}, descending.
  std::vector<Monomial> monomials;
  std::size_t rank = 0;
  std::vector<Polynomial> basis;
  std::vector<Monomial> pivots;
  std::vector<Monomial> missing;

  // f minus its projection along the basis; supported on `missing`.
  Polynomial residual(const Polynomial& f) const;
};

ImageBasis image_basis(const CurveParametrization& curve, int d);

struct Obstruction {
  // Index i of the pullback that has no lift.
  std::size_t index = 0;
  // Its residual against the image basis: nonzero, supported on missing monomials.
  Polynomial residual;
  // Row combination killing the restriction matrix but not the pullback.
  Inconsistency certificate;

  std::vector<Monomial> monomials() const;
};

struct LiftReport {
  int r = 0;
  bool liftable = false;
  std::size_t image_rank = 0;
  std::vector<Polynomial> pullbacks;
  // Forms F_i of degree q^r with F_i(p) = pullbacks_i; set iff liftable.
  std::vector<Polynomial> lifts;
  std::vector<Obstruction> obstructions;

  // Union of the obstructing monomials, descending.
  std::vector<Monomial> obstructing_monomials() const;
};

LiftReport liftability(const CurveParametrization& curve, const CurveSelfMap& map, int r);

/// Generators of the kernel of x_i -> p_i: elimination of u, v from the
/// graph ideal, returned as a reduced grevlex basis in the ambient ring.
std::vector<Polynomial> implicitize(const CurveParametrization& curve);

/// For r = 1, 2, ... up to the configured r (only that r under a fixed
/// policy): check liftability, record obstructions in the transcript and
/// run extend_lifts on the first r that lifts and builds.
ExtensionOutcome end_to_end_extend(const CurveParametrization& curve, const CurveSelfMap& map,
                                   const ExtensionConfig& config);

/// verify_extension against the implicitized ideal and fresh lifts, with
/// the parametrization replay substitute(psi_i, p) == pullbacks_i.
VerificationReport verify_curve_extension(const CurveParametrization& curve,
                                          const CurveSelfMap& map, const ExtensionResult& result);

}  // namespace polext

#endif
