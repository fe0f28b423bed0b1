#ifndef POLEXT_DYNSYS_HPP
#define POLEXT_DYNSYS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polext/groebner.hpp"

namespace polext {

struct ValidationReport;

/// X = V(I) in P^m, where I is given by homogeneous generators in the
/// coordinate ring x_0..x_m. The caller supplies the full (saturated,
/// radical) ideal of X; only homogeneity and nonemptiness are checked.
class ProjectiveVariety {
public:
  // Throws UsageError if a generator is not homogeneous of degree >= 1 or
  // the zero locus is empty.
  ProjectiveVariety(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  // m, for X inside P^m.
  std::size_t ambient_dimension() const { return ring_->size() - 1; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const GroebnerBasis& groebner() const { return groebner_; }
  // dim X
  int dimension() const { return dimension_; }
  int max_generator_degree() const;

  bool contains(std::span<const Scalar> point) const;

private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  GroebnerBasis groebner_;
  int dimension_;
};

/// A self-map phi of X with phi^* O(1) = O(q), q >= 2, given by the forms
/// g_i representing phi^* x_i modulo I. Only validate_system() and
/// iterate_system() construct one.
class PolarizedSystem {
public:
  const ProjectiveVariety& variety() const { return variety_; }
  int degree() const { return q_; }
  const std::vector<Polynomial>& map_forms() const { return forms_; }

private:
  friend ValidationReport validate_system(const ProjectiveVariety&, int,
                                          std::vector<Polynomial>);
  friend PolarizedSystem iterate_system(const PolarizedSystem&, int);
  PolarizedSystem(ProjectiveVariety variety, int q, std::vector<Polynomial> forms)
      : variety_(std::move(variety)), q_(q), forms_(std::move(forms)) {}

  ProjectiveVariety variety_;
  int q_;
  std::vector<Polynomial> forms_;
};

struct CheckItem {
  std::string name;
  bool passed = false;
  // Witness for failures, short summary for passes.
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckItem> checks;
  std::optional<PolarizedSystem> system;

  bool ok() const { return system.has_value(); }
  std::vector<CheckItem> violations() const;
};

/// Checks q >= 2, arity and degrees of the forms, invariance (f_k(g) in I)
/// and base-point-freeness on X (I + (g_0..g_m) has no projective zero).
ValidationReport validate_system(const ProjectiveVariety& variety, int q,
                                 std::vector<Polynomial> map_forms);

/// (phi^r)^* x_i: out_r = NF(g(out_{r-1})) with out_1 = g unreduced.
std::vector<Polynomial> iterate_pullback(const PolarizedSystem& sys, int r);

// The system (X, phi^r) with degree q^r.
PolarizedSystem iterate_system(const PolarizedSystem& sys, int r);

/// A point of P^m in canonical coordinates: over Q coprime integers with the
/// first nonzero coordinate positive; over F_p first nonzero coordinate 1.
class RationalPoint {
public:
  // Throws UsageError on the all-zero tuple.
  explicit RationalPoint(std::vector<Scalar> coordinates);

  const std::vector<Scalar>& coordinates() const { return coords_; }
  std::string to_string() const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;

private:
  std::vector<Scalar> coords_;
};

// "a:b:c" with integer or a/b entries. `line` locates parse errors.
RationalPoint parse_point(const std::string& text, const FieldSpec& field, std::size_t line = 1);

class IndeterminacyError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Throws IndeterminacyError if every form vanishes at p.
RationalPoint evaluate(std::span<const Polynomial> map_forms, const RationalPoint& p);

struct OrbitReport {
  bool preperiodic = false;
  // phi^tail(P) is the first point that recurs, with period `cycle`.
  std::size_t tail = 0;
  std::size_t cycle = 0;
  // P, phi(P), ... as far as computed.
  std::vector<RationalPoint> orbit;

  // Points of the eventual cycle; empty unless preperiodic.
  std::vector<RationalPoint> cycle_points() const;
};

/// Iterates up to `max_steps` times and reports the first repetition.
/// Throws UsageError if p does not lie on X.
OrbitReport orbit_classify(const PolarizedSystem& sys, const RationalPoint& p,
                           std::size_t max_steps);

}  // namespace polext

#endif
