#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace polext;
using namespace testing_support;

namespace {

std::vector<std::string> monomial_names(const std::vector<Monomial>& ms, const PolyRing& r) {
  std::vector<std::string> out;
  for (const Monomial& m : ms) out.push_back(format_monomial(m, r));
  return out;
}

// u-exponents reachable as a sum of d exponents drawn from `exps`.
std::set<int> sumset(const std::vector<int>& exps, int d) {
  std::set<int> out{0};
  for (int k = 0; k < d; ++k) {
    std::set<int> next;
    for (int s : out)
      for (int e : exps) next.insert(s + e);
    out = next;
  }
  return out;
}

std::optional<CurveSelfMap> random_selfmap(const RingPtr& uv, Rng& rng) {
  try {
    return CurveSelfMap(random_homogeneous(uv, 2, 3, rng), random_homogeneous(uv, 2, 3, rng));
  } catch (const UsageError&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Curve, Construction) {
  const RingPtr uv = uv_ring();
  EXPECT_EQ(quintic(uv).degree(), 5);
  EXPECT_EQ(quintic(uv).ambient_dimension(), 3u);
  const RingPtr x = make_ambient_ring(2, uv->field());
  EXPECT_THROW(CurveParametrization(x, polys(uv, {"u^2", "u*v", "u^2"})), UsageError);
  EXPECT_THROW(CurveParametrization(x, polys(uv, {"u^2", "u*v", "v^3"})), UsageError);
  EXPECT_THROW(CurveParametrization(x, polys(uv, {"u^2", "v^2"})), UsageError);
  EXPECT_THROW(CurveSelfMap(poly(uv, "u"), poly(uv, "v")), UsageError);
  EXPECT_THROW(CurveSelfMap(poly(uv, "u^2"), poly(uv, "u*v")), UsageError);
  EXPECT_TRUE(no_common_zero(polys(uv, {"u^2 + v^2", "u*v"})));
  EXPECT_FALSE(no_common_zero(polys(uv, {"u^2 - v^2", "u*v - v^2"})));
}

TEST(SelfMap, Iterates) {
  const RingPtr uv = uv_ring();
  const auto second = iterate_selfmap(squaring_map(uv), 2);
  EXPECT_EQ(formatted(second), (std::vector<std::string>{"u^4", "v^4"}));
  const auto abc = iterate_selfmap(abc_map(uv), 2);
  EXPECT_EQ(format_exact(abc[1]),
            format_exact(poly(uv, "(u^2 + u*v + v^2)*(u*v + v^2) + (u*v + v^2)^2")));
}

TEST(Pullbacks, DegreesAndValues) {
  const RingPtr uv = uv_ring();
  const auto p = pullbacks(quintic(uv), abc_map(uv), 1);
  ASSERT_EQ(p.size(), 4u);
  for (const Polynomial& f : p) EXPECT_TRUE(f.is_homogeneous(10));
  EXPECT_EQ(p[0], poly(uv, "(u^2 + u*v + v^2)^5"));
  EXPECT_EQ(p[2], poly(uv, "(u^2 + u*v + v^2)*(u*v + v^2)^4"));
  for (const Polynomial& f : pullbacks(quintic(uv), abc_map(uv), 2)) EXPECT_TRUE(f.is_homogeneous(20));
}

TEST(Restriction, QuinticDegreeTwo) {
  const RingPtr uv = uv_ring();
  const RestrictionMatrix m = restriction_matrix(quintic(uv), 2);
  EXPECT_EQ(m.matrix.rows(), 11u);
  EXPECT_EQ(m.matrix.cols(), 10u);
  EXPECT_EQ(rref(m.matrix).rank, 9u);
}

TEST(Restriction, ConicDegreeOneIsAPermutation) {
  const RingPtr uv = uv_ring();
  const RestrictionMatrix m = restriction_matrix(conic_curve(uv), 1);
  EXPECT_EQ(m.matrix, DenseMatrix::identity(FieldSpec::rationals(), 3));
}

TEST(ImageBasis, QuinticMonomials) {
  const RingPtr uv = uv_ring();
  const ImageBasis b = image_basis(quintic(uv), 2);
  EXPECT_EQ(b.rank, 9u);
  EXPECT_EQ(monomial_names(b.pivots, *uv),
            (std::vector<std::string>{"u^10", "u^9*v", "u^8*v^2", "u^6*v^4", "u^5*v^5", "u^4*v^6",
                                      "u^2*v^8", "u*v^9", "v^10"}));
  EXPECT_EQ(monomial_names(b.missing, *uv), (std::vector<std::string>{"u^7*v^3", "u^3*v^7"}));
  EXPECT_EQ(image_basis(quintic(uv), 4).rank, 21u);
}

TEST(ImageBasis, MonomialCurvesMatchSumsets) {
  // For a monomial curve the image is spanned by monomials whose
  // u-exponents are sums of d exponents of the parametrization.
  const RingPtr uv = uv_ring();
  const std::vector<std::pair<std::vector<int>, std::size_t>> curves{
      {{5, 4, 1, 0}, 3}, {{3, 2, 1, 0}, 3}, {{2, 1, 0}, 2}, {{4, 3, 0}, 2}, {{5, 3, 1, 0}, 3}};
  for (const auto& [exps, m] : curves) {
    const int e = exps.front();
    std::vector<Polynomial> forms;
    for (int a : exps)
      forms.push_back(poly(uv, "u^" + std::to_string(a) + "*v^" + std::to_string(e - a)));
    const CurveParametrization curve(make_ambient_ring(m, uv->field()), forms);
    for (int d = 1; d <= 4; ++d) {
      const ImageBasis b = image_basis(curve, d);
      std::set<int> got;
      for (const Monomial& p : b.pivots) got.insert(p[0]);
      EXPECT_EQ(got, sumset(exps, d)) << "e=" << e << " d=" << d;
      EXPECT_EQ(b.rank + b.missing.size(), static_cast<std::size_t>(e * d + 1));
    }
  }
}

TEST(ImageBasis, ResidualIsAProjection) {
  const RingPtr uv = uv_ring();
  const ImageBasis b = image_basis(quintic(uv), 2);
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const Polynomial f = random_homogeneous(uv, 10, 9, rng);
    const Polynomial r = b.residual(f);
    EXPECT_EQ(b.residual(r), r);
    for (const Term& term : r.terms())
      EXPECT_NE(std::find(b.missing.begin(), b.missing.end(), term.mono), b.missing.end());
    const Polynomial g = random_homogeneous(make_ambient_ring(3, uv->field()), 2, 9, rng);
    EXPECT_TRUE(b.residual(substitute(g, quintic(uv).forms())).is_zero());
  }
}

TEST(Liftability, SquaringLiftsOnTheQuintic) {
  const RingPtr uv = uv_ring();
  const LiftReport report = liftability(quintic(uv), squaring_map(uv), 1);
  EXPECT_TRUE(report.liftable);
  EXPECT_TRUE(report.obstructions.empty());
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_EQ(substitute(report.lifts[i], quintic(uv).forms()), report.pullbacks[i]);
}

TEST(Liftability, GenericMapObstructedAtFirstIterate) {
  const RingPtr uv = uv_ring();
  const LiftReport report = liftability(quintic(uv), abc_map(uv), 1);
  EXPECT_FALSE(report.liftable);
  EXPECT_TRUE(report.lifts.empty());
  EXPECT_EQ(report.image_rank, 9u);
  EXPECT_EQ(monomial_names(report.obstructing_monomials(), *uv),
            (std::vector<std::string>{"u^7*v^3", "u^3*v^7"}));
  // u^7*v^3 in (u^2 + u*v + v^2)^5: (u^2)^2 (u*v)^3 in 10 ways, (u^2)^3 (u*v) (v^2) in 20.
  const Polynomial p5 = report.pullbacks[0];
  EXPECT_EQ(p5.coefficient(Monomial(2, std::vector<int>{7, 3})), q(30));
}

TEST(Liftability, ObstructionCertificatesAreSound) {
  const RingPtr uv = uv_ring();
  const CurveParametrization curve = quintic(uv);
  const LiftReport report = liftability(curve, abc_map(uv), 1);
  const RestrictionMatrix m = restriction_matrix(curve, 2);
  ASSERT_FALSE(report.obstructions.empty());
  for (const Obstruction& o : report.obstructions) {
    const auto& y = o.certificate.multiplier;
    for (const Scalar& s : m.matrix.apply_left(y)) EXPECT_TRUE(s.is_zero());
    const auto b = coefficient_vector(report.pullbacks[o.index], m.rows);
    Scalar yb = q(0);
    for (std::size_t i = 0; i < b.size(); ++i) yb += y[i] * b[i];
    EXPECT_EQ(yb, o.certificate.residual);
    EXPECT_FALSE(yb.is_zero());
    EXPECT_FALSE(o.residual.is_zero());
  }
}

TEST(Liftability, SecondIterateLifts) {
  const RingPtr uv = uv_ring();
  const LiftReport report = liftability(quintic(uv), abc_map(uv), 2);
  EXPECT_TRUE(report.liftable);
  EXPECT_EQ(report.image_rank, 21u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(report.lifts[i].is_homogeneous(4));
    EXPECT_EQ(substitute(report.lifts[i], quintic(uv).forms()), report.pullbacks[i]);
  }
}

TEST(Liftability, RationalNormalCurvesAlwaysLift) {
  // S_d maps onto k[u,v]_{3d} for the twisted cubic, so every self-map lifts.
  const RingPtr uv = uv_ring();
  Rng rng(10);
  int tried = 0;
  while (tried < 15) {
    const auto map = random_selfmap(uv, rng);
    if (!map) continue;
    ++tried;
    const LiftReport report = liftability(twisted_cubic(uv), *map, 1);
    ASSERT_TRUE(report.liftable);
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_EQ(substitute(report.lifts[i], twisted_cubic(uv).forms()), report.pullbacks[i]);
  }
}

TEST(Liftability, AgreesWithResidualRoute) {
  // liftable iff every pullback has zero residual against the image basis.
  const RingPtr uv = uv_ring();
  Rng rng(12);
  int tried = 0;
  while (tried < 10) {
    const auto map = random_selfmap(uv, rng);
    if (!map) continue;
    ++tried;
    const LiftReport report = liftability(quintic(uv), *map, 1);
    const ImageBasis b = image_basis(quintic(uv), 2);
    bool all_zero = true;
    for (const Polynomial& p : report.pullbacks) all_zero = all_zero && b.residual(p).is_zero();
    EXPECT_EQ(report.liftable, all_zero);
  }
}

TEST(Implicitize, Conic) {
  const RingPtr uv = uv_ring();
  EXPECT_EQ(formatted(implicitize(conic_curve(uv))), (std::vector<std::string>{"x1^2 - x0*x2"}));
}

TEST(Implicitize, TwistedCubic) {
  const RingPtr uv = uv_ring();
  const auto gens = implicitize(twisted_cubic(uv));
  EXPECT_EQ(gens.size(), 3u);
  for (const Polynomial& g : gens) EXPECT_TRUE(g.is_homogeneous(2));
}

TEST(Implicitize, GeneratorsVanishAndSpanTheKernelInLowDegree) {
  const RingPtr uv = uv_ring();
  for (const CurveParametrization& curve : {conic_curve(uv), twisted_cubic(uv), quintic(uv)}) {
    const auto gens = implicitize(curve);
    for (const Polynomial& g : gens) EXPECT_TRUE(substitute(g, curve.forms()).is_zero());
    const GroebnerBasis g = buchberger(gens);
    for (int d = 1; d <= 4; ++d) {
      const RestrictionMatrix m = restriction_matrix(curve, d);
      EXPECT_EQ(graded_piece(g, d).dimension(), m.matrix.cols() - rref(m.matrix).rank) << d;
    }
  }
}

TEST(Implicitize, Quintic) {
  const RingPtr uv = uv_ring();
  const auto gens = implicitize(quintic(uv));
  const GroebnerBasis g = buchberger(gens);
  EXPECT_EQ(graded_piece(g, 2).dimension(), 1u);
  EXPECT_EQ(format(graded_piece(g, 2).basis[0]), "x1*x2 - x0*x3");
  EXPECT_EQ(affine_dimension(g), 2);
}

TEST(EndToEnd, QuinticNeedsTheSecondIterate) {
  const RingPtr uv = uv_ring();
  const ExtensionOutcome outcome = end_to_end_extend(quintic(uv), abc_map(uv), ExtensionConfig::auto_search(3));
  ASSERT_TRUE(std::holds_alternative<ExtensionResult>(outcome));
  const ExtensionResult& result = std::get<ExtensionResult>(outcome);
  EXPECT_EQ(result.r(), 2);
  const auto& events = result.transcript().events;
  EXPECT_NE(std::find(events.begin(), events.end(), "r=1: obstruction at u^7*v^3, u^3*v^7"),
            events.end());
  for (const Polynomial& h : result.psi()) EXPECT_TRUE(h.is_homogeneous(4));
  const VerificationReport report = verify_curve_extension(quintic(uv), abc_map(uv), result);
  EXPECT_TRUE(report.ok());
  bool replayed = false;
  for (const CheckItem& c : report.checks) replayed = replayed || (c.name == "parametrization replay" && c.passed);
  EXPECT_TRUE(replayed);
  const auto pb = pullbacks(quintic(uv), abc_map(uv), 2);
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_EQ(substitute(result.psi()[i], quintic(uv).forms()), pb[i]);
}

TEST(EndToEnd, FirstIterateOnlyFails) {
  const RingPtr uv = uv_ring();
  const ExtensionOutcome outcome = end_to_end_extend(quintic(uv), abc_map(uv), ExtensionConfig::auto_search(1));
  ASSERT_TRUE(std::holds_alternative<ExtensionFailure>(outcome));
  EXPECT_EQ(std::get<ExtensionFailure>(outcome).reason, "obstruction at u^7*v^3, u^3*v^7");
}

TEST(EndToEnd, ConicAndCubic) {
  const RingPtr uv = uv_ring();
  for (const CurveParametrization& curve : {conic_curve(uv), twisted_cubic(uv)}) {
    const ExtensionOutcome outcome = end_to_end_extend(curve, abc_map(uv), ExtensionConfig::auto_search(2));
    ASSERT_TRUE(std::holds_alternative<ExtensionResult>(outcome));
    const ExtensionResult& result = std::get<ExtensionResult>(outcome);
    EXPECT_EQ(result.r(), 1);
    EXPECT_TRUE(verify_curve_extension(curve, abc_map(uv), result).ok());
  }
}
