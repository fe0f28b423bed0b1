#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace polext;
using namespace testing_support;

namespace {

Monomial random_monomial(std::size_t n, int max_exp, Rng& rng) {
  Monomial m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, static_cast<int>(rng() % (max_exp + 1)));
  return m;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(PolyArith, Examples) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  EXPECT_EQ(poly(x, "x1^2 - x0*x2") + poly(x, "x0*x2"), poly(x, "x1^2"));
  EXPECT_EQ(poly(x, "x0 + x1") * poly(x, "x0 - x1"), poly(x, "x0^2 - x1^2"));
  EXPECT_EQ(poly(x, "2*x0") * q(1, 2), poly(x, "x0"));
  EXPECT_TRUE((poly(x, "x0") - poly(x, "x0")).is_zero());
}

TEST(PolyArith, RingMismatch) {
  const RingPtr a = ring({"x0", "x1"});
  const RingPtr b = ring({"y0", "y1"});
  EXPECT_THROW(poly(a, "x0") + poly(b, "y0"), UsageError);
  EXPECT_THROW(poly(a, "x0") * poly(b, "y0"), UsageError);
}

TEST(PolyArith, TermsStayCanonical) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  Rng rng(3);
  const MonomialOrder order = MonomialOrder::grevlex();
  for (int t = 0; t < 50; ++t) {
    const Polynomial f = random_homogeneous(x, 2, 3, rng) * random_homogeneous(x, 1, 3, rng) +
                         random_homogeneous(x, 3, 3, rng);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_FALSE(f.terms()[i].coeff.is_zero());
      if (i > 0) EXPECT_TRUE(order.greater(f.terms()[i - 1].mono, f.terms()[i].mono));
    }
  }
}

TEST(MonomialOrder, Axioms) {
  Rng rng(17);
  for (const MonomialOrder& order : {MonomialOrder::grevlex(), MonomialOrder::lex(),
                                     MonomialOrder::block_elimination(2)}) {
    for (int t = 0; t < 500; ++t) {
      const Monomial a = random_monomial(4, 3, rng);
      const Monomial b = random_monomial(4, 3, rng);
      const Monomial c = random_monomial(4, 3, rng);
      const int ab = order.compare(a, b);
      EXPECT_EQ(ab == 0, a == b);
      EXPECT_EQ(ab, -order.compare(b, a));
      EXPECT_GE(order.compare(a, Monomial(4)), 0);
      if (ab < 0) EXPECT_LT(order.compare(a * c, b * c), 0);
      if (ab < 0 && order.compare(b, c) < 0) EXPECT_LT(order.compare(a, c), 0);
    }
  }
}

TEST(MonomialOrder, GrevlexTieBreak) {
  // Within a degree the earlier-listed variable is larger; among x1^2 and
  // x0*x2 the smaller power of the last variable wins.
  const RingPtr x = ring({"x0", "x1", "x2"});
  const MonomialOrder order = MonomialOrder::grevlex();
  EXPECT_TRUE(order.greater(poly(x, "x0").leading_monomial(), poly(x, "x1").leading_monomial()));
  EXPECT_TRUE(order.greater(poly(x, "x1^2").leading_monomial(), poly(x, "x0*x2").leading_monomial()));
  EXPECT_EQ(poly(x, "x0*x2 - x1^2").leading_monomial(), poly(x, "x1^2").leading_monomial());
}

TEST(MonomialOrder, BlockSizeChecked) {
  EXPECT_THROW(MonomialOrder::block_elimination(0), UsageError);
  EXPECT_THROW(MonomialOrder::block_elimination(3).check_compatible(3), UsageError);
  EXPECT_NO_THROW(MonomialOrder::block_elimination(2).check_compatible(3));
}

TEST(Substitute, QuadricVanishesOnQuintic) {
  const RingPtr x = ring({"x0", "x1", "x2", "x3"});
  const RingPtr uv = uv_ring();
  const auto images = polys(uv, {"u^5", "u^4*v", "u*v^4", "v^5"});
  EXPECT_TRUE(substitute(poly(x, "x0*x3 - x1*x2"), images).is_zero());
}

TEST(Substitute, ConicExamples) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  const RingPtr uv = uv_ring();
  const auto images = polys(uv, {"u^2", "u*v", "v^2"});
  EXPECT_EQ(substitute(poly(x, "x0"), images), poly(uv, "u^2"));
  EXPECT_EQ(substitute(poly(x, "x1^2"), images), poly(uv, "u^2*v^2"));
  EXPECT_EQ(substitute(poly(x, "x1^2"), images), substitute(poly(x, "x0*x2"), images));
}

TEST(Substitute, ArityChecked) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  const RingPtr uv = uv_ring();
  EXPECT_THROW(substitute(poly(x, "x0"), polys(uv, {"u", "v"})), UsageError);
}

TEST(Substitute, IsARingHomomorphismAndMultipliesDegrees) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  const RingPtr uv = uv_ring();
  Rng rng(99);
  for (int t = 0; t < 40; ++t) {
    const int d1 = 1 + static_cast<int>(rng() % 3), d2 = 1 + static_cast<int>(rng() % 2);
    const int e = 1 + static_cast<int>(rng() % 3);
    const Polynomial f = random_homogeneous(x, d1, 4, rng);
    const Polynomial g = random_homogeneous(x, d2, 4, rng);
    const Polynomial h = random_homogeneous(x, d1, 4, rng);
    std::vector<Polynomial> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_homogeneous(uv, e, 3, rng));
    EXPECT_EQ(substitute(f * g, images), substitute(f, images) * substitute(g, images));
    EXPECT_EQ(substitute(f + h, images), substitute(f, images) + substitute(h, images));
    const Polynomial s = substitute(f, images);
    EXPECT_TRUE(s.is_zero() || s.is_homogeneous(d1 * e));
  }
}

TEST(Homogeneity, ProductDegreesAdd) {
  const RingPtr x = ring({"x0", "x1", "x2", "x3"});
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const int d1 = static_cast<int>(rng() % 4), d2 = static_cast<int>(rng() % 4);
    const Polynomial p = random_homogeneous(x, d1, 5, rng) * random_homogeneous(x, d2, 5, rng);
    EXPECT_TRUE(p.is_zero() || p.is_homogeneous(d1 + d2));
  }
}

TEST(MonomialsOfDegree, Counts) {
  const RingPtr uv = uv_ring();
  const auto ten = monomials_of_degree(*uv, 10);
  ASSERT_EQ(ten.size(), 11u);
  EXPECT_EQ(format_monomial(ten.front(), *uv), "u^10");
  EXPECT_EQ(format_monomial(ten.back(), *uv), "v^10");
  EXPECT_EQ(monomials_of_degree(*ring({"x0", "x1", "x2", "x3"}), 2).size(), 10u);
  const auto one = monomials_of_degree(*uv, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].is_one());
  for (std::size_t v = 1; v <= 5; ++v) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < v; ++i) names.push_back("y" + std::to_string(i));
    const RingPtr r = ring(names);
    for (int n = 0; n <= 6; ++n) {
      const auto monos = monomials_of_degree(*r, n);
      EXPECT_EQ(monos.size(), binomial(n + v - 1, v - 1));
      for (std::size_t i = 1; i < monos.size(); ++i)
        EXPECT_TRUE(MonomialOrder::grevlex().greater(monos[i - 1], monos[i]));
    }
  }
}

TEST(RandomHomogeneous, ContractAndVariety) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  Rng rng(12345);
  std::set<std::string> supports;
  for (int t = 0; t < 1000; ++t) {
    const Polynomial f = random_homogeneous(x, 2, 1, rng);
    EXPECT_TRUE(f.is_homogeneous(2));
    std::string s;
    for (const Term& term : f.terms()) s += format_monomial(term.mono, *x) + ";";
    supports.insert(s);
  }
  EXPECT_GE(supports.size(), 2u);
  Rng a(5), b(5);
  EXPECT_EQ(random_homogeneous(x, 3, 10, a), random_homogeneous(x, 3, 10, b));
}

TEST(Text, RoundTrips) {
  const RingPtr x = ring({"x0", "x1", "x2", "x3"});
  const RingPtr uv = uv_ring();
  EXPECT_EQ(format(poly(x, "x0*x3 - x1*x2")), "x1*x2 - x0*x3");
  EXPECT_EQ(format(poly(uv, "u^2 + u*v + v^2")), "u^2 + u*v + v^2");
  EXPECT_EQ(format(poly(x, "(1/2)*x0^2")), "x0^2");
  EXPECT_EQ(format_exact(poly(x, "(1/2)*x0^2")), "1/2*x0^2");
  EXPECT_EQ(format(poly(x, "-x1*x2 + x0*x3")), "x1*x2 - x0*x3");
  EXPECT_EQ(format(poly(x, "x0*x3 - x1*x2 - (x0*x3 - x1*x2)")), "0");
  EXPECT_EQ(format(poly(x, "3")), "1");
  EXPECT_EQ(format_exact(poly(x, "-2*(x0 + x1)^2")), "-2*x0^2 - 4*x0*x1 - 2*x1^2");
}

TEST(Text, ParseOfPrintIsIdentityOnCanonicalForms) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const Polynomial f = random_homogeneous(x, 1 + static_cast<int>(rng() % 4), 20, rng);
    const Polynomial canon = f.normalized();
    EXPECT_EQ(poly(x, format(f)), canon);
    EXPECT_EQ(format(poly(x, format(f))), format(f));
    EXPECT_EQ(poly(x, format_exact(f)), f);
  }
}

TEST(Text, Precedence) {
  const RingPtr x = ring({"x0", "x1"});
  EXPECT_EQ(poly(x, "2*x0^2"), poly(x, "2*(x0^2)"));
  EXPECT_EQ(poly(x, "x0 + x1*x0"), poly(x, "x0 + (x1*x0)"));
  EXPECT_EQ(poly(x, "-x0^2"), poly(x, "-(x0^2)"));
  EXPECT_EQ(poly(x, "x0 - x1 - x0"), poly(x, "-x1"));
  EXPECT_EQ(poly(x, " x0 *  x1 "), poly(x, "x0*x1"));
}

TEST(Text, Errors) {
  const RingPtr x = ring({"x0", "x1"});
  try {
    parse_polynomial("x0 + y", x, MonomialOrder::grevlex(), 3, 5);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 10u);
  }
  EXPECT_THROW(poly(x, "x0 +"), ParseError);
  EXPECT_THROW(poly(x, "x0^-1"), ParseError);
  EXPECT_THROW(poly(x, "x0^x1"), ParseError);
  EXPECT_THROW(poly(x, "(x0"), ParseError);
  EXPECT_THROW(poly(x, "1/0"), ParseError);
  EXPECT_THROW(poly(x, ""), ParseError);
}

TEST(Text, NormalizeTuplePreservesRatios) {
  const RingPtr x = ring({"x0", "x1", "x2"});
  const auto tuple = polys(x, {"-1/2*x0^2", "3/4*x1^2", "x0*x2"});
  const auto scaled = normalize_tuple(tuple);
  EXPECT_EQ(formatted(scaled), formatted(tuple));
  EXPECT_EQ(format_exact(scaled[0]), "2*x0^2");
  EXPECT_EQ(format_exact(scaled[1]), "-3*x1^2");
  EXPECT_EQ(format_exact(scaled[2]), "-4*x0*x2");
  // Each entry is the input times one common factor.
  const Scalar factor = scaled[0].leading_coeff() / tuple[0].leading_coeff();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(scaled[i], tuple[i] * factor);
}

TEST(PrimeField, ArithmeticAndPrinting) {
  const FieldSpec f = FieldSpec::prime(1000003, 2);
  const RingPtr x = ring({"x0", "x1"}, f);
  const Polynomial g = poly(x, "2*x0 - 4*x1");
  EXPECT_EQ(format(g), "x0 - 2*x1");
  EXPECT_EQ(format(poly(x, "1000003*x0 + x1")), "x1");
  EXPECT_EQ(reduce_modulo(poly(ring({"x0", "x1"}), "1/2*x0 - 3/2*x1"), x), poly(x, "x0 - 3*x1"));
}
