#ifndef POLEXT_TESTS_SUPPORT_HPP
#define POLEXT_TESTS_SUPPORT_HPP

#include <string>
#include <vector>

#include "polext/dynsys.hpp"
#include "polext/paramcurve.hpp"
#include "polext/text.hpp"

namespace testing_support {

using namespace polext;

inline RingPtr ring(std::vector<std::string> names, FieldSpec field = FieldSpec::rationals()) {
  return PolyRing::make(std::move(names), field);
}

inline Polynomial poly(const RingPtr& r, const std::string& text) { return parse_polynomial(text, r); }

inline std::vector<Polynomial> polys(const RingPtr& r, const std::vector<std::string>& texts) {
  std::vector<Polynomial> out;
  for (const std::string& t : texts) out.push_back(poly(r, t));
  return out;
}

inline std::vector<std::string> formatted(const std::vector<Polynomial>& fs) {
  std::vector<std::string> out;
  for (const Polynomial& f : fs) out.push_back(format(f));
  return out;
}

inline Scalar q(long n, long d = 1) { return Scalar(FieldSpec::rationals(), n, d); }

// The conic x1^2 = x0*x2 with coordinate squaring.
inline PolarizedSystem conic_system(FieldSpec field = FieldSpec::rationals()) {
  const RingPtr x = ring({"x0", "x1", "x2"}, field);
  ProjectiveVariety conic(x, {poly(x, "x1^2 - x0*x2")});
  return *validate_system(conic, 2, polys(x, {"x0^2", "x1^2", "x2^2"})).system;
}

inline RingPtr uv_ring() { return ring({"u", "v"}); }

inline CurveParametrization quintic(const RingPtr& uv) {
  return CurveParametrization(make_ambient_ring(3, uv->field()),
                              polys(uv, {"u^5", "u^4*v", "u*v^4", "v^5"}));
}

inline CurveParametrization twisted_cubic(const RingPtr& uv) {
  return CurveParametrization(make_ambient_ring(3, uv->field()),
                              polys(uv, {"u^3", "u^2*v", "u*v^2", "v^3"}));
}

inline CurveParametrization conic_curve(const RingPtr& uv) {
  return CurveParametrization(make_ambient_ring(2, uv->field()), polys(uv, {"u^2", "u*v", "v^2"}));
}

// P = u^2 + u*v + v^2, Q = u*v + v^2: all of a, b, c nonzero.
inline CurveSelfMap abc_map(const RingPtr& uv) {
  return CurveSelfMap(poly(uv, "u^2 + u*v + v^2"), poly(uv, "u*v + v^2"));
}

inline CurveSelfMap squaring_map(const RingPtr& uv) {
  return CurveSelfMap(poly(uv, "u^2"), poly(uv, "v^2"));
}

}  // namespace testing_support

#endif
