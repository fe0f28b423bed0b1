#include "polext/dynsys.hpp"

#include <algorithm>
#include <climits>
#include <unordered_map>

#include "polext/text.hpp"

namespace polext {

namespace {

GroebnerBasis checked_basis(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw UsageError("a variety needs at least one generator");
  for (const Polynomial& f : gens) {
    if (!same_ring(f.ring(), ring)) throw UsageError("ideal generator lives in another ring");
    if (f.is_zero() || f.total_degree() < 1 || !f.is_homogeneous())
      throw UsageError("ideal generator is not homogeneous of positive degree: " + format(f));
  }
  return buchberger(gens);
}

int checked_power(int q, int r) {
  long long v = 1;
  for (int i = 0; i < r; ++i) {
    v *= q;
    if (v > INT_MAX / 2) throw UsageError("iterate degree q^r is too large");
  }
  return static_cast<int>(v);
}

}  // namespace

ProjectiveVariety::ProjectiveVariety(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)),
      generators_(std::move(generators)),
      groebner_(checked_basis(ring_, generators_)),
      dimension_(affine_dimension(groebner_) - 1) {
  if (is_projectively_empty(groebner_)) throw UsageError("the ideal has no projective zero");
}

int ProjectiveVariety::max_generator_degree() const {
  int d = 0;
  for (const Polynomial& f : generators_) d = std::max(d, f.total_degree());
  return d;
}

bool ProjectiveVariety::contains(std::span<const Scalar> point) const {
  if (point.size() != ring_->size()) throw UsageError("point has the wrong number of coordinates");
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Polynomial& f) { return f.evaluate(point).is_zero(); });
}

std::vector<CheckItem> ValidationReport::violations() const {
  std::vector<CheckItem> out;
  for (const CheckItem& c : checks)
    if (!c.passed) out.push_back(c);
  return out;
}

ValidationReport validate_system(const ProjectiveVariety& variety, int q,
                                 std::vector<Polynomial> map_forms) {
  ValidationReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
    return passed;
  };

  add("polarization degree", q >= 2, "q = " + std::to_string(q) + (q >= 2 ? "" : ", need q >= 2"));

  const std::size_t expected = variety.ambient_dimension() + 1;
  bool shape_ok = add("arity", map_forms.size() == expected,
                      std::to_string(map_forms.size()) + " forms for " + std::to_string(expected) +
                          " coordinates");
  for (const Polynomial& g : map_forms)
    if (!same_ring(g.ring(), variety.ring()))
      throw UsageError("map form lives in another ring than the variety");

  std::string bad_degree;
  for (std::size_t i = 0; i < map_forms.size(); ++i) {
    const Polynomial& g = map_forms[i];
    if (g.is_zero() || !g.is_homogeneous(q)) {
      bad_degree = "g" + std::to_string(i) + " = " + format(g) + " is not a nonzero form of degree " +
                   std::to_string(q);
      break;
    }
  }
  shape_ok = add("map degree", bad_degree.empty(),
                 bad_degree.empty() ? "all forms of degree " + std::to_string(q) : bad_degree) &&
             shape_ok;
  if (!shape_ok) return report;

  const GroebnerBasis& ideal = variety.groebner();
  std::string witness;
  for (std::size_t k = 0; k < variety.generators().size(); ++k) {
    const Polynomial& f = variety.generators()[k];
    const Polynomial nf = normal_form(substitute(f, map_forms), ideal);
    if (!nf.is_zero()) {
      witness = "f" + std::to_string(k) + " = " + format(f) + " pulls back to normal form " +
                format_exact(nf);
      break;
    }
  }
  add("invariance", witness.empty(),
      witness.empty() ? "every generator pulls back into the ideal" : witness);

  std::vector<Polynomial> joint = variety.generators();
  joint.insert(joint.end(), map_forms.begin(), map_forms.end());
  const GroebnerBasis base = buchberger(joint);
  const bool empty = is_projectively_empty(base);
  std::string detail = "forms have no common zero on the variety";
  if (!empty) {
    detail = "common zero locus on the variety has dimension " +
             std::to_string(affine_dimension(base) - 1);
  }
  add("base-point-free", empty, detail);

  if (report.violations().empty())
    report.system = PolarizedSystem(variety, q, std::move(map_forms));
  return report;
}

std::vector<Polynomial> iterate_pullback(const PolarizedSystem& sys, int r) {
  if (r < 1) throw UsageError("iterate index must be >= 1");
  checked_power(sys.degree(), r);
  std::vector<Polynomial> current = sys.map_forms();
  const GroebnerBasis& ideal = sys.variety().groebner();
  for (int step = 1; step < r; ++step) {
    std::vector<Polynomial> next = compose(sys.map_forms(), current);
    for (Polynomial& h : next) h = normal_form(h, ideal);
    current = std::move(next);
  }
  return current;
}

PolarizedSystem iterate_system(const PolarizedSystem& sys, int r) {
  const int degree = checked_power(sys.degree(), r);
  return PolarizedSystem(sys.variety(), degree, iterate_pullback(sys, r));
}

RationalPoint::RationalPoint(std::vector<Scalar> coordinates) : coords_(std::move(coordinates)) {
  if (coords_.empty()) throw UsageError("a point needs coordinates");
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& c) { return !c.is_zero(); });
  if (first == coords_.end()) throw UsageError("all coordinates are zero");
  const FieldSpec field = first->field();
  for (const Scalar& c : coords_)
    if (!c.same_field(*first)) throw UsageError("point coordinates belong to different fields");
  if (!field.is_rational()) {
    const Scalar scale = first->inverse();
    for (Scalar& c : coords_) c *= scale;
    return;
  }
  mpz_class den = 1;
  for (const Scalar& c : coords_)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  mpz_class content = 0;
  for (const Scalar& c : coords_) {
    const mpz_class n = c.rational().get_num() * (den / c.rational().get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  if (sgn(first->rational()) < 0) content = -content;
  const Scalar scale(field, den, content);
  for (Scalar& c : coords_) c *= scale;
}

std::string RationalPoint::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ':';
    out += coords_[i].to_string();
  }
  return out;
}

RationalPoint parse_point(const std::string& text, const FieldSpec& field, std::size_t line) {
  std::vector<Scalar> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(text.find(':', start), text.size());
    std::string item = text.substr(start, end - start);
    const auto lo = item.find_first_not_of(" \t");
    const auto hi = item.find_last_not_of(" \t");
    item = lo == std::string::npos ? "" : item.substr(lo, hi - lo + 1);
    const std::size_t slash = item.find('/');
    mpz_class num;
    mpz_class den = 1;
    const std::string num_text = item.substr(0, slash);
    bool ok = !num_text.empty() && num.set_str(num_text, 10) == 0;
    if (ok && slash != std::string::npos) ok = den.set_str(item.substr(slash + 1), 10) == 0 && den != 0;
    if (!ok) throw ParseError("bad point coordinate '" + item + "'", line, start + 1);
    coords.push_back(field.is_rational() ? Scalar(field, num, den)
                                         : Scalar(field, num) / Scalar(field, den));
    if (end == text.size()) break;
    start = end + 1;
  }
  return RationalPoint(std::move(coords));
}

RationalPoint evaluate(std::span<const Polynomial> map_forms, const RationalPoint& p) {
  std::vector<Scalar> image;
  image.reserve(map_forms.size());
  bool all_zero = true;
  for (const Polynomial& g : map_forms) {
    if (g.ring()->size() != p.coordinates().size())
      throw UsageError("point has the wrong number of coordinates");
    image.push_back(g.evaluate(p.coordinates()));
    all_zero = all_zero && image.back().is_zero();
  }
  if (all_zero) throw IndeterminacyError("every form vanishes at " + p.to_string());
  return RationalPoint(std::move(image));
}

std::vector<RationalPoint> OrbitReport::cycle_points() const {
  if (!preperiodic) return {};
  return {orbit.begin() + static_cast<std::ptrdiff_t>(tail),
          orbit.begin() + static_cast<std::ptrdiff_t>(tail + cycle)};
}

OrbitReport orbit_classify(const PolarizedSystem& sys, const RationalPoint& p,
                           std::size_t max_steps) {
  if (!sys.variety().contains(p.coordinates()))
    throw UsageError("point " + p.to_string() + " does not lie on the variety");
  OrbitReport report;
  std::unordered_map<std::string, std::size_t> seen;
  report.orbit.push_back(p);
  seen.emplace(p.to_string(), 0);
  for (std::size_t step = 1; step <= max_steps; ++step) {
    RationalPoint next = evaluate(sys.map_forms(), report.orbit.back());
    auto [it, inserted] = seen.emplace(next.to_string(), step);
    if (!inserted) {
      report.preperiodic = true;
      report.tail = it->second;
      report.cycle = step - it->second;
      return report;
    }
    report.orbit.push_back(std::move(next));
  }
  return report;
}

}  // namespace polext
