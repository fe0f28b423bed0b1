#include "polext/paramcurve.hpp"

#include <algorithm>
#include <stdexcept>

#include "polext/text.hpp"

namespace polext {

namespace {

int binary_form_degree(std::span<const Polynomial> forms, const char* what) {
  if (forms.empty()) throw UsageError(std::string(what) + " needs at least one form");
  const RingPtr& ring = forms.front().ring();
  if (ring->size() != 2) throw UsageError(std::string(what) + " forms must be binary (two variables)");
  const int degree = forms.front().total_degree();
  for (const Polynomial& f : forms) {
    if (!same_ring(f.ring(), ring)) throw UsageError(std::string(what) + " forms live in different rings");
    if (f.is_zero() && forms.size() == 1) throw UsageError(std::string(what) + " form is zero");
    if (!f.is_homogeneous(degree))
      throw UsageError(std::string(what) + " forms are not homogeneous of one degree: " + format(f));
  }
  if (degree < 1) throw UsageError(std::string(what) + " forms must have positive degree");
  return degree;
}

std::string monomial_list(const std::vector<Monomial>& monos, const PolyRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_monomial(monos[i], ring);
  }
  return out;
}

}  // namespace

bool no_common_zero(std::span<const Polynomial> forms) {
  return is_projectively_empty(buchberger(forms));
}

RingPtr make_ambient_ring(std::size_t m, const FieldSpec& field) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return PolyRing::make(std::move(names), field);
}

CurveParametrization::CurveParametrization(RingPtr ambient, std::vector<Polynomial> forms)
    : ambient_(std::move(ambient)), forms_(std::move(forms)), degree_(0) {
  degree_ = binary_form_degree(forms_, "parametrization");
  if (forms_.size() != ambient_->size())
    throw UsageError("parametrization needs one form per ambient coordinate");
  if (!(ambient_->field() == param_ring()->field()))
    throw UsageError("parameter and ambient rings use different fields");
  for (const std::string& name : param_ring()->variables())
    if (ambient_->index_of(name)) throw UsageError("variable " + name + " is both parameter and coordinate");
  if (!no_common_zero(forms_)) throw UsageError("parametrization forms have a common zero on P^1");
}

CurveSelfMap::CurveSelfMap(Polynomial p, Polynomial q) : forms_{std::move(p), std::move(q)}, degree_(0) {
  degree_ = binary_form_degree(forms_, "self-map");
  if (degree_ < 2) throw UsageError("self-map degree must be >= 2");
  if (!no_common_zero(forms_)) throw UsageError("self-map forms have a common zero on P^1");
}

std::vector<Polynomial> iterate_selfmap(const CurveSelfMap& map, int r) {
  if (r < 1) throw UsageError("iterate index must be >= 1");
  std::vector<Polynomial> current = map.forms();
  for (int step = 1; step < r; ++step) current = compose(map.forms(), current);
  return current;
}

std::vector<Polynomial> pullbacks(const CurveParametrization& curve, const CurveSelfMap& map, int r) {
  if (!same_ring(map.p().ring(), curve.param_ring()))
    throw UsageError("self-map and parametrization use different parameter rings");
  return compose(curve.forms(), iterate_selfmap(map, r));
}

RestrictionMatrix restriction_matrix(const CurveParametrization& curve, int d) {
  if (d < 1) throw UsageError("restriction degree must be >= 1");
  RestrictionMatrix out{d, DenseMatrix(curve.ambient_ring()->field(), 0, 0), {}, {}};
  out.rows = monomials_of_degree(*curve.param_ring(), curve.degree() * d);
  out.columns = monomials_of_degree(*curve.ambient_ring(), d);
  DenseMatrix m(curve.ambient_ring()->field(), out.rows.size(), out.columns.size());
  for (std::size_t j = 0; j < out.columns.size(); ++j) {
    const Polynomial x = Polynomial::monomial(curve.ambient_ring(), out.columns[j],
                                              Scalar::one(curve.ambient_ring()->field()));
    const std::vector<Scalar> column = coefficient_vector(substitute(x, curve.forms()), out.rows);
    for (std::size_t i = 0; i < out.rows.size(); ++i) m(i, j) = column[i];
  }
  out.matrix = std::move(m);
  return out;
}

ImageBasis image_basis(const CurveParametrization& curve, int d) {
  const RestrictionMatrix restriction = restriction_matrix(curve, d);
  const RrefResult red = rref(restriction.matrix.transpose());
  ImageBasis out;
  out.degree = d;
  out.ring = curve.param_ring();
  out.monomials = restriction.rows;
  out.rank = red.rank;
  std::vector<bool> is_pivot(out.monomials.size(), false);
  for (std::size_t k = 0; k < red.rank; ++k) {
    std::vector<Scalar> row;
    for (std::size_t c = 0; c < red.reduced.cols(); ++c) row.push_back(red.reduced(k, c));
    out.basis.push_back(from_coefficients(out.ring, out.monomials, row));
    out.pivots.push_back(out.monomials[red.pivot_columns[k]]);
    is_pivot[red.pivot_columns[k]] = true;
  }
  for (std::size_t i = 0; i < out.monomials.size(); ++i)
    if (!is_pivot[i]) out.missing.push_back(out.monomials[i]);
  return out;
}

Polynomial ImageBasis::residual(const Polynomial& f) const {
  Polynomial out = f;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Scalar c = out.coefficient(pivots[k]);
    if (!c.is_zero()) out -= basis[k] * c;
  }
  return out;
}

std::vector<Monomial> Obstruction::monomials() const {
  std::vector<Monomial> out;
  for (const Term& t : residual.terms()) out.push_back(t.mono);
  return out;
}

std::vector<Monomial> LiftReport::obstructing_monomials() const {
  std::vector<Monomial> out;
  for (const Obstruction& o : obstructions)
    for (const Monomial& m : o.monomials())
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  const MonomialOrder order = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return out;
}

LiftReport liftability(const CurveParametrization& curve, const CurveSelfMap& map, int r) {
  LiftReport report;
  report.r = r;
  report.pullbacks = pullbacks(curve, map, r);
  const int d = iterate_selfmap(map, r).front().total_degree();
  const RestrictionMatrix restriction = restriction_matrix(curve, d);
  const ImageBasis image = image_basis(curve, d);
  report.image_rank = image.rank;
  std::vector<Polynomial> lifts;
  for (std::size_t i = 0; i < report.pullbacks.size(); ++i) {
    const Polynomial& b = report.pullbacks[i];
    const SolveResult solved = solve(restriction.matrix, coefficient_vector(b, restriction.rows));
    Polynomial residual = image.residual(b);
    // Two routes to the same answer: consistency of the linear system and
    // the residual against the echelon basis of the image.
    if (std::holds_alternative<LinearSolution>(solved) != residual.is_zero())
      throw std::logic_error("liftability routes disagree");
    if (const auto* sol = std::get_if<LinearSolution>(&solved)) {
      lifts.push_back(from_coefficients(curve.ambient_ring(), restriction.columns, sol->particular));
    } else {
      report.obstructions.push_back({i, std::move(residual), std::get<Inconsistency>(solved)});
    }
  }
  report.liftable = report.obstructions.empty();
  if (report.liftable) report.lifts = std::move(lifts);
  return report;
}

std::vector<Polynomial> implicitize(const CurveParametrization& curve) {
  const RingPtr& params = curve.param_ring();
  const RingPtr& ambient = curve.ambient_ring();
  std::vector<std::string> names = params->variables();
  names.insert(names.end(), ambient->variables().begin(), ambient->variables().end());
  const RingPtr graph_ring = PolyRing::make(names, ambient->field());

  std::vector<Polynomial> param_images;
  for (std::size_t i = 0; i < params->size(); ++i) param_images.push_back(Polynomial::variable(graph_ring, i));
  std::vector<Polynomial> graph;
  for (std::size_t i = 0; i < curve.forms().size(); ++i) {
    graph.push_back(Polynomial::variable(graph_ring, params->size() + i) -
                    substitute(curve.forms()[i], param_images));
  }
  const std::vector<Polynomial> eliminated = eliminate(graph, params->size());

  std::vector<Polynomial> coords;
  for (std::size_t i = 0; i < ambient->size(); ++i) coords.push_back(Polynomial::variable(ambient, i));
  std::vector<Polynomial> rebased;
  for (const Polynomial& f : eliminated) {
    Polynomial g = substitute(f, coords);
    if (!g.is_homogeneous()) throw std::logic_error("implicit equation is not homogeneous");
    rebased.push_back(std::move(g));
  }
  if (rebased.empty()) return {};
  return buchberger(rebased).elements();
}

ExtensionOutcome end_to_end_extend(const CurveParametrization& curve, const CurveSelfMap& map,
                                   const ExtensionConfig& config) {
  config.check();
  const ProjectiveVariety variety(curve.ambient_ring(), implicitize(curve));
  Transcript transcript;
  transcript.threshold_r = threshold_r(map.degree(), variety.max_generator_degree());
  transcript.events.push_back("r* = " + std::to_string(transcript.threshold_r) +
                              " (least r with q^r above the generator degrees)");
  Rng rng(config.seed);
  const int start = config.policy == ExtensionConfig::Policy::fixed ? config.r : 1;
  ExtensionFailure last;
  for (int r = start; r <= config.r; ++r) {
    const LiftReport lift = liftability(curve, map, r);
    if (!lift.liftable) {
      const std::string reason =
          "obstruction at " + monomial_list(lift.obstructing_monomials(), *curve.param_ring());
      transcript.events.push_back("r=" + std::to_string(r) + ": " + reason);
      last = ExtensionFailure{r, 0, reason, transcript};
      continue;
    }
    transcript.events.push_back("r=" + std::to_string(r) + ": lifts exist (image rank " +
                                std::to_string(lift.image_rank) + ")");
    ExtensionOutcome outcome = extend_lifts(variety, lift.lifts, r, config, rng, transcript);
    if (std::holds_alternative<ExtensionResult>(outcome)) return outcome;
    last = std::get<ExtensionFailure>(std::move(outcome));
    transcript = last.transcript;
  }
  last.transcript = transcript;
  return last;
}

VerificationReport verify_curve_extension(const CurveParametrization& curve,
                                          const CurveSelfMap& map, const ExtensionResult& result) {
  const ProjectiveVariety variety(curve.ambient_ring(), implicitize(curve));
  const LiftReport lift = liftability(curve, map, result.r());
  if (!lift.liftable) {
    VerificationReport report;
    report.checks.push_back({"liftability", false,
                             "no lift exists at r=" + std::to_string(result.r())});
    return report;
  }
  return verify_extension(variety, lift.lifts, result, Replay{curve.forms(), lift.pullbacks});
}

}  // namespace polext
