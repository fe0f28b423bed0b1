#include "polext/extender.hpp"

#include <algorithm>
#include <stdexcept>

#include "polext/text.hpp"

namespace polext {

namespace {

// Independent of kCertificationPrime so verification is a second route.
constexpr std::uint64_t kVerificationPrime = 2147483647ULL;

int common_degree(std::span<const Polynomial> forms) {
  int degree = -1;
  for (const Polynomial& f : forms) {
    if (f.is_zero()) continue;
    if (degree < 0) degree = f.total_degree();
    if (!f.is_homogeneous(degree)) throw UsageError("lifts are not forms of one common degree");
  }
  if (degree < 0) throw UsageError("every lift is zero");
  return degree;
}

GroebnerBasis modular_basis(std::span<const Polynomial> gens, std::uint64_t prime) {
  const RingPtr& ring = gens.front().ring();
  if (!ring->field().is_rational()) return buchberger(gens);
  const RingPtr target = PolyRing::make(ring->variables(), FieldSpec::prime(prime));
  std::vector<Polynomial> reduced;
  reduced.reserve(gens.size());
  for (const Polynomial& f : gens) reduced.push_back(reduce_modulo(f, target));
  return buchberger(reduced);
}

DenseMatrix inverse(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  DenseMatrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar::one(a.field());
  }
  const RrefResult red = rref(aug);
  if (red.rank < n || red.pivot_columns[n - 1] != n - 1) throw UsageError("matrix is singular");
  DenseMatrix out(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = red.reduced(i, n + j);
  return out;
}

DenseMatrix random_invertible(const FieldSpec& field, std::size_t n, Rng& rng) {
  while (true) {
    DenseMatrix a(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_scalar(field, 3, rng);
    if (rref(a).rank == n) return a;
  }
}

std::vector<Polynomial> linear_images(const RingPtr& ring, const DenseMatrix& m) {
  std::vector<Polynomial> images;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    Polynomial image(ring);
    for (std::size_t l = 0; l < m.cols(); ++l)
      if (!m(k, l).is_zero()) image += Polynomial::variable(ring, l) * m(k, l);
    images.push_back(std::move(image));
  }
  return images;
}

struct StepFailure {
  std::size_t step = 0;
  std::string reason;
};

using StepOutcome = std::variant<std::vector<Polynomial>, StepFailure>;

StepOutcome run_steps(const ProjectiveVariety& variety, std::span<const Polynomial> alphas, int r,
                      const ExtensionConfig& config, Rng& rng, Transcript& transcript) {
  const std::size_t m = variety.ambient_dimension();
  const FieldSpec field = variety.ring()->field();
  const int degree = common_degree(alphas);
  const GradedPiece piece = graded_piece(variety.groebner(), degree);
  const int quarter = std::max(1, config.max_retries / 4);

  std::vector<Polynomial> chosen;
  for (std::size_t j = 0; j <= m; ++j) {
    const int target = static_cast<int>(m - j);
    auto probe = [&](const Polynomial& h) {
      std::vector<Polynomial> prefix = chosen;
      prefix.push_back(h);
      return certified_dimension(prefix);
    };
    bool accepted = false;
    Attempt first{r, j, 0, "", 0, -1, target, false};
    if (!alphas[j].is_zero()) {
      first.dimension = probe(alphas[j]);
      first.accepted = accepted = first.dimension == target;
    }
    transcript.attempts.push_back(first);
    if (accepted) {
      chosen.push_back(alphas[j]);
      continue;
    }
    if (piece.basis.empty())
      return StepFailure{j, "the ideal has no elements of degree " + std::to_string(degree) +
                                " to repair with"};
    for (int k = 1; k <= config.max_retries && !accepted; ++k) {
      const int doublings = std::min((k - 1) / quarter, 40);
      const std::int64_t bound = config.coeff_bound << doublings;
      Polynomial alpha2(variety.ring());
      while (alpha2.is_zero()) {
        for (const Polynomial& b : piece.basis) alpha2 += b * random_scalar(field, bound, rng);
      }
      if (!is_member(alpha2, variety.groebner()))
        throw std::logic_error("sampled repair term left the ideal");
      Scalar c = random_scalar(field, bound, rng);
      while (c.is_zero()) c = random_scalar(field, bound, rng);
      const Polynomial h = alphas[j] + alpha2 * c;
      Attempt attempt{r, j, static_cast<std::size_t>(k), c.to_string(), bound, -1, target, false};
      if (!h.is_zero()) {
        attempt.dimension = probe(h);
        attempt.accepted = accepted = attempt.dimension == target;
      }
      transcript.attempts.push_back(attempt);
      if (accepted) chosen.push_back(h);
    }
    if (!accepted)
      return StepFailure{j, "retry budget of " + std::to_string(config.max_retries) +
                                " exhausted at step " + std::to_string(j)};
  }
  return chosen;
}

std::string matrix_text(const DenseMatrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += " ";
      out += a(i, j).to_string();
    }
  }
  return out + "]";
}

}  // namespace

ExtensionConfig ExtensionConfig::auto_search(int max_r) {
  ExtensionConfig c;
  c.policy = Policy::auto_search;
  c.r = max_r;
  return c;
}

ExtensionConfig ExtensionConfig::fixed(int r) {
  ExtensionConfig c;
  c.policy = Policy::fixed;
  c.r = r;
  return c;
}

void ExtensionConfig::check() const {
  if (r < 1) throw UsageError("r must be >= 1");
  if (max_retries < 1) throw UsageError("retry budget must be >= 1");
  if (coeff_bound < 1) throw UsageError("coefficient bound must be >= 1");
}

std::optional<ExtensionResult> ExtensionResult::certify(const ProjectiveVariety& variety,
                                                        std::span<const Polynomial> alphas, int r,
                                                        std::vector<Polynomial> psi,
                                                        Transcript transcript,
                                                        std::optional<DenseMatrix> conjugation) {
  const std::size_t n = variety.ambient_dimension() + 1;
  if (psi.size() != n || alphas.size() != n) return std::nullopt;
  Certificates cert;
  const int degree = common_degree(alphas);
  cert.degrees = std::all_of(psi.begin(), psi.end(), [&](const Polynomial& h) {
    return !h.is_zero() && h.is_homogeneous(degree) && same_ring(h.ring(), variety.ring());
  });
  if (!cert.degrees) return std::nullopt;
  cert.compatibility = true;
  for (std::size_t i = 0; i < n; ++i)
    cert.compatibility = cert.compatibility && is_member(psi[i] - alphas[i], variety.groebner());
  cert.step_dimensions_ok = true;
  for (std::size_t j = 0; j < n; ++j) {
    const int dim = certified_dimension(std::span<const Polynomial>(psi).first(j + 1));
    cert.step_dimensions.push_back(dim);
    cert.step_dimensions_ok = cert.step_dimensions_ok && dim == static_cast<int>(n - 1 - j);
  }
  cert.projective_emptiness = is_projectively_empty(modular_basis(psi, kCertificationPrime));
  if (!cert.all()) return std::nullopt;

  ExtensionResult out;
  out.r_ = r;
  out.psi_ = std::move(psi);
  out.certificates_ = std::move(cert);
  out.transcript_ = std::move(transcript);
  out.conjugation_ = std::move(conjugation);
  return out;
}

int threshold_r(int q, int max_degree) {
  if (q < 2) throw UsageError("threshold needs q >= 2");
  int r = 1;
  long long power = q;
  while (power <= max_degree) {
    power *= q;
    ++r;
  }
  return r;
}

int select_starting_r(const PolarizedSystem& sys, const ExtensionConfig& config,
                      Transcript& transcript) {
  transcript.threshold_r = threshold_r(sys.degree(), sys.variety().max_generator_degree());
  transcript.events.push_back("r* = " + std::to_string(transcript.threshold_r) +
                              " (least r with q^r above the generator degrees)");
  return config.policy == ExtensionConfig::Policy::fixed ? config.r : 1;
}

ExtensionOutcome extend_lifts(const ProjectiveVariety& variety, std::span<const Polynomial> alphas,
                              int r, const ExtensionConfig& config, Rng& rng,
                              Transcript transcript) {
  config.check();
  if (alphas.size() != variety.ambient_dimension() + 1)
    throw UsageError("need one lift per coordinate");
  for (const Polynomial& a : alphas)
    if (!same_ring(a.ring(), variety.ring())) throw UsageError("lift lives in another ring");

  StepOutcome steps = run_steps(variety, alphas, r, config, rng, transcript);
  if (auto* psi = std::get_if<std::vector<Polynomial>>(&steps)) {
    auto result = ExtensionResult::certify(variety, alphas, r, std::move(*psi), transcript);
    if (result) return std::move(*result);
    return ExtensionFailure{r, variety.ambient_dimension(), "certification failed", transcript};
  }
  StepFailure failure = std::get<StepFailure>(steps);
  transcript.events.push_back("r=" + std::to_string(r) + ": " + failure.reason);
  if (!config.allow_conjugation) return ExtensionFailure{r, failure.step, failure.reason, transcript};

  const DenseMatrix a = random_invertible(variety.ring()->field(), alphas.size(), rng);
  transcript.events.push_back("r=" + std::to_string(r) + ": retrying in coordinates A x, A = " +
                              matrix_text(a));
  const ProjectiveVariety moved(variety.ring(), transform_ideal(variety.generators(), a));
  const std::vector<Polynomial> moved_alphas = transform_tuple(alphas, a);
  steps = run_steps(moved, moved_alphas, r, config, rng, transcript);
  if (auto* psi = std::get_if<std::vector<Polynomial>>(&steps)) {
    auto result =
        ExtensionResult::certify(moved, moved_alphas, r, std::move(*psi), transcript, a);
    if (result) return std::move(*result);
    return ExtensionFailure{r, variety.ambient_dimension(), "certification failed", transcript};
  }
  failure = std::get<StepFailure>(steps);
  transcript.events.push_back("r=" + std::to_string(r) + " (conjugated): " + failure.reason);
  return ExtensionFailure{r, failure.step, failure.reason, transcript};
}

ExtensionOutcome extend(const PolarizedSystem& sys, const ExtensionConfig& config) {
  config.check();
  Transcript transcript;
  const int start = select_starting_r(sys, config, transcript);
  Rng rng(config.seed);
  ExtensionFailure last;
  for (int r = start; r <= config.r; ++r) {
    const std::vector<Polynomial> alphas = iterate_pullback(sys, r);
    ExtensionOutcome outcome = extend_lifts(sys.variety(), alphas, r, config, rng, transcript);
    if (std::holds_alternative<ExtensionResult>(outcome)) return outcome;
    last = std::get<ExtensionFailure>(std::move(outcome));
    transcript = last.transcript;
    if (r < config.r) {
      transcript.events.push_back("escalating to r=" + std::to_string(r + 1));
    }
  }
  last.transcript = transcript;
  return last;
}

bool VerificationReport::ok() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.passed; });
}

VerificationReport verify_extension(const ProjectiveVariety& variety,
                                    std::span<const Polynomial> alphas,
                                    const ExtensionResult& result,
                                    const std::optional<Replay>& replay) {
  VerificationReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  const std::vector<Polynomial>& psi = result.psi();
  const std::size_t n = variety.ambient_dimension() + 1;
  if (psi.size() != n || alphas.size() != n) {
    add("arity", false, std::to_string(psi.size()) + " forms for " + std::to_string(n) +
                            " coordinates");
    return report;
  }

  std::optional<ProjectiveVariety> moved;
  std::vector<Polynomial> lifts(alphas.begin(), alphas.end());
  std::optional<Replay> replayed = replay;
  if (result.conjugation()) {
    const DenseMatrix& a = *result.conjugation();
    moved.emplace(variety.ring(), transform_ideal(variety.generators(), a));
    lifts = transform_tuple(alphas, a);
    if (replayed) {
      replayed->parametrization = transform_tuple(replayed->parametrization, a, false);
      replayed->pullbacks = transform_tuple(replayed->pullbacks, a, false);
    }
  }
  const ProjectiveVariety& target = moved ? *moved : variety;

  const int degree = common_degree(lifts);
  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i) {
    if (psi[i].is_zero() || !psi[i].is_homogeneous(degree) || !same_ring(psi[i].ring(), target.ring()))
      bad = "psi" + std::to_string(i) + " is not a nonzero form of degree " + std::to_string(degree);
  }
  add("degrees", bad.empty(), bad.empty() ? "all forms of degree " + std::to_string(degree) : bad);
  if (!bad.empty()) return report;

  for (std::size_t i = 0; i < n && bad.empty(); ++i) {
    const Polynomial nf = normal_form(psi[i] - lifts[i], target.groebner());
    if (!nf.is_zero()) bad = "psi" + std::to_string(i) + " - alpha" + std::to_string(i) +
                             " has normal form " + format_exact(nf);
  }
  add("compatibility", bad.empty(), bad.empty() ? "psi agrees with the iterate on the variety" : bad);

  std::string dims;
  bool dims_ok = true;
  for (std::size_t j = 0; j < n; ++j) {
    const int dim = certified_dimension(std::span<const Polynomial>(psi).first(j + 1),
                                        kVerificationPrime);
    dims += (j > 0 ? " " : "") + std::to_string(dim);
    dims_ok = dims_ok && dim == static_cast<int>(n - 1 - j);
  }
  add("step dimensions", dims_ok, "affine dimensions " + dims);

  const bool empty = is_projectively_empty(modular_basis(psi, kVerificationPrime));
  add("projective emptiness", empty,
      empty ? "psi has no base point" : "psi has a base point modulo the verification prime");

  if (replayed) {
    bad.clear();
    if (replayed->pullbacks.size() != n) {
      bad = "replay needs one pullback per coordinate";
    }
    for (std::size_t i = 0; i < n && bad.empty(); ++i) {
      const Polynomial composite = substitute(psi[i], replayed->parametrization);
      if (!(composite == replayed->pullbacks[i]))
        bad = "psi" + std::to_string(i) + " restricts to " + format_exact(composite);
    }
    add("parametrization replay", bad.empty(),
        bad.empty() ? "psi restricted to the curve equals the iterate exactly" : bad);
  }
  return report;
}

VerificationReport verify_extension(const PolarizedSystem& sys, const ExtensionResult& result) {
  const std::vector<Polynomial> alphas = iterate_pullback(sys, result.r());
  return verify_extension(sys.variety(), alphas, result);
}

std::vector<Polynomial> transform_ideal(std::span<const Polynomial> generators,
                                        const DenseMatrix& a) {
  if (generators.empty()) return {};
  const std::vector<Polynomial> images = linear_images(generators.front().ring(), inverse(a));
  std::vector<Polynomial> out;
  for (const Polynomial& f : generators) out.push_back(substitute(f, images).normalized());
  return out;
}

std::vector<Polynomial> transform_tuple(std::span<const Polynomial> tuple, const DenseMatrix& a,
                                        bool change_source) {
  if (tuple.size() != a.rows()) throw UsageError("tuple length does not match the matrix");
  std::vector<Polynomial> moved(tuple.begin(), tuple.end());
  if (change_source) {
    const std::vector<Polynomial> images = linear_images(tuple.front().ring(), inverse(a));
    for (Polynomial& t : moved) t = substitute(t, images);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Polynomial sum(moved.front().ring(), moved.front().order());
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero()) sum += moved[k] * a(i, k);
    out.push_back(std::move(sum));
  }
  return out;
}

}  // namespace polext
