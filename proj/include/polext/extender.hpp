#ifndef POLEXT_EXTENDER_HPP
#define POLEXT_EXTENDER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polext/dynsys.hpp"
#include "polext/matrix.hpp"

namespace polext {

struct ExtensionConfig {
  enum class Policy { auto_search, fixed };

  Policy policy = Policy::auto_search;
  // max_r under auto_search, the only r tried under fixed.
  int r = 3;
  int max_retries = 64;
  // Doubled after each quarter of the retry budget.
  std::int64_t coeff_bound = 10;
  bool allow_conjugation = false;
  std::uint64_t seed = 0;

  static ExtensionConfig auto_search(int max_r);
  static ExtensionConfig fixed(int r);

  // Throws UsageError unless r >= 1, max_retries >= 1 and coeff_bound >= 1.
  void check() const;
};

// One candidate h for the step that chooses h_step at iterate r.
struct Attempt {
  int r = 0;
  std::size_t step = 0;
  // 0 is the plain lift alpha_step; k > 0 the k-th repair.
  std::size_t index = 0;
  // Sampled constant c of the repair alpha + c * alpha2; empty for index 0.
  std::string constant;
  std::int64_t bound = 0;
  int dimension = 0;
  int target = 0;
  bool accepted = false;
};

struct Transcript {
  // r* = min{r : q^r > max deg f_i}; 0 when not computed.
  int threshold_r = 0;
  std::vector<Attempt> attempts;
  // Escalations, obstructions and conjugation events in order.
  std::vector<std::string> events;
};

struct Certificates {
  // h_i - alpha_i lies in I for every i.
  bool compatibility = false;
  // Affine dimension of V(h_0..h_j) for j = 0..m; must equal m - j.
  std::vector<int> step_dimensions;
  bool step_dimensions_ok = false;
  // V(h_0..h_m) is empty in P^m.
  bool projective_emptiness = false;
  // Every h_i is a nonzero form of degree q^r.
  bool degrees = false;

  bool all() const { return compatibility && step_dimensions_ok && projective_emptiness && degrees; }
};

/// A certified extension psi = (h_0..h_m) of an iterate. When
/// `conjugation` is set, psi extends A phi^r A^{-1} on A(X) instead, with
/// A the stored matrix acting on the coordinates.
class ExtensionResult {
public:
  /// Checks every certificate against (variety, alphas) and returns nullopt
  /// if any fails. This is the only way to obtain an ExtensionResult.
  static std::optional<ExtensionResult> certify(const ProjectiveVariety& variety,
                                                std::span<const Polynomial> alphas, int r,
                                                std::vector<Polynomial> psi, Transcript transcript,
                                                std::optional<DenseMatrix> conjugation = {});

  int r() const { return r_; }
  const std::vector<Polynomial>& psi() const { return psi_; }
  const Certificates& certificates() const { return certificates_; }
  const Transcript& transcript() const { return transcript_; }
  const std::optional<DenseMatrix>& conjugation() const { return conjugation_; }

private:
  ExtensionResult() = default;

  int r_ = 0;
  std::vector<Polynomial> psi_;
  Certificates certificates_;
  Transcript transcript_;
  std::optional<DenseMatrix> conjugation_;
};

struct ExtensionFailure {
  // Last r tried and the step whose retry budget ran out.
  int r = 0;
  std::size_t blocking_step = 0;
  std::string reason;
  Transcript transcript;
};

using ExtensionOutcome = std::variant<ExtensionResult, ExtensionFailure>;

// min{r >= 1 : q^r > max_degree}
int threshold_r(int q, int max_degree);

/// 1 under auto_search, the configured r under fixed. Records r* in the
/// transcript.
int select_starting_r(const PolarizedSystem& sys, const ExtensionConfig& config,
                      Transcript& transcript);

/// Builds psi at one fixed r from lifts alpha_i of degree q^r of the
/// coordinate pullbacks. Step j accepts the first candidate with
/// dim V(h_0..h_j) = m - j; rejected candidates are repaired as
/// alpha_j + c * alpha2 with alpha2 a random element of I in degree q^r.
/// Dimensions are certified modulo a large prime (certified_dimension),
/// which is exact whenever it reports the expected value.
ExtensionOutcome extend_lifts(const ProjectiveVariety& variety, std::span<const Polynomial> alphas,
                              int r, const ExtensionConfig& config, Rng& rng,
                              Transcript transcript);

/// extend_lifts on iterate_pullback(sys, r), escalating r from
/// select_starting_r up to the configured maximum under auto_search.
ExtensionOutcome extend(const PolarizedSystem& sys, const ExtensionConfig& config);

// Exact parametrized check: substitute(psi_i, parametrization) == pullbacks_i.
struct Replay {
  std::vector<Polynomial> parametrization;
  std::vector<Polynomial> pullbacks;
};

struct VerificationReport {
  std::vector<CheckItem> checks;

  bool ok() const;
};

/// Recomputes all certificates from scratch. Emptiness is re-derived
/// modulo a second prime, independent of the one used during the search.
VerificationReport verify_extension(const ProjectiveVariety& variety,
                                    std::span<const Polynomial> alphas,
                                    const ExtensionResult& result,
                                    const std::optional<Replay>& replay = {});

VerificationReport verify_extension(const PolarizedSystem& sys, const ExtensionResult& result);

/// Coordinates y = A x: f(x) becomes f(A^{-1} y).
std::vector<Polynomial> transform_ideal(std::span<const Polynomial> generators,
                                        const DenseMatrix& a);
/// A tuple of coordinate pullbacks: out_i(y) = sum_k A_ik t_k(A^{-1} y).
/// With `change_source` false only the linear combination is taken, for
/// tuples that live in another ring (parametrizations).
std::vector<Polynomial> transform_tuple(std::span<const Polynomial> tuple, const DenseMatrix& a,
                                        bool change_source = true);

}  // namespace polext

#endif
