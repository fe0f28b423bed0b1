#ifndef POLEXT_TEXT_HPP
#define POLEXT_TEXT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polext/polynomial.hpp"

namespace polext {

/// Parses integer or a/b literals, variables, + - * ^ and parentheses.
/// `^` binds tightest, then `*`, then `+`/`-`; exponents are nonnegative
/// integer literals. Errors carry `line` and `first_column` offsets so
/// callers embedding polynomials in larger files can report positions.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring,
                            const MonomialOrder& order = MonomialOrder::grevlex(),
                            std::size_t line = 1, std::size_t first_column = 1);

// Canonical text: the normalized() representative, terms in grevlex.
std::string format(const Polynomial& f);
// The polynomial exactly as stored (no rescaling), terms in grevlex.
std::string format_exact(const Polynomial& f);

std::string format_monomial(const Monomial& m, const PolyRing& ring);

/// Scales a tuple by one common nonzero factor: over Q to integer
/// coefficients with joint content 1 and the first nonzero form's
/// leading coefficient positive; over F_p so that coefficient is 1.
/// Preserves the projective map the tuple defines.
std::vector<Polynomial> normalize_tuple(std::span<const Polynomial> forms);

}  // namespace polext

#endif
