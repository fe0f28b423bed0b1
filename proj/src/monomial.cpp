#include "polext/monomial.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace polext {

namespace {

constexpr int kMaxExponent = std::numeric_limits<Monomial::Exponent>::max();

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
  std::uint32_t da = 0, db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVariables)
    throw UsageError("at most " + std::to_string(kMaxVariables) + " variables are supported");
}

Monomial::Monomial(std::size_t nvars, std::span<const int> exponents) : Monomial(nvars) {
  if (exponents.size() != nvars) throw UsageError("exponent count does not match variable count");
  for (std::size_t i = 0; i < nvars; ++i) set(i, exponents[i]);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, int power) {
  Monomial m(nvars);
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, int e) {
  if (i >= nvars_) throw UsageError("variable index out of range");
  if (e < 0 || e > kMaxExponent) throw UsageError("exponent out of range");
  degree_ = degree_ - exps_[i] + static_cast<std::uint32_t>(e);
  exps_[i] = static_cast<Exponent>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

std::uint32_t Monomial::support_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] > 0) mask |= 1u << i;
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    const int e = a.exps_[i] + b.exps_[i];
    if (e > kMaxExponent) throw UsageError("exponent overflow");
    out.exps_[i] = static_cast<Monomial::Exponent>(e);
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    if (b.exps_[i] > a.exps_[i]) throw UsageError("monomial does not divide");
    out.exps_[i] = static_cast<Monomial::Exponent>(a.exps_[i] - b.exps_[i]);
  }
  out.degree_ = a.degree_ - b.degree_;
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  out.degree_ = 0;
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    out.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    out.degree_ += out.exps_[i];
  }
  return out;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.nvars_; ++i)
    if (a.exps_[i] > 0 && b.exps_[i] > 0) return false;
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < m.size(); ++i) {
    h ^= m[i];
    h *= 1099511628211ULL;
  }
  return h;
}

MonomialOrder MonomialOrder::block_elimination(std::size_t first_block_size) {
  if (first_block_size < 1) throw UsageError("elimination block must contain at least one variable");
  return MonomialOrder(Kind::block_elimination, first_block_size);
}

void MonomialOrder::check_compatible(std::size_t nvars) const {
  if (kind_ == Kind::block_elimination && (block_ < 1 || block_ >= nvars))
    throw UsageError("elimination block size must be in [1, variable count)");
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::grevlex:
      return grevlex_range(a, b, 0, n);
    case Kind::lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::block_elimination: {
      const int first = grevlex_range(a, b, 0, block_);
      if (first != 0) return first;
      return grevlex_range(a, b, block_, n);
    }
  }
  return 0;
}

}  // namespace polext
