#include "polext/field.hpp"

#include <ostream>

namespace polext {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3 * 10^24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p, std::uint64_t min_characteristic) {
  if (p >= (std::uint64_t{1} << 63)) throw UsageError("characteristic must be below 2^63");
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (p <= min_characteristic)
    throw UsageError("characteristic " + std::to_string(p) + " must exceed " +
                     std::to_string(min_characteristic));
  return FieldSpec(Kind::prime_field, p);
}

std::string FieldSpec::to_string() const {
  return is_rational() ? "rational" : "prime " + std::to_string(p_);
}

Scalar::Scalar(const FieldSpec& field, long value) : p_(field.characteristic()) {
  if (p_ == 0) {
    v_ = mpq_class(value);
  } else {
    v_ = reduce_mpz(mpz_class(value), p_);
  }
}

Scalar::Scalar(const FieldSpec& field, const mpz_class& value) : p_(field.characteristic()) {
  if (p_ == 0) {
    v_ = mpq_class(value);
  } else {
    v_ = reduce_mpz(value, p_);
  }
}

Scalar::Scalar(const FieldSpec& field, const mpz_class& num, const mpz_class& den)
    : p_(field.characteristic()) {
  if (den == 0) throw ArithmeticError("zero denominator");
  if (p_ == 0) {
    mpq_class v(num, den);
    v.canonicalize();
    v_ = std::move(v);
  } else {
    *this = Scalar(field, num) / Scalar(field, den);
  }
}

FieldSpec Scalar::field() const {
  return p_ == 0 ? FieldSpec::rationals() : FieldSpec(FieldSpec::Kind::prime_field, p_);
}

bool Scalar::is_zero() const { return p_ == 0 ? sgn(q()) == 0 : r() == 0; }

bool Scalar::is_one() const { return p_ == 0 ? q() == 1 : r() == 1; }

bool Scalar::is_integer() const { return p_ != 0 || q().get_den() == 1; }

mpq_class Scalar::to_rational() const {
  if (p_ == 0) return q();
  return mpq_class(mpz_class(static_cast<unsigned long>(r())));
}

void Scalar::check_same(const Scalar& b) const {
  if (p_ != b.p_) throw UsageError("operands belong to different fields");
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (p_ == 0) {
    out.q() = -q();
  } else {
    out.r() = r() == 0 ? 0 : p_ - r();
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero");
  Scalar out = *this;
  if (p_ == 0) {
    out.q() = 1 / q();
  } else {
    out.r() = pow_mod(r(), p_ - 2, p_);
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  check_same(b);
  if (p_ == 0) {
    q() += b.q();
  } else {
    r() += b.r();
    if (r() >= p_) r() -= p_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) {
  check_same(b);
  if (p_ == 0) {
    q() -= b.q();
  } else {
    r() = r() >= b.r() ? r() - b.r() : r() + (p_ - b.r());
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& b) {
  check_same(b);
  if (p_ == 0) {
    q() *= b.q();
  } else {
    r() = mul_mod(r(), b.r(), p_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& b) {
  check_same(b);
  if (b.is_zero()) throw ArithmeticError("division by zero");
  if (p_ == 0) {
    q() /= b.q();
  } else {
    r() = mul_mod(r(), b.inverse().r(), p_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ == 0 ? a.q() == b.q() : a.r() == b.r();
}

std::string Scalar::to_string() const {
  if (p_ == 0) return q().get_str();
  if (r() > p_ / 2) return "-" + std::to_string(p_ - r());
  return std::to_string(r());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar random_scalar(const FieldSpec& field, std::int64_t bound, Rng& rng) {
  if (bound < 1) throw UsageError("random_scalar bound must be >= 1");
  if (field.is_rational()) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    return Scalar(field, static_cast<long>(dist(rng)));
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, field.characteristic() - 1);
  return Scalar(field, mpz_class(static_cast<unsigned long>(dist(rng))));
}

}  // namespace polext
