#ifndef POLEXT_FIELD_HPP
#define POLEXT_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "polext/errors.hpp"

namespace polext {

// Source of randomness for every sampling routine. Always passed explicitly.
using Rng = std::mt19937_64;

/// The coefficient field: Q, or F_p for a prime p < 2^63.
///
/// Prime fields default to p > 2^20 so random sampling behaves like
/// sampling from an infinite field; pass a smaller `min_characteristic`
/// to override (tests use tiny primes for hand-checkable examples).
class FieldSpec {
public:
  enum class Kind { rationals, prime_field };

  static constexpr std::uint64_t kDefaultMinCharacteristic = std::uint64_t{1} << 20;

  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }
  static FieldSpec prime(std::uint64_t p,
                         std::uint64_t min_characteristic = kDefaultMinCharacteristic);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rationals; }
  // 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
  friend class Scalar;
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// An exact element of a FieldSpec.
///
/// Rationals are kept reduced with positive denominator (mpq_class
/// canonicalization); residues live in [0, p).
class Scalar {
public:
  // Zero of the rationals.
  Scalar() = default;
  Scalar(const FieldSpec& field, long value);
  Scalar(const FieldSpec& field, const mpz_class& value);
  // Rationals only: num/den reduced on construction.
  Scalar(const FieldSpec& field, const mpz_class& num, const mpz_class& den);

  static Scalar zero(const FieldSpec& field) { return Scalar(field, 0L); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, 1L); }

  FieldSpec field() const;
  bool same_field(const Scalar& other) const { return p_ == other.p_; }

  bool is_zero() const;
  bool is_one() const;

  // Rationals: the stored fraction. Prime fields: residue over 1.
  mpq_class to_rational() const;
  // Prime fields only.
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
  // Rationals only.
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  // Rationals: true iff denominator is 1. Prime fields: always true.
  bool is_integer() const;

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar& operator/=(const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  // Rationals: "a" or "a/b". Prime fields: symmetric representative in
  // (-p/2, p/2], so x0 - x1 prints as such rather than with a huge residue.
  std::string to_string() const;

private:
  void check_same(const Scalar& b) const;

  mpq_class& q() { return std::get<mpq_class>(v_); }
  const mpq_class& q() const { return std::get<mpq_class>(v_); }
  std::uint64_t& r() { return std::get<std::uint64_t>(v_); }
  std::uint64_t r() const { return std::get<std::uint64_t>(v_); }

  std::uint64_t p_ = 0;  // 0 = rationals
  std::variant<mpq_class, std::uint64_t> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Rationals: uniform integer in [-bound, bound]. Prime fields: uniform
// residue (bound ignored). Requires bound >= 1.
Scalar random_scalar(const FieldSpec& field, std::int64_t bound, Rng& rng);

}  // namespace polext

#endif
