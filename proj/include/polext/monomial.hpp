#ifndef POLEXT_MONOMIAL_HPP
#define POLEXT_MONOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "polext/errors.hpp"

namespace polext {

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector with cached total degree.
class Monomial {
public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::size_t nvars, std::span<const int> exponents);

  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1);

  std::size_t size() const { return nvars_; }
  std::uint32_t degree() const { return degree_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, int e);

  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;
  // Bit i set iff variable i occurs.
  std::uint32_t support_mask() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

private:
  std::array<Exponent, kMaxVariables> exps_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// Term order. Ties within equal exponent patterns cannot occur; within
/// a degree, grevlex ranks the earlier-listed variable as larger.
class MonomialOrder {
public:
  enum class Kind { grevlex, lex, block_elimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  // Grevlex on the first block, ties broken by grevlex on the rest; any
  // monomial touching the first block beats every monomial that does not.
  static MonomialOrder block_elimination(std::size_t first_block_size);

  Kind kind() const { return kind_; }
  std::size_t first_block_size() const { return block_; }
  bool is_graded() const { return kind_ == Kind::grevlex; }

  // Validates block size against the ring's variable count.
  void check_compatible(std::size_t nvars) const;

  // Negative, zero, positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_;
  std::size_t block_;
};

}  // namespace polext

#endif
