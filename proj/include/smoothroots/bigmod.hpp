#pragma once

// Exact integer and modular arithmetic used by every other module.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothroots {

using Integer = mpz_class;
/// Nonnegative by contract; same representation as Integer.
using Natural = mpz_class;
using Rational = mpq_class;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an inversion modulo a composite hits a nontrivial common
/// factor. The factor is kept because callers can use it.
class NotInvertible : public ArithmeticError {
 public:
  NotInvertible(Integer value, Natural modulus, Natural common_factor);

  const Integer& value() const { return value_; }
  const Natural& modulus() const { return modulus_; }
  const Natural& common_factor() const { return common_factor_; }

 private:
  Integer value_;
  Natural modulus_;
  Natural common_factor_;
};

/// Residue arithmetic for a fixed modulus >= 2. Every result is in [0, modulus).
class ModCtx {
 public:
  explicit ModCtx(Natural modulus);

  const Natural& modulus() const { return modulus_; }

  Natural reduce(const Integer& x) const;
  Natural add(const Natural& a, const Natural& b) const;
  Natural sub(const Natural& a, const Natural& b) const;
  Natural mul(const Natural& a, const Natural& b) const;
  Natural neg(const Natural& a) const;
  /// Throws NotInvertible when gcd(a, modulus) != 1.
  Natural inv(const Natural& a) const;
  Natural pow(const Natural& base, const Natural& exponent) const;

  bool operator==(const ModCtx& other) const { return modulus_ == other.modulus_; }

 private:
  Natural modulus_;
};

Natural powmod(const Natural& base, const Natural& exponent, const ModCtx& ctx);

struct Bezout {
  Natural g;
  Integer u;
  Integer v;
};

/// g = gcd(|a|, |b|) and u*a + v*b = g. Throws std::invalid_argument if a = b = 0.
Bezout egcd(const Integer& a, const Integer& b);

/// m with m = 1 (mod mod_a), m = 0 (mod mod_b), 0 <= m < mod_a * mod_b.
Natural crt_idempotent(const Natural& mod_a, const Natural& mod_b);

struct PrimalityVerdict {
  bool prime = false;
  /// false when the verdict comes from the probabilistic test (n >= 2^64).
  bool proven = true;
};

PrimalityVerdict primality(const Natural& n);
inline bool is_prime(const Natural& n) { return primality(n).prime; }

/// Smallest prime strictly greater than n.
Natural next_prime(const Natural& n);

/// b with b^k = a exactly, if one exists.
std::optional<Integer> perfect_power_root(const Integer& a, unsigned long k);

Integer isqrt(const Natural& n);

/// Multiplicity of `prime` in n (n != 0).
unsigned long valuation(const Integer& n, const Natural& prime);

/// Decimal integer, optional leading sign. Throws std::invalid_argument.
Integer parse_integer(std::string_view text);
/// "num/den" or "num"; result canonicalized. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
/// Canonical form: "num" when the denominator is 1, else "num/den".
std::string to_string(const Rational& x);

}  // namespace smoothroots
