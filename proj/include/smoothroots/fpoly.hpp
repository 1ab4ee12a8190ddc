#pragma once

// Dense polynomials over Z/pZ and the residue rings Z/pZ[Y]/(g).

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "smoothroots/bigmod.hpp"

namespace smoothroots {

using ModCtxPtr = std::shared_ptr<const ModCtx>;

ModCtxPtr make_modulus(const Natural& modulus);

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial with coefficients in [0, modulus), constant term first, no
/// trailing zeros. Most operations only need a ring; gcd, monic and the
/// factorization routines need the modulus to be prime.
class FpPoly {
 public:
  explicit FpPoly(ModCtxPtr ctx);
  FpPoly(ModCtxPtr ctx, const std::vector<Integer>& coeffs);

  static FpPoly constant(ModCtxPtr ctx, const Integer& c);
  /// The indeterminate Y.
  static FpPoly y(ModCtxPtr ctx);
  static FpPoly monomial(ModCtxPtr ctx, const Integer& c, std::size_t degree);
  /// Y - root.
  static FpPoly linear(ModCtxPtr ctx, const Integer& root);

  const ModCtxPtr& ctx() const { return ctx_; }
  const Natural& modulus() const { return ctx_->modulus(); }
  const std::vector<Natural>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Natural coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Natural(0); }
  const Natural& lead() const;

  /// Throws std::domain_error on the zero polynomial. Idempotent.
  FpPoly monic() const;
  FpPoly derivative() const;
  Natural evaluate(const Natural& x) const;
  FpPoly scaled(const Natural& c) const;

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly operator-() const;

  bool operator==(const FpPoly& o) const;

 private:
  friend struct FpPolyAccess;
  void trim();

  ModCtxPtr ctx_;
  std::vector<Natural> coeffs_;
};

struct DivRem {
  FpPoly quot;
  FpPoly rem;
};

/// Throws NotInvertible when the divisor's leading coefficient is not a unit.
DivRem divrem(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
bool divides(const FpPoly& d, const FpPoly& a);

/// Monic gcd; gcd(0, 0) = 0.
FpPoly poly_gcd(const FpPoly& a, const FpPoly& b);

struct PolyBezout {
  FpPoly g;
  FpPoly s;
  FpPoly t;
};
/// g = s*a + t*b, g monic (or zero).
PolyBezout poly_egcd(const FpPoly& a, const FpPoly& b);

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m);
FpPoly poly_powmod(const FpPoly& a, const Natural& e, const FpPoly& m);

/// Canonical order: ascending degree, then lexicographic on the negated
/// coefficient list (constant term first). Monic linear factors Y - r
/// therefore come out ordered by their root r.
bool canonical_less(const FpPoly& a, const FpPoly& b);

/// "c0,c1,...,cd mod p".
std::string to_text(const FpPoly& f);
FpPoly parse_poly_text(std::string_view text);
/// Human-readable form in the given variable, e.g. "X^2 + 3*X + 1".
std::string to_pretty(const FpPoly& f, std::string_view var = "X");

// ---------------------------------------------------------------------------
// Residue rings R_g = Z/pZ[Y]/(g)

class ResidueRing;
using ResidueRingPtr = std::shared_ptr<const ResidueRing>;

class ResidueElem {
 public:
  ResidueElem(ResidueRingPtr ring, FpPoly value);

  const FpPoly& value() const { return value_; }
  const ResidueRingPtr& ring() const { return ring_; }
  bool is_one() const { return value_.is_one(); }
  bool is_zero() const { return value_.is_zero(); }

  /// Length-prefixed little-endian coefficient list, padded to deg g
  /// coefficients. Equal elements have equal encodings.
  std::string encode() const;

  bool operator==(const ResidueElem& o) const;

 private:
  ResidueRingPtr ring_;
  FpPoly value_;
};

class ResidueRing : public std::enable_shared_from_this<ResidueRing> {
 public:
  /// g must have degree >= 1 and a unit leading coefficient.
  static ResidueRingPtr make(const FpPoly& g);

  const FpPoly& modulus_poly() const { return g_; }
  const ModCtxPtr& field() const { return g_.ctx(); }
  std::size_t degree() const { return static_cast<std::size_t>(g_.degree()); }

  ResidueElem element(const FpPoly& v) const;
  ResidueElem one() const;
  ResidueElem scalar(const Integer& c) const;

  ResidueElem mul(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem add(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem sub(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem pow(const ResidueElem& a, const Natural& e) const;

  bool same_as(const ResidueRing& o) const;

 private:
  explicit ResidueRing(FpPoly monic_g);
  void check(const ResidueElem& a) const;

  FpPoly g_;
};

ResidueElem poly_mulmod(const ResidueElem& a, const ResidueElem& b);
ResidueElem poly_powmod(const ResidueElem& a, const Natural& e);

// ---------------------------------------------------------------------------
// Factorization

struct Factor {
  FpPoly poly;
  unsigned long multiplicity = 1;
};

struct PolyFactorization {
  Natural leading;
  /// Monic irreducible factors, canonical order.
  std::vector<Factor> factors;
};

void sort_canonical(std::vector<Factor>& factors);
/// leading * prod factor^multiplicity.
FpPoly reassemble(const PolyFactorization& fac, const ModCtxPtr& ctx);

/// Pairwise coprime squarefree monic components with multiplicities,
/// f = lead(f) * prod c_i^{m_i}. Handles vanishing derivatives via p-th roots.
std::vector<Factor> squarefree_decomposition(const FpPoly& f);

/// Distinct-degree factorization of a monic squarefree f: e -> t_e.
/// Throws std::invalid_argument if f is not squarefree.
std::map<unsigned long, FpPoly> ddf(const FpPoly& f);

inline constexpr unsigned long kDefaultSmallPrimeCutoff = 1UL << 20;

/// Complete deterministic factorization for small p (Berlekamp's null space
/// of Frobenius - identity, with exhaustive scalar search).
/// Throws std::invalid_argument when p exceeds `cutoff`.
PolyFactorization berlekamp_complete(const FpPoly& f, const Natural& cutoff = kDefaultSmallPrimeCutoff);

bool is_irreducible(const FpPoly& f);

namespace oracle {

/// Randomized Cantor-Zassenhaus factorization driven by a seeded stream.
/// Only for cross-checking the deterministic routines in tests.
PolyFactorization cz_factor(const FpPoly& f, unsigned long seed);

}  // namespace oracle

}  // namespace smoothroots
