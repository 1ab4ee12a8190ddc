#pragma once

// n-th roots modulo p through factoring X^n - a with the fixed-field
// pipeline, and the single-root shortcut for X^s - a.

#include <optional>
#include <string>
#include <vector>

#include "smoothroots/splitter.hpp"

namespace smoothroots {

enum class RootsMethod { FullFactorization, SingleRootFastPath, ExpandedViaUnityRoot };
enum class ZetaSource { FromFactorization, Search, None };

std::string to_string(RootsMethod m);
std::string to_string(ZetaSource z);

/// How nth_roots obtains the roots. None factors X^n - a completely; the
/// other two split once, extract one root and multiply by a primitive
/// n-th root of unity obtained as named (n prime only).
enum class ZetaMode { None, FromFactorization, Search };
ZetaMode parse_zeta_mode(const std::string& text);

struct RootsResult {
  Natural p;
  Integer a;
  unsigned long n = 0;
  /// Ascending, duplicate-free.
  std::vector<Natural> roots;
  RootsMethod method = RootsMethod::FullFactorization;
  ZetaSource zeta_source = ZetaSource::None;
  /// Set when the unity root came from the unproven scan.
  bool zeta_caveat = false;
};

struct CapelliVerdict {
  bool irreducible = true;
  /// Which condition failed, empty when irreducible.
  std::string reason;
};

/// Requires n >= 1 and a not in {0, 1, -1}.
CapelliVerdict capelli_check(const Integer& a, unsigned long n);
bool capelli_irreducible(const Integer& a, unsigned long n);

class CapelliViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// X^n - a as an integer polynomial, constant term first.
IntPoly binomial_poly(const Integer& a, unsigned long n);

/// Requires X^n - a irreducible over Q, nf describing it, and p not dividing a.
/// An empty root list means a is not an n-th power residue.
RootsResult nth_roots(const Integer& a, unsigned long n, const Natural& p, const NumberField& nf,
                      const SplitParams& params = {}, ZetaMode mode = ZetaMode::None);

/// An s-th root of a from a monic proper divisor g of X^s - a (s odd prime):
/// c0 = (-1)^deg g * g(0), deg g * u - s * w = 1, root = c0^u * a^-w.
/// Throws ArithmeticError if the candidate does not verify.
Natural sth_root_from_factor(const FpPoly& g, const Natural& s, const Integer& a, const Natural& p);

/// {r * zeta^i} for a primitive s-th root of unity zeta. FromFactorization
/// needs a second known root; Search scans b = 2, 3, ... for b^((p-1)/s) != 1
/// up to `search_cap` (0 means p - 1).
std::vector<Natural> all_roots_from_one(const Natural& r, const Natural& s, const Natural& p, const Integer& a,
                                        ZetaMode mode, const std::optional<Natural>& other_root = std::nullopt,
                                        unsigned long search_cap = 0);

std::string roots_to_json(const RootsResult& result);

}  // namespace smoothroots
