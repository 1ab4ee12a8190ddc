#pragma once

#include <vector>

#include "smoothroots/bigmod.hpp"

namespace smoothroots {

struct PrimePower {
  Natural prime;
  unsigned long exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

struct SmoothPart {
  /// Largest divisor of N built from primes <= B.
  Natural value;
  /// Ascending by prime.
  std::vector<PrimePower> factors;
};

/// The q-smooth part S of p-1 for the least prime q meeting S >= (p-1)^(tau+delta).
struct SmoothnessProfile {
  Natural p;
  Natural q;
  Natural smooth;
  std::vector<PrimePower> factors;
  Rational tau;
  Rational delta;
};

/// Primes <= bound dividing n, ascending. Deterministic Pollard-Strassen:
/// block products of consecutive integers mod n come from one product tree
/// and a multipoint evaluation; only blocks sharing a factor with n are scanned.
std::vector<Natural> pollard_strassen_primes(const Natural& n, const Natural& bound);

SmoothPart smooth_part(const Natural& n, const Natural& bound);

/// Exact test of smooth^den >= base^num, where exponent = num/den.
bool meets_threshold(const Natural& smooth, const Natural& base, const Rational& exponent);

/// Requires p an odd prime, delta > 0 and tau + delta <= 1.
SmoothnessProfile least_q(const Natural& p, const Rational& tau, const Rational& delta);

}  // namespace smoothroots
