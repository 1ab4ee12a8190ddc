#pragma once

// Splitting equal-degree factors of f~ mod p with the extended
// Pohlig-Hellman cyclicity test, and the complete factorization pipeline.

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "smoothroots/fpoly.hpp"
#include "smoothroots/numberfield.hpp"
#include "smoothroots/smoothness.hpp"

namespace smoothroots {

struct SplitParams {
  Rational delta{1, 20};
  Rational c{100};
  Rational epsilon{1, 100};
  Rational tau{1, 2};
  std::vector<unsigned long> coord_bound_schedule{1, 2, 4, 8, 16, 32, 64};
  Natural small_prime_cutoff{kDefaultSmallPrimeCutoff};
  bool erh_mode = false;
  /// Product-tree batching of the extraction loop instead of a linear scan.
  bool batched_extraction = false;
  /// Nonresidue search cap for erh_mode; 0 means ceil(2 ln^2 p).
  unsigned long nonresidue_cap = 0;
};

/// Warnings for parameters outside the regime d/c + epsilon < 2 delta, plus
/// hard errors (thrown as std::invalid_argument) for unusable values.
std::vector<std::string> check_params(const SplitParams& params, std::size_t degree);

struct TraceEvent {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  bool operator==(const TraceEvent&) const = default;
};

struct GroupContext {
  Natural p;
  FpPoly g;
  ResidueRingPtr ring;
  unsigned long e = 1;
  unsigned long k = 1;
  SmoothnessProfile profile;
  /// m = 1 mod S, m = 0 mod (p-1)/S
  Natural m_proj;
  /// (p^e - 1)/(p - 1)
  Natural sigma_exp;
};

/// g monic, every irreducible factor of degree e, deg g = k*e.
GroupContext make_group_context(const FpPoly& g, unsigned long e, const SmoothnessProfile& profile);

ResidueElem sigma_map(const ResidueElem& b, const GroupContext& ctx);
ResidueElem project_to_G1(const ResidueElem& a, const GroupContext& ctx);

/// Least j <= cap with a^(s^j) = 1; throws std::invalid_argument if none.
unsigned long s_part_order(const ResidueElem& a, const Natural& s, unsigned long cap);

struct NotInSubgroup {
  /// Order s.
  ResidueElem a_prime;
  /// Order s, outside <a_prime>.
  ResidueElem b_prime;
};

/// Discrete log of target to base (of order s^alpha) by Pohlig-Hellman digit
/// descent with a baby-step/giant-step table of ceil(sqrt(s)) entries.
std::variant<Natural, NotInSubgroup> bsgs_dlog(const ResidueElem& base, const ResidueElem& target, const Natural& s,
                                               unsigned long alpha);

struct Extraction {
  FpPoly divisor;
  /// The i in gcd(b' a'^-i - 1, g).
  Natural index;
};

/// Monic proper divisor of g from witnesses of a non-cyclic s-torsion.
/// Throws std::logic_error if the loop exhausts (precondition violated).
Extraction extract_factor(const ResidueElem& a_prime, const ResidueElem& b_prime, const FpPoly& g, const Natural& s);
/// Same result, with the i-loop batched through a product tree in blocks of
/// ceil(sqrt(s)).
Extraction extract_factor_batched(const ResidueElem& a_prime, const ResidueElem& b_prime, const FpPoly& g,
                                  const Natural& s);

enum class SplitOutcome { Split, CyclicPassed, GcdShortcut };
std::string to_string(SplitOutcome outcome);

struct SplitReport {
  SplitOutcome outcome = SplitOutcome::CyclicPassed;
  std::optional<FpPoly> divisor;
  /// Position of the responsible generator in consumption order.
  std::optional<std::size_t> generator_index;
  std::vector<TraceEvent> trace;
};

/// Incremental cyclicity test on elements of a finite abelian group whose
/// exponent divides `exponent` = prod s^v over `primes`: for each s keeps an
/// element of maximal s-order and checks that everything else lies in the
/// cyclic group it generates.
class CyclicityTester {
 public:
  CyclicityTester(FpPoly g, std::vector<PrimePower> primes, Natural exponent, bool batched = false);

  /// Adds one element; returns a proper divisor of g as soon as the group
  /// generated so far is not cyclic.
  std::optional<Extraction> add(const ResidueElem& a, std::vector<TraceEvent>& trace);

 private:
  struct PrimeState {
    PrimePower pp;
    Natural part_exp;
    std::optional<ResidueElem> base;
    unsigned long alpha = 0;
  };

  FpPoly g_;
  Natural exponent_;
  bool batched_;
  std::vector<PrimeState> states_;
};

/// gens must lie in G_1 (order dividing S).
SplitReport ph_cyclic_test(const std::vector<ResidueElem>& gens, const GroupContext& ctx, bool batched = false);

struct Generator {
  ResidueElem value;
  std::string origin;
};

struct GeneratorBatch {
  std::vector<Generator> units_part;
  std::vector<Generator> stream_part;
  /// Proper divisor gcd(b, g) met while classifying candidates.
  std::optional<FpPoly> shortcut;
  std::optional<std::string> shortcut_origin;
};

/// Candidates pi_g(kappa(x)) for x in U and in A(coord_bound), classified
/// and deduplicated. Stops at the first shortcut divisor.
GeneratorBatch build_generators(const FpPoly& g, const NumberField& nf, unsigned long coord_bound);

/// Raised when the coordinate-bound schedule runs out while every stage
/// found a cyclic group.
class CyclicExhausted : public std::runtime_error {
 public:
  CyclicExhausted(std::string what, FpPoly g, std::vector<TraceEvent> trace);

  const FpPoly& polynomial() const { return g_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }

 private:
  FpPoly g_;
  std::vector<TraceEvent> trace_;
};

/// Proper divisor of g (deg g = k*e, k >= 2). Throws CyclicExhausted.
SplitReport split_factor(const FpPoly& g, unsigned long e, const NumberField& nf, const SmoothnessProfile& profile,
                         const SplitParams& params);

/// ERH variant: needs only an s-th power nonresidue mod p.
SplitReport shoup_erh_split(const FpPoly& g, const SplitParams& params);

struct SplitRecord {
  FpPoly g;
  unsigned long e = 1;
  SplitReport report;
};

struct FactorizationResult {
  Natural p;
  Natural leading;
  /// Monic irreducible factors of f mod p in X, canonical order.
  std::vector<Factor> factors;
  /// "small_prime_berlekamp" or "splitter" (or "splitter_erh").
  std::string path;
  std::optional<SmoothnessProfile> profile;
  std::vector<SplitRecord> splits;
  std::vector<std::string> warnings;
};

/// Unsupported input: p | l above the small-prime cutoff.
class UnsupportedPrime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complete factorization of f mod p for the fixed field described by nf.
FactorizationResult factor_fixed(const IntPoly& f, const Natural& p, const NumberField& nf,
                                 const SplitParams& params = {});

std::string factorization_to_json(const FactorizationResult& result);

}  // namespace smoothroots
