#include "doctest.h"
#include "oracles.hpp"
#include "smoothroots/smoothness.hpp"

using namespace smoothroots;

namespace {

std::vector<Natural> td_primes(std::uint64_t n, std::uint64_t b) {
  std::vector<Natural> out;
  for (const auto& [q, e] : oracle_ref::trial_factor(n, b)) out.push_back(Natural(static_cast<unsigned long>(q)));
  return out;
}

}  // namespace

TEST_CASE("smooth_part examples") {
  const SmoothPart a = smooth_part(40, 2);
  CHECK(a.value == 8);
  CHECK(a.factors == std::vector<PrimePower>{{2, 3}});
  const SmoothPart b = smooth_part(40, 5);
  CHECK(b.value == 40);
  CHECK(b.factors == std::vector<PrimePower>{{2, 3}, {5, 1}});
  const SmoothPart c = smooth_part(1, 7);
  CHECK(c.value == 1);
  CHECK(c.factors.empty());
  CHECK(oracle_ref::smooth_value(40, 2) == 8);
}

TEST_CASE("pollard_strassen_primes examples") {
  CHECK(pollard_strassen_primes(40, 3) == td_primes(40, 3));
  CHECK(pollard_strassen_primes(40, 3) == std::vector<Natural>{2});
  CHECK(pollard_strassen_primes(101, 10).empty());
  CHECK(pollard_strassen_primes(8 * 7919, 8000) == std::vector<Natural>{2, 7919});
  CHECK(pollard_strassen_primes(8 * 7919, 8000) == td_primes(8 * 7919, 8000));
}

TEST_CASE("least_q examples") {
  const SmoothnessProfile a = least_q(41, Rational(1, 2), Rational(1, 20));
  CHECK(a.q == 2);
  CHECK(a.smooth == 8);
  // 8^20 >= 40^11
  Natural l, r;
  mpz_ui_pow_ui(l.get_mpz_t(), 8, 20);
  mpz_ui_pow_ui(r.get_mpz_t(), 40, 11);
  CHECK(l >= r);
  const SmoothnessProfile b = least_q(13, Rational(1, 2), Rational(1, 4));
  CHECK(b.q == 3);
  CHECK(b.smooth == 12);
  CHECK(4 * 4 * 4 * 4 < 12 * 12 * 12);
  const SmoothnessProfile c = least_q(3, Rational(1, 2), Rational(1, 4));
  CHECK(c.q == 2);
  CHECK(c.smooth == 2);
  CHECK_THROWS(least_q(13, Rational(1, 2), Rational(0)));
  CHECK_THROWS(least_q(13, Rational(3, 4), Rational(1, 2)));
}

TEST_CASE("meets_threshold is exact") {
  CHECK(meets_threshold(8, 40, Rational(11, 20)));
  CHECK_FALSE(meets_threshold(4, 12, Rational(3, 4)));
  // 2^10 = 1024 vs 1024^1: equality passes
  CHECK(meets_threshold(1024, 1024, Rational(1)));
  CHECK_FALSE(meets_threshold(1023, 1024, Rational(1)));
}

TEST_CASE("property: Pollard-Strassen agrees with trial division for N up to 20000") {
  for (std::uint64_t n = 2; n <= 20000; ++n) {
    for (std::uint64_t b : {2ULL, 3ULL, 5ULL, 10ULL, 100ULL}) {
      const auto got = pollard_strassen_primes(static_cast<unsigned long>(n), static_cast<unsigned long>(b));
      if (got != td_primes(n, b)) {
        FAIL("mismatch at N=" << n << " B=" << b);
      }
    }
  }
}

TEST_CASE("property: smooth part divides and leaves no small prime") {
  for (std::uint64_t n = 1; n <= 5000; n += 7) {
    for (std::uint64_t b : {2ULL, 3ULL, 10ULL, 97ULL}) {
      const SmoothPart s = smooth_part(static_cast<unsigned long>(n), static_cast<unsigned long>(b));
      CHECK(Natural(static_cast<unsigned long>(n)) % s.value == 0);
      const std::uint64_t rest = n / s.value.get_ui();
      CHECK(oracle_ref::trial_factor(rest, b).empty());
      CHECK(s.value == oracle_ref::smooth_value(n, b));
    }
  }
}

TEST_CASE("property: least_q minimality") {
  const Rational tau(1, 2), delta(1, 20);
  for (std::uint64_t p : oracle_ref::primes_upto(5000)) {
    if (p == 2) continue;
    const SmoothnessProfile prof = least_q(static_cast<unsigned long>(p), tau, delta);
    CHECK(meets_threshold(prof.smooth, static_cast<unsigned long>(p - 1), tau + delta));
    const std::uint64_t q = prof.q.get_ui();
    CHECK(prof.smooth == oracle_ref::smooth_value(p - 1, q));
    for (std::uint64_t qq : oracle_ref::primes_upto(q - 1)) {
      CHECK_FALSE(meets_threshold(static_cast<unsigned long>(oracle_ref::smooth_value(p - 1, qq)),
                                  static_cast<unsigned long>(p - 1), tau + delta));
    }
    Natural product = 1;
    for (const auto& f : prof.factors) {
      Natural pe;
      mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
      product *= pe;
      CHECK(f.prime <= prof.q);
    }
    CHECK(product == prof.smooth);
  }
}

TEST_CASE("Pollard-Strassen on 64-bit inputs") {
  const Natural n("18446744073709551556");  // 2^64 - 60
  const auto got = pollard_strassen_primes(n, 10000);
  std::vector<Natural> expect;
  Natural m = n;
  for (unsigned long q = 2; q <= 10000; ++q) {
    if (m % q == 0) {
      expect.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  CHECK(got == expect);
}
