#include "smoothroots/smoothness.hpp"

#include <stdexcept>

#include "smoothroots/detail/poly_kernels.hpp"

namespace smoothroots {

namespace {

// Block values v_i = prod_{j=1..c} (i*c + j) mod n for i = 0..c-1.
template <detail::CoefficientRing R>
std::vector<mpz_class> block_products(const R& ring, unsigned long c) {
  using Poly = std::vector<typename R::Elem>;
  std::vector<Poly> leaves;
  leaves.reserve(c);
  for (unsigned long j = 1; j <= c; ++j) {
    Poly lin{ring.from_mpz(mpz_class(j)), ring.one()};
    detail::trim(ring, lin);
    leaves.push_back(std::move(lin));
  }
  detail::ProductTree<R> tree(ring, std::move(leaves));
  std::vector<typename R::Elem> points;
  points.reserve(c);
  for (unsigned long i = 0; i < c; ++i) points.push_back(ring.from_mpz(mpz_class(i) * c));
  auto values = detail::multipoint_evaluate(ring, tree.root(), points);
  std::vector<mpz_class> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(ring.to_mpz(v));
  return out;
}

}  // namespace

std::vector<Natural> pollard_strassen_primes(const Natural& n, const Natural& bound) {
  if (n < 1) throw std::invalid_argument("pollard_strassen_primes: n must be positive");
  std::vector<Natural> primes;
  if (n == 1 || bound < 2) return primes;
  // Primes above n cannot divide n.
  const Natural limit = bound < n ? bound : n;
  if (!limit.fits_ulong_p() || limit > Natural(1UL << 62)) {
    throw std::invalid_argument("pollard_strassen_primes: bound too large for block enumeration");
  }
  const unsigned long lim = limit.get_ui();
  unsigned long c = isqrt(limit).get_ui();
  if (c * c < lim) ++c;

  std::vector<mpz_class> values;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 62) {
    values = block_products(detail::U64ModRing(n.get_ui()), c);
  } else {
    values = block_products(detail::MpzModRing(n), c);
  }

  Natural g;
  for (unsigned long i = 0; i < c; ++i) {
    mpz_gcd(g.get_mpz_t(), values[i].get_mpz_t(), n.get_mpz_t());
    // v_i = 0 also lands here since gcd(0, n) = n.
    if (g == 1) continue;
    for (unsigned long j = 1; j <= c; ++j) {
      const unsigned long m = i * c + j;
      if (m > lim) break;
      if (m < 2 || !mpz_divisible_ui_p(n.get_mpz_t(), m)) continue;
      if (is_prime(Natural(m))) primes.emplace_back(m);
    }
  }
  return primes;
}

SmoothPart smooth_part(const Natural& n, const Natural& bound) {
  if (n < 1) throw std::invalid_argument("smooth_part: n must be positive");
  if (bound < 2) throw std::invalid_argument("smooth_part: bound must be at least 2");
  SmoothPart out{Natural(1), {}};
  if (n == 1) return out;
  for (auto& prime : pollard_strassen_primes(n, bound)) {
    const unsigned long v = valuation(n, prime);
    Natural pw;
    mpz_pow_ui(pw.get_mpz_t(), prime.get_mpz_t(), v);
    out.value *= pw;
    out.factors.push_back({std::move(prime), v});
  }
  return out;
}

bool meets_threshold(const Natural& smooth, const Natural& base, const Rational& exponent) {
  if (exponent < 0) throw std::invalid_argument("meets_threshold: negative exponent");
  const Integer& num = exponent.get_num();
  const Integer& den = exponent.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p()) {
    throw std::invalid_argument("meets_threshold: exponent terms too large");
  }
  Natural lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), smooth.get_mpz_t(), den.get_ui());
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), num.get_ui());
  return lhs >= rhs;
}

SmoothnessProfile least_q(const Natural& p, const Rational& tau, const Rational& delta) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("least_q: p must be an odd prime");
  if (delta <= 0) throw std::invalid_argument("least_q: delta must be positive");
  if (tau < 0 || tau + delta > 1) throw std::invalid_argument("least_q: need 0 <= tau and tau + delta <= 1");
  const Rational target = tau + delta;
  const Natural pm1 = p - 1;

  SmoothnessProfile prof{p, 0, 1, {}, tau, delta};
  // The least q is always a prime factor of p-1: S only changes there.
  // Find prime factors in ascending order with a doubling search bound.
  Natural bound = 2;
  std::size_t checked = 0;
  Natural running = 1;
  for (;;) {
    SmoothPart part = smooth_part(pm1, bound);
    for (; checked < part.factors.size(); ++checked) {
      const auto& pp = part.factors[checked];
      Natural pw;
      mpz_pow_ui(pw.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
      running *= pw;
      prof.factors.push_back(pp);
      if (meets_threshold(running, pm1, target)) {
        prof.q = pp.prime;
        prof.smooth = running;
        return prof;
      }
    }
    const Natural cofactor = pm1 / part.value;
    // No prime <= bound divides the cofactor; it is prime when below bound^2.
    if (cofactor > 1 && (cofactor <= bound * bound || is_prime(cofactor))) {
      prof.factors.push_back({cofactor, 1});
      prof.q = cofactor;
      prof.smooth = pm1;
      return prof;
    }
    bound *= 2;
  }
}

}  // namespace smoothroots
