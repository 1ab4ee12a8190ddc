#include "smoothroots/bigmod.hpp"

#include <array>
#include <cctype>

namespace smoothroots {

NotInvertible::NotInvertible(Integer value, Natural modulus, Natural common_factor)
    : ArithmeticError("value " + value.get_str() + " is not invertible modulo " + modulus.get_str() +
                      " (common factor " + common_factor.get_str() + ")"),
      value_(std::move(value)),
      modulus_(std::move(modulus)),
      common_factor_(std::move(common_factor)) {}

ModCtx::ModCtx(Natural modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw std::invalid_argument("modulus must be at least 2");
}

Natural ModCtx::reduce(const Integer& x) const {
  Natural r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Natural ModCtx::add(const Natural& a, const Natural& b) const {
  Natural r = a + b;
  if (r >= modulus_) r -= modulus_;
  return r;
}

Natural ModCtx::sub(const Natural& a, const Natural& b) const {
  Natural r = a - b;
  if (r < 0) r += modulus_;
  return r;
}

Natural ModCtx::mul(const Natural& a, const Natural& b) const {
  Natural r = a * b;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Natural ModCtx::neg(const Natural& a) const { return a == 0 ? Natural(0) : Natural(modulus_ - a); }

Natural ModCtx::inv(const Natural& a) const {
  Natural r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
    Natural g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
    throw NotInvertible(a, modulus_, g);
  }
  return r;
}

Natural ModCtx::pow(const Natural& base, const Natural& exponent) const {
  return powmod(base, exponent, *this);
}

Natural powmod(const Natural& base, const Natural& exponent, const ModCtx& ctx) {
  if (exponent < 0) throw std::invalid_argument("powmod: negative exponent");
  Natural r;
  Natural b = ctx.reduce(base);
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exponent.get_mpz_t(), ctx.modulus().get_mpz_t());
  return r;
}

Bezout egcd(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) throw std::invalid_argument("egcd: both inputs are zero");
  // Iterative Euclid on |a|, |b|; signs folded back at the end.
  Integer r0 = abs(a), r1 = abs(b);
  Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a < 0) s0 = -s0;
  if (b < 0) t0 = -t0;
  return {r0, s0, t0};
}

Natural crt_idempotent(const Natural& mod_a, const Natural& mod_b) {
  if (mod_a < 1 || mod_b < 1) throw std::invalid_argument("crt_idempotent: moduli must be positive");
  const Natural n = mod_a * mod_b;
  if (mod_a == 1) return 0;
  Natural binv;
  if (mpz_invert(binv.get_mpz_t(), mod_b.get_mpz_t(), mod_a.get_mpz_t()) == 0) {
    throw std::invalid_argument("crt_idempotent: moduli " + mod_a.get_str() + " and " +
                                mod_b.get_str() + " are not coprime");
  }
  Natural m = mod_b * binv;
  mpz_mod(m.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  return m;
}

namespace {

constexpr std::array<unsigned, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(const Natural& n, const Natural& d, unsigned long s, unsigned base) {
  const Natural nm1 = n - 1;
  Natural x;
  Natural b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

PrimalityVerdict primality(const Natural& n) {
  if (n < 2) return {false, true};
  for (unsigned w : kWitnesses) {
    if (n == w) return {true, true};
    if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return {false, true};
  }
  // The first 12 primes as Miller-Rabin bases decide every n < 3.3e24.
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    Natural d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned w : kWitnesses) {
      if (!strong_probable_prime(n, d, s, w)) return {false, true};
    }
    return {true, true};
  }
  const int r = mpz_probab_prime_p(n.get_mpz_t(), 40);
  return {r != 0, r == 2};
}

Natural next_prime(const Natural& n) {
  Natural c = n < 2 ? Natural(2) : Natural(n + 1);
  while (!is_prime(c)) ++c;
  return c;
}

std::optional<Integer> perfect_power_root(const Integer& a, unsigned long k) {
  if (k == 0) throw std::invalid_argument("perfect_power_root: k must be positive");
  if (k == 1) return a;
  if (a < 0 && k % 2 == 0) return std::nullopt;
  Integer mag = abs(a);
  Integer root;
  if (mpz_root(root.get_mpz_t(), mag.get_mpz_t(), k) == 0) return std::nullopt;
  Integer check;
  mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), k);
  if (check != mag) return std::nullopt;
  return a < 0 ? Integer(-root) : root;
}

Integer isqrt(const Natural& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative value");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

unsigned long valuation(const Integer& n, const Natural& prime) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = n;
  unsigned long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), prime.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
    ++v;
  }
  return v;
}

Integer parse_integer(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\n");
  const auto last = text.find_last_not_of(" \t\n");
  std::string s = first == std::string_view::npos ? std::string() : std::string(text.substr(first, last - first + 1));
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw std::invalid_argument("not an integer: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw std::invalid_argument("not an integer: '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace smoothroots
