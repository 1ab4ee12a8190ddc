#include "smoothroots/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace smoothroots {

namespace {

Integer floor_mod(const Integer& x, const Integer& m) {
  Integer out;
  mpz_fdiv_r(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

bool divisible(const Integer& x, const Integer& m) {
  return mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t()) != 0;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer s = isqrt(n);
  if (s * s != n) return std::nullopt;
  return s;
}

long double to_ld(const Integer& x) { return static_cast<long double>(x.get_d()); }

long double unit_value(const QuadraticOrder& O, const QuadElem& e) {
  const long double w = (O.r() + std::sqrt(to_ld(O.discriminant()))) / 2.0L;
  return to_ld(e.x) + to_ld(e.y) * w;
}

// Smallest multiple of 10^-12 strictly above v.
Rational rational_above(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0Lf", std::ceil(v * 1e12L));
  Rational q(Integer(buf) + 1, Integer("1000000000000"));
  q.canonicalize();
  return q;
}

// D = s^2 * m with m squarefree (sign kept in m).
std::pair<Integer, Integer> split_square(const Integer& D) {
  Integer m = D < 0 ? Integer(-1) : Integer(1);
  Integer rest = abs(D);
  Integer s = 1;
  for (Integer ell = 2; ell * ell <= rest; ++ell) {
    const Integer sq = ell * ell;
    while (divisible(rest, sq)) {
      rest /= sq;
      s *= ell;
    }
    if (divisible(rest, ell)) {
      rest /= ell;
      m *= ell;
    }
  }
  m *= rest;
  return {s, m};
}

bool squarefree(const Integer& m) { return split_square(m).first == 1; }

}  // namespace

QuadraticOrder::QuadraticOrder(Integer discriminant) : d_(std::move(discriminant)) {
  const Integer m4 = floor_mod(d_, 4);
  if (m4 != 0 && m4 != 1) throw std::invalid_argument("QuadraticOrder: discriminant must be 0 or 1 mod 4");
  if (exact_sqrt(d_)) throw std::invalid_argument("QuadraticOrder: discriminant is a square");
  r_ = m4 == 1 ? 1 : 0;
  n_w_ = (Integer(r_ * r_) - d_) / 4;
  if (d_ > 0) {
    eps_ = smoothroots::fundamental_unit(d_);
    eps_value_ = unit_value(*this, eps_);
  }
}

Integer QuadraticOrder::norm(const QuadElem& e) const { return e.x * e.x + r_ * e.x * e.y + n_w_ * e.y * e.y; }

QuadElem QuadraticOrder::mul(const QuadElem& a, const QuadElem& b) const {
  const Integer yy = a.y * b.y;
  return {a.x * b.x - n_w_ * yy, a.x * b.y + a.y * b.x + r_ * yy};
}

QuadElem QuadraticOrder::conj(const QuadElem& e) const { return {e.x + r_ * e.y, -e.y}; }

QuadIdeal QuadraticOrder::span(const std::vector<QuadElem>& gens) const {
  Integer a = 0, b = 0, c = 0;
  for (const auto& g : gens) {
    if (g.y == 0) {
      mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), g.x.get_mpz_t());
      continue;
    }
    const Bezout e = egcd(c, g.y);
    const Integer x0 = (c / e.g) * g.x - (g.y / e.g) * b;
    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), x0.get_mpz_t());
    b = e.u * b + e.v * g.x;
    c = e.g;
  }
  if (a == 0 || c == 0) throw std::invalid_argument("QuadraticOrder::span: generators do not span a full lattice");
  return {a, floor_mod(b, a), c};
}

bool QuadraticOrder::contains(const QuadIdeal& I, const QuadElem& e) const {
  if (!divisible(e.y, I.c)) return false;
  const Integer t = e.y / I.c;
  return divisible(e.x - t * I.b, I.a);
}

bool QuadraticOrder::is_ideal(const QuadIdeal& I) const {
  // Closed under multiplication by w.
  return contains(I, {0, I.a}) && contains(I, {-I.c * n_w_, I.b + I.c * r_});
}

QuadIdeal QuadraticOrder::mul(const QuadIdeal& I, const QuadIdeal& J) const {
  const QuadElem i1{I.a, 0}, i2{I.b, I.c}, j1{J.a, 0}, j2{J.b, J.c};
  return span({mul(i1, j1), mul(i1, j2), mul(i2, j1), mul(i2, j2)});
}

QuadIdeal QuadraticOrder::conj(const QuadIdeal& I) const { return span({{I.a, 0}, conj(QuadElem{I.b, I.c})}); }

QuadIdeal QuadraticOrder::principal(const QuadElem& e) const { return span({e, mul(e, QuadElem{0, 1})}); }

std::optional<QuadElem> QuadraticOrder::principal_generator(const QuadIdeal& I) const {
  const Integer N = I.norm();
  // Bound |y| for some generator: with x + y*w = alpha, |y| sqrt|d| is
  // |alpha - conj(alpha)|, which is at most 2 sqrt(N) (imaginary) or
  // 2 sqrt(N * eps) after scaling by a power of eps (real).
  long double ybound;
  if (imaginary()) {
    ybound = 2.0L * std::sqrt(to_ld(N) / to_ld(abs(d_)));
  } else {
    ybound = 2.0L * std::sqrt(to_ld(N) * eps_value_ / to_ld(d_));
  }
  const Integer ymax = Integer(static_cast<double>(std::floor(ybound))) + 1;
  const std::vector<Integer> signs = imaginary() ? std::vector<Integer>{1} : std::vector<Integer>{1, -1};
  for (Integer t = 0; t * I.c <= ymax; ++t) {
    for (const Integer& y : {Integer(t * I.c), Integer(-t * I.c)}) {
      for (const auto& sg : signs) {
        // (2x + r y)^2 = 4 N(alpha) + d y^2
        const auto s = exact_sqrt(4 * sg * N + d_ * y * y);
        if (!s) continue;
        for (const Integer& sv : {*s, Integer(-*s)}) {
          const Integer num = sv - r_ * y;
          if (!divisible(num, 2)) continue;
          const QuadElem e{num / 2, y};
          if (contains(I, e)) return e;
        }
      }
      if (t == 0) break;
    }
  }
  return std::nullopt;
}

bool QuadraticOrder::equivalent(const QuadIdeal& I, const QuadIdeal& J) const {
  return principal_generator(mul(I, conj(J))).has_value();
}

std::vector<QuadIdeal> QuadraticOrder::primes_above(unsigned long ell) const {
  std::vector<unsigned long> roots;
  const Integer L(ell);
  for (unsigned long rho = 0; rho < ell; ++rho) {
    const Integer v = Integer(rho) * rho - r_ * Integer(rho) + n_w_;
    if (divisible(v, L)) roots.push_back(rho);
  }
  std::vector<QuadIdeal> out;
  if (roots.empty()) {
    out.push_back({L, 0, L});
  } else {
    for (unsigned long rho : roots) out.push_back(span({{L, 0}, {-Integer(rho), 1}}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadIdeal> QuadraticOrder::ideals_up_to(unsigned long bound) const {
  std::vector<QuadIdeal> out;
  for (unsigned long a = 1; a <= bound; ++a) {
    for (unsigned long c = 1; c * a <= bound; ++c) {
      if (a % c != 0) continue;
      for (unsigned long b = 0; b < a; b += c) {
        QuadIdeal I{a, b, c};
        if (is_ideal(I)) out.push_back(std::move(I));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadElem> QuadraticOrder::roots_of_unity() const {
  if (!imaginary()) throw std::logic_error("roots_of_unity: real quadratic order has infinitely many units");
  std::vector<QuadElem> out;
  // norm 1 forces |d| y^2 <= 4
  for (long y = -2; y <= 2; ++y) {
    const Integer Y(y);
    const auto s = exact_sqrt(4 + d_ * Y * Y);
    if (!s) continue;
    for (const Integer& sv : {*s, Integer(-*s)}) {
      const Integer num = sv - r_ * Y;
      if (divisible(num, 2)) out.push_back({num / 2, Y});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integer quadratic_discriminant(const Integer& m) {
  if (m == 0 || m == 1) throw std::invalid_argument("quadratic field needs m != 0, 1");
  if (!squarefree(m)) throw std::invalid_argument("m = " + m.get_str() + " is not squarefree");
  return floor_mod(m, 4) == 1 ? m : Integer(4 * m);
}

QuadElem fundamental_unit(const Integer& d) {
  if (d <= 0) throw std::invalid_argument("fundamental_unit: discriminant must be positive");
  const int r = floor_mod(d, 4) == 1 ? 1 : 0;
  const Integer n_w = (Integer(r * r) - d) / 4;
  const Integer sd = isqrt(d);
  // Continued fraction of w = (P + sqrt d)/Q with P = r, Q = 2.
  Integer P = r, Q = 2;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (;;) {
    if (Q <= 0) throw std::logic_error("fundamental_unit: continued fraction left the reduced range");
    const Integer a = (P + sd) / Q;
    const Integer h = a * h1 + h2;
    const Integer k = a * k1 + k2;
    const Integer N = h * h - r * h * k + n_w * k * k;
    if (N == 1 || N == -1) return {h - k * r, k};
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
}

Natural class_number_reduced_forms(const Integer& d) {
  if (d >= 0) throw std::invalid_argument("class_number_reduced_forms: discriminant must be negative");
  const Integer ad = -d;
  Natural count = 0;
  for (Integer a = 1; 3 * a * a <= ad; ++a) {
    for (Integer b = -a + 1; b <= a; ++b) {
      const Integer num = b * b - d;
      if (!divisible(num, 4 * a)) continue;
      const Integer c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      Integer g = gcd(gcd(a, b), c);
      if (g == 1) ++count;
    }
  }
  return count;
}

namespace {

long double minkowski_value(const Integer& d) {
  const long double sd = std::sqrt(to_ld(abs(d)));
  return d < 0 ? 2.0L * sd / static_cast<long double>(M_PI) : sd / 2.0L;
}

}  // namespace

Natural class_number_ideals(const Integer& d) {
  const QuadraticOrder O(d);
  const auto bound = static_cast<unsigned long>(std::floor(minkowski_value(d)));
  std::vector<QuadIdeal> reps;
  for (const auto& I : O.ideals_up_to(std::max(1UL, bound))) {
    bool seen = false;
    for (const auto& J : reps) {
      if (O.equivalent(I, J)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(I);
  }
  return Natural(reps.size());
}

FieldDescriptor quadratic_descriptor_for(const IntPoly& f) {
  if (f.size() != 3 || f[2] == 0) throw std::invalid_argument("quadratic_descriptor_for: f must have degree 2");
  const Integer B = f[1];
  const Integer C = f[0] * f[2];
  const Integer D = B * B - 4 * C;
  if (exact_sqrt(D)) throw std::invalid_argument("quadratic_descriptor_for: f is reducible over Q");
  const auto [s, m] = split_square(D);
  const bool one_mod_4 = floor_mod(m, 4) == 1;
  const Integer dk = one_mod_4 ? m : Integer(4 * m);
  const Integer t = one_mod_4 ? s : Integer(s / 2);
  const int r = one_mod_4 ? 1 : 0;

  FieldDescriptor desc;
  desc.f = f;
  desc.f_tilde = monicize(f);
  // theta = (-B + t sqrt(dk))/2, so w = (r + sqrt(dk))/2 = (r t + B + 2 theta)/(2 t).
  Rational w0(r * t + B, 2 * t);
  Rational w1(1, t);
  w0.canonicalize();
  w1.canonicalize();
  desc.basis = {{Rational(1), Rational(0)}, {w0, w1}};
  desc.index = t;
  desc.discriminant = dk;
  desc.units = {{-1, 0}};

  const QuadraticOrder O(dk);
  const long double sd = std::sqrt(to_ld(abs(dk)));
  long double c3;
  if (dk < 0) {
    const auto mu = O.roots_of_unity();
    if (mu.size() > 2) desc.units.push_back({0, 1});  // w generates mu_4 or mu_6
    desc.class_number = class_number_reduced_forms(dk);
    c3 = std::max(1.0L + r / sd, 2.0L / sd);
  } else {
    const QuadElem& eps = O.fundamental_unit();
    desc.units.push_back({eps.x, eps.y});
    desc.class_number = class_number_ideals(dk);
    c3 = std::sqrt(unit_value(O, eps)) * std::max(1.0L + r / sd, 2.0L / sd);
  }
  desc.minkowski_bound = rational_above(minkowski_value(dk));
  desc.c3 = rational_above(c3);
  return desc;
}

FieldDescriptor quadratic_descriptor(const Integer& m) {
  quadratic_discriminant(m);  // validates m
  return quadratic_descriptor_for({-m, 0, 1});
}

// ---------------------------------------------------------------------------

namespace {

QuadraticOrder census_order(const FieldDescriptor& desc, unsigned long x, unsigned long cap) {
  if (desc.degree() != 2) throw std::invalid_argument("census: descriptor is not quadratic");
  if (desc.discriminant >= 0) throw std::invalid_argument("census: real quadratic fields are not supported");
  if (x > cap) throw std::invalid_argument("census: x = " + std::to_string(x) + " exceeds the cap " + std::to_string(cap));
  return QuadraticOrder(desc.discriminant);
}

QuadElem canonical_associate(const QuadraticOrder& O, const std::vector<QuadElem>& units, const QuadElem& e) {
  QuadElem best = e;
  for (const auto& u : units) best = std::min(best, O.mul(u, e));
  return best;
}

}  // namespace

std::vector<unsigned long> smooth_ideal_norms(const QuadraticOrder& O, unsigned long x, unsigned long y,
                                              unsigned long power) {
  std::vector<QuadIdeal> primes;
  for (unsigned long ell = 2; ell <= y; ++ell) {
    if (!is_prime(Natural(ell))) continue;
    for (auto& P : O.primes_above(ell)) {
      Natural np;
      mpz_pow_ui(np.get_mpz_t(), P.norm().get_mpz_t(), power);
      if (np <= y && P.norm() <= x) primes.push_back(std::move(P));
    }
  }
  std::set<QuadIdeal> seen{O.unit_ideal()};
  std::vector<QuadIdeal> frontier{O.unit_ideal()};
  while (!frontier.empty()) {
    std::vector<QuadIdeal> next;
    for (const auto& I : frontier) {
      for (const auto& P : primes) {
        if (I.norm() * P.norm() > x) continue;
        QuadIdeal J = O.mul(I, P);
        if (seen.insert(J).second) next.push_back(std::move(J));
      }
    }
    frontier = std::move(next);
  }
  std::vector<unsigned long> norms;
  norms.reserve(seen.size());
  for (const auto& I : seen) norms.push_back(I.norm().get_ui());
  std::sort(norms.begin(), norms.end());
  return norms;
}

std::vector<unsigned long> smooth_principal_norms(const QuadraticOrder& O, unsigned long x, unsigned long y) {
  const auto units = O.roots_of_unity();
  const Integer ad = abs(O.discriminant());
  // Generators: one element per principal ideal of norm in (1, min(x, y)].
  std::set<QuadElem> gens;
  const unsigned long ny = std::min(x, y);
  for (Integer yy = 0; ad * yy * yy <= 4 * Integer(ny); ++yy) {
    for (const Integer& Y : {yy, Integer(-yy)}) {
      // 4N = (2x + r y)^2 + |d| y^2
      for (Integer s = 0; s * s + ad * Y * Y <= 4 * Integer(ny); ++s) {
        for (const Integer& sv : {s, Integer(-s)}) {
          const Integer num = sv - O.r() * Y;
          if (!divisible(num, 2)) continue;
          const QuadElem e{num / 2, Y};
          const Integer n = O.norm(e);
          if (n > 1 && n <= ny) gens.insert(canonical_associate(O, units, e));
        }
      }
      if (yy == 0) break;
    }
  }
  const QuadElem one{1, 0};
  std::set<QuadElem> seen{canonical_associate(O, units, one)};
  std::vector<QuadElem> frontier{one};
  while (!frontier.empty()) {
    std::vector<QuadElem> next;
    for (const auto& e : frontier) {
      const Integer ne = O.norm(e);
      for (const auto& g : gens) {
        if (ne * O.norm(g) > x) continue;
        QuadElem p = canonical_associate(O, units, O.mul(e, g));
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  std::vector<unsigned long> norms;
  norms.reserve(seen.size());
  for (const auto& e : seen) norms.push_back(O.norm(e).get_ui());
  std::sort(norms.begin(), norms.end());
  return norms;
}

CensusCounts principal_ideal_census(const FieldDescriptor& desc, unsigned long x, unsigned long y,
                                    unsigned long cap) {
  const QuadraticOrder O = census_order(desc, x, cap);
  return {Natural(smooth_ideal_norms(O, x, y).size()), Natural(smooth_principal_norms(O, x, y).size())};
}

std::vector<CensusCheck> check_census_inequality(const FieldDescriptor& desc, unsigned long x_max, unsigned long y,
                                                 unsigned long cap) {
  const QuadraticOrder O = census_order(desc, x_max, cap);
  if (!desc.class_number.fits_ulong_p() || desc.class_number < 1) {
    throw std::invalid_argument("census: class number out of range");
  }
  const unsigned long h = desc.class_number.get_ui();
  // The stored bound is rounded up; step below the true value instead.
  const Rational m_lo = desc.minkowski_bound - Rational(2, Integer("1000000000000"));
  if (m_lo <= 0) throw std::invalid_argument("census: Minkowski bound must be positive");
  auto floor_div = [&](unsigned long x) {
    const Rational q = Rational(Integer(x)) / m_lo;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_ui();
  };
  const auto psi_norms = smooth_ideal_norms(O, floor_div(x_max), y, h);
  const auto tilde_norms = smooth_principal_norms(O, x_max, y);
  std::vector<CensusCheck> out;
  out.reserve(x_max);
  for (unsigned long x = 1; x <= x_max; ++x) {
    CensusCheck c;
    c.x = x;
    c.y = y;
    const auto nt = std::upper_bound(tilde_norms.begin(), tilde_norms.end(), x) - tilde_norms.begin();
    const auto np = std::upper_bound(psi_norms.begin(), psi_norms.end(), floor_div(x)) - psi_norms.begin();
    c.lhs = Natural(h) * Natural(static_cast<unsigned long>(nt));
    c.rhs = Natural(static_cast<unsigned long>(np));
    c.holds = c.lhs >= c.rhs;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace smoothroots
