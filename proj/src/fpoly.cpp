#include "smoothroots/fpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "smoothroots/detail/poly_kernels.hpp"

namespace smoothroots {

namespace {

struct CtxRing {
  using Elem = mpz_class;
  const ModCtx* c;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(const Elem& a, const Elem& b) const { return c->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return c->sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return c->mul(a, b); }
  bool is_zero(const Elem& a) const { return a == 0; }
  const mpz_class& modulus() const { return c->modulus(); }
  mpz_class to_mpz(const Elem& a) const { return a; }
  Elem from_mpz(const mpz_class& z) const { return c->reduce(z); }
};

void require_same(const FpPoly& a, const FpPoly& b) {
  if (a.ctx() != b.ctx() && a.modulus() != b.modulus()) {
    throw ModulusMismatch("polynomials over different moduli (" + a.modulus().get_str() + " vs " +
                          b.modulus().get_str() + ")");
  }
}

}  // namespace

struct FpPolyAccess {
  static std::vector<Natural>& coeffs(FpPoly& f) { return f.coeffs_; }
  static void trim(FpPoly& f) { f.trim(); }
  static FpPoly from_raw(ModCtxPtr ctx, std::vector<Natural> raw) {
    FpPoly f(std::move(ctx));
    f.coeffs_ = std::move(raw);
    f.trim();
    return f;
  }
};

ModCtxPtr make_modulus(const Natural& modulus) { return std::make_shared<const ModCtx>(modulus); }

FpPoly::FpPoly(ModCtxPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("FpPoly: null modulus context");
}

FpPoly::FpPoly(ModCtxPtr ctx, const std::vector<Integer>& coeffs) : FpPoly(std::move(ctx)) {
  coeffs_.reserve(coeffs.size());
  for (const auto& c : coeffs) coeffs_.push_back(ctx_->reduce(c));
  trim();
}

FpPoly FpPoly::constant(ModCtxPtr ctx, const Integer& c) { return FpPoly(std::move(ctx), {c}); }

FpPoly FpPoly::y(ModCtxPtr ctx) { return FpPoly(std::move(ctx), {0, 1}); }

FpPoly FpPoly::monomial(ModCtxPtr ctx, const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1, Integer(0));
  v[degree] = c;
  return FpPoly(std::move(ctx), v);
}

FpPoly FpPoly::linear(ModCtxPtr ctx, const Integer& root) { return FpPoly(std::move(ctx), {-root, 1}); }

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Natural& FpPoly::lead() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) throw std::domain_error("cannot normalize the zero polynomial");
  if (is_monic()) return *this;
  return scaled(ctx_->inv(lead()));
}

FpPoly FpPoly::derivative() const {
  std::vector<Natural> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(ctx_->mul(coeffs_[i], Natural(i)));
  return FpPolyAccess::from_raw(ctx_, std::move(d));
}

Natural FpPoly::evaluate(const Natural& x) const {
  Natural acc = 0;
  const Natural xr = ctx_->reduce(x);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = ctx_->add(ctx_->mul(acc, xr), coeffs_[i]);
  return acc;
}

FpPoly FpPoly::scaled(const Natural& c) const {
  const Natural cr = ctx_->reduce(c);
  std::vector<Natural> v;
  v.reserve(coeffs_.size());
  for (const auto& a : coeffs_) v.push_back(ctx_->mul(a, cr));
  return FpPolyAccess::from_raw(ctx_, std::move(v));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  require_same(*this, o);
  return FpPolyAccess::from_raw(ctx_, detail::poly_add(CtxRing{ctx_.get()}, coeffs_, o.coeffs_));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  require_same(*this, o);
  return FpPolyAccess::from_raw(ctx_, detail::poly_sub(CtxRing{ctx_.get()}, coeffs_, o.coeffs_));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  require_same(*this, o);
  CtxRing r{ctx_.get()};
  const std::size_t m = std::min(coeffs_.size(), o.coeffs_.size());
  // Karatsuba above the threshold, schoolbook below; no FFT path here.
  auto prod = m > detail::kKaratsubaThreshold ? detail::mul_karatsuba(r, coeffs_, o.coeffs_)
                                              : detail::mul_schoolbook(r, coeffs_, o.coeffs_);
  return FpPolyAccess::from_raw(ctx_, std::move(prod));
}

FpPoly FpPoly::operator-() const {
  std::vector<Natural> v;
  v.reserve(coeffs_.size());
  for (const auto& a : coeffs_) v.push_back(ctx_->neg(a));
  return FpPolyAccess::from_raw(ctx_, std::move(v));
}

bool FpPoly::operator==(const FpPoly& o) const {
  return modulus() == o.modulus() && coeffs_ == o.coeffs_;
}

DivRem divrem(const FpPoly& a, const FpPoly& b) {
  require_same(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto& ctx = a.ctx();
  const Natural inv_lead = ctx->inv(b.lead());
  const FpPoly bm = b.scaled(inv_lead);
  auto [q, r] = detail::divrem_monic(CtxRing{ctx.get()}, a.coeffs(), bm.coeffs());
  FpPoly quot = FpPolyAccess::from_raw(ctx, std::move(q)).scaled(inv_lead);
  return {std::move(quot), FpPolyAccess::from_raw(ctx, std::move(r))};
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divrem(a, b).quot; }
FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divrem(a, b).rem; }

bool divides(const FpPoly& d, const FpPoly& a) { return (a % d).is_zero(); }

FpPoly poly_gcd(const FpPoly& a, const FpPoly& b) {
  require_same(a, b);
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

PolyBezout poly_egcd(const FpPoly& a, const FpPoly& b) {
  require_same(a, b);
  const auto& ctx = a.ctx();
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = FpPoly::constant(ctx, 1), s1(ctx);
  FpPoly t0(ctx), t1 = FpPoly::constant(ctx, 1);
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    FpPoly s2 = s0 - q * s1;
    FpPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Natural k = ctx->inv(r0.lead());
  return {r0.scaled(k), s0.scaled(k), t0.scaled(k)};
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

FpPoly poly_powmod(const FpPoly& a, const Natural& e, const FpPoly& m) {
  if (e < 0) throw std::invalid_argument("poly_powmod: negative exponent");
  FpPoly base = a % m;
  FpPoly acc = FpPoly::constant(a.ctx(), 1) % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = poly_mulmod(acc, acc, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = poly_mulmod(acc, base, m);
  }
  return acc;
}

bool canonical_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ctx = *a.ctx();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Natural x = ctx.neg(a.coeffs()[i]);
    const Natural y = ctx.neg(b.coeffs()[i]);
    if (x != y) return x < y;
  }
  return false;
}

std::string to_text(const FpPoly& f) {
  std::string out;
  if (f.is_zero()) {
    out = "0";
  } else {
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      if (i) out += ',';
      out += f.coeffs()[i].get_str();
    }
  }
  return out + " mod " + f.modulus().get_str();
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FpPoly parse_poly_text(std::string_view text) {
  const auto pos = text.find("mod");
  if (pos == std::string_view::npos) throw std::invalid_argument("polynomial text needs 'mod p': '" + std::string(text) + "'");
  const Integer p = parse_integer(strip(text.substr(pos + 3)));
  if (p < 2) throw std::invalid_argument("polynomial modulus must be at least 2");
  auto ctx = make_modulus(p);
  std::vector<Integer> coeffs;
  std::string_view body = strip(text.substr(0, pos));
  if (body.empty()) throw std::invalid_argument("polynomial text has no coefficients");
  while (true) {
    const auto comma = body.find(',');
    coeffs.push_back(parse_integer(strip(body.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return FpPoly(ctx, coeffs);
}

std::string to_pretty(const FpPoly& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const Natural& c = f.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

ResidueElem::ResidueElem(ResidueRingPtr ring, FpPoly value) : ring_(std::move(ring)), value_(std::move(value)) {}

std::string ResidueElem::encode() const {
  std::string out;
  auto put_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  const std::size_t n = ring_->degree();
  put_u32(static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Natural c = value_.coeff(i);
    std::size_t count = 0;
    std::vector<unsigned char> bytes((mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8 + 1);
    mpz_export(bytes.data(), &count, -1, 1, 0, 0, c.get_mpz_t());
    put_u32(static_cast<std::uint32_t>(count));
    out.append(reinterpret_cast<const char*>(bytes.data()), count);
  }
  return out;
}

bool ResidueElem::operator==(const ResidueElem& o) const {
  return ring_->same_as(*o.ring_) && value_ == o.value_;
}

ResidueRing::ResidueRing(FpPoly monic_g) : g_(std::move(monic_g)) {}

ResidueRingPtr ResidueRing::make(const FpPoly& g) {
  if (g.degree() < 1) throw std::invalid_argument("residue ring modulus must have positive degree");
  return ResidueRingPtr(new ResidueRing(g.monic()));
}

bool ResidueRing::same_as(const ResidueRing& o) const { return this == &o || g_ == o.g_; }

void ResidueRing::check(const ResidueElem& a) const {
  if (!same_as(*a.ring())) throw ModulusMismatch("residue elements from different rings");
}

ResidueElem ResidueRing::element(const FpPoly& v) const {
  if (v.modulus() != g_.modulus()) throw ModulusMismatch("element over a different prime");
  return ResidueElem(shared_from_this(), v % g_);
}

ResidueElem ResidueRing::one() const { return element(FpPoly::constant(g_.ctx(), 1)); }

ResidueElem ResidueRing::scalar(const Integer& c) const { return element(FpPoly::constant(g_.ctx(), c)); }

ResidueElem ResidueRing::mul(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  CtxRing r{g_.ctx().get()};
  auto prod = detail::mul_schoolbook(r, a.value().coeffs(), b.value().coeffs());
  auto rem = detail::divrem_monic(r, std::move(prod), g_.coeffs()).second;
  return ResidueElem(shared_from_this(), FpPolyAccess::from_raw(g_.ctx(), std::move(rem)));
}

ResidueElem ResidueRing::add(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  return ResidueElem(shared_from_this(), a.value() + b.value());
}

ResidueElem ResidueRing::sub(const ResidueElem& a, const ResidueElem& b) const {
  check(a);
  check(b);
  return ResidueElem(shared_from_this(), a.value() - b.value());
}

ResidueElem ResidueRing::pow(const ResidueElem& a, const Natural& e) const {
  check(a);
  if (e < 0) throw std::invalid_argument("ResidueRing::pow: negative exponent");
  ResidueElem acc = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = mul(acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, a);
  }
  return acc;
}

ResidueElem poly_mulmod(const ResidueElem& a, const ResidueElem& b) { return a.ring()->mul(a, b); }
ResidueElem poly_powmod(const ResidueElem& a, const Natural& e) { return a.ring()->pow(a, e); }

// ---------------------------------------------------------------------------

void sort_canonical(std::vector<Factor>& factors) {
  std::stable_sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
    if (canonical_less(a.poly, b.poly)) return true;
    if (canonical_less(b.poly, a.poly)) return false;
    return a.multiplicity < b.multiplicity;
  });
}

FpPoly reassemble(const PolyFactorization& fac, const ModCtxPtr& ctx) {
  FpPoly acc = FpPoly::constant(ctx, fac.leading);
  for (const auto& f : fac.factors) {
    for (unsigned long i = 0; i < f.multiplicity; ++i) acc = acc * f.poly;
  }
  return acc;
}

namespace {

// h(Y) = sum a_i Y^{ip}  ->  sum a_i Y^i  (coefficients are fixed by Frobenius in F_p).
FpPoly pth_root(const FpPoly& h) {
  if (!h.modulus().fits_ulong_p()) throw std::domain_error("p-th root: degree below p expected");
  const unsigned long p = h.modulus().get_ui();
  std::vector<Integer> v;
  for (std::size_t i = 0; i < h.coeffs().size(); i += p) v.push_back(h.coeffs()[i]);
  return FpPoly(h.ctx(), v);
}

void sqf_rec(const FpPoly& f, unsigned long scale, std::vector<Factor>& out) {
  if (f.degree() < 1) return;
  const FpPoly d = f.derivative();
  if (d.is_zero()) {
    sqf_rec(pth_root(f), scale * f.modulus().get_ui(), out);
    return;
  }
  FpPoly c = poly_gcd(f, d);
  FpPoly w = f / c;
  unsigned long i = 1;
  while (w.degree() > 0) {
    FpPoly y = poly_gcd(w, c);
    FpPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
    ++i;
    w = std::move(y);
    c = c / w;
  }
  if (c.degree() > 0) sqf_rec(pth_root(c), scale * f.modulus().get_ui(), out);
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const FpPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition of the zero polynomial");
  std::vector<Factor> raw;
  sqf_rec(f.monic(), 1, raw);
  std::vector<Factor> merged;
  for (auto& r : raw) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Factor& m) { return m.multiplicity == r.multiplicity; });
    if (it == merged.end()) {
      merged.push_back(std::move(r));
    } else {
      it->poly = it->poly * r.poly;
    }
  }
  sort_canonical(merged);
  return merged;
}

std::map<unsigned long, FpPoly> ddf(const FpPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("ddf needs a nonconstant polynomial");
  FpPoly rem = f.monic();
  if (poly_gcd(rem, rem.derivative()).degree() != 0) throw std::invalid_argument("ddf input is not squarefree");
  std::map<unsigned long, FpPoly> out;
  const auto& ctx = f.ctx();
  const FpPoly y = FpPoly::y(ctx);
  FpPoly h = y % rem;
  for (unsigned long e = 1; rem.degree() >= static_cast<long>(2 * e); ++e) {
    h = poly_powmod(h, f.modulus(), rem);
    FpPoly t = poly_gcd(rem, h - y);
    if (t.degree() > 0) {
      out.emplace(e, t);
      rem = rem / t;
      h = h % rem;
    }
  }
  if (rem.degree() > 0) out.emplace(static_cast<unsigned long>(rem.degree()), rem);
  return out;
}

namespace {

using Matrix = std::vector<std::vector<Natural>>;

// Basis of {v : v * m = 0} for a square matrix over Z/p.
std::vector<std::vector<Natural>> left_null_space(Matrix m, const ModCtx& ctx) {
  const std::size_t n = m.size();
  // Transpose so we solve m^T x = 0 by row reduction.
  Matrix a(n, std::vector<Natural>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
  std::vector<long> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    const Natural inv = ctx.inv(a[row][col]);
    for (auto& x : a[row]) x = ctx.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Natural k = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] = ctx.sub(a[r][j], ctx.mul(k, a[row][j]));
    }
    pivot_col_of_row.push_back(static_cast<long>(col));
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::vector<Natural>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Natural> v(n, Natural(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
      v[static_cast<std::size_t>(pivot_col_of_row[r])] = ctx.neg(a[r][free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FpPoly> berlekamp_split(const FpPoly& h) {
  const auto& ctx = h.ctx();
  const std::size_t n = static_cast<std::size_t>(h.degree());
  if (n <= 1) return {h};
  const FpPoly xp = poly_powmod(FpPoly::y(ctx), h.modulus(), h);
  Matrix q(n, std::vector<Natural>(n, Natural(0)));
  FpPoly row = FpPoly::constant(ctx, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = row.coeff(j);
    q[i][i] = ctx->sub(q[i][i], Natural(1));
    row = poly_mulmod(row, xp, h);
  }
  const auto basis = left_null_space(std::move(q), *ctx);
  const std::size_t r = basis.size();
  std::vector<FpPoly> factors{h};
  if (r <= 1) return factors;
  for (const auto& vec : basis) {
    std::vector<Integer> vc(vec.begin(), vec.end());
    const FpPoly v(ctx, vc);
    if (v.degree() < 1) continue;
    std::vector<FpPoly> next;
    for (std::size_t idx = 0; idx < factors.size(); ++idx) {
      const FpPoly& u = factors[idx];
      if (u.degree() <= 1 || factors.size() == r) {
        next.push_back(u);
        continue;
      }
      // gcd(v - s, u) over s partitions u; stop once the remainder is used up.
      FpPoly rest = u;
      for (Natural s = 0; s < h.modulus() && rest.degree() > 0; ++s) {
        FpPoly g = poly_gcd(v - FpPoly::constant(ctx, s), rest);
        if (g.degree() <= 0) continue;
        if (g.degree() == rest.degree()) break;
        next.push_back(g);
        rest = rest / g;
        if (next.size() + (factors.size() - idx - 1) + 1 == r) break;
      }
      next.push_back(rest.monic());
    }
    factors = std::move(next);
    if (factors.size() == r) break;
  }
  return factors;
}

}  // namespace

PolyFactorization berlekamp_complete(const FpPoly& f, const Natural& cutoff) {
  if (f.modulus() > cutoff) {
    throw std::invalid_argument("berlekamp_complete: p = " + f.modulus().get_str() + " exceeds the small-prime cutoff " +
                                cutoff.get_str());
  }
  if (f.is_zero()) throw std::invalid_argument("berlekamp_complete of the zero polynomial");
  PolyFactorization out{f.lead(), {}};
  if (f.degree() == 0) return out;
  for (const auto& comp : squarefree_decomposition(f)) {
    for (auto& irr : berlekamp_split(comp.poly)) out.factors.push_back({std::move(irr), comp.multiplicity});
  }
  sort_canonical(out.factors);
  return out;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("is_irreducible needs a nonconstant polynomial");
  if (f.degree() == 1) return true;
  const FpPoly m = f.monic();
  if (poly_gcd(m, m.derivative()).degree() != 0) return false;
  const auto parts = ddf(m);
  return parts.size() == 1 && parts.begin()->first == static_cast<unsigned long>(m.degree());
}

namespace oracle {

namespace {

void edf(const FpPoly& h, unsigned long e, gmp_randclass& rng, std::vector<FpPoly>& out) {
  if (h.degree() == static_cast<long>(e)) {
    out.push_back(h);
    return;
  }
  const auto& ctx = h.ctx();
  const Natural& p = h.modulus();
  Natural pe;
  mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
  const Natural exponent = (pe - 1) / 2;
  const FpPoly one = FpPoly::constant(ctx, 1);
  for (;;) {
    std::vector<Integer> coeffs;
    for (long i = 0; i < h.degree(); ++i) coeffs.push_back(rng.get_z_range(p));
    const FpPoly a(ctx, coeffs);
    if (a.degree() < 1) continue;
    const FpPoly g = poly_gcd(poly_powmod(a, exponent, h) - one, h);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      edf(g, e, rng, out);
      edf(h / g, e, rng, out);
      return;
    }
  }
}

}  // namespace

PolyFactorization cz_factor(const FpPoly& f, unsigned long seed) {
  if (f.modulus() == 2) throw std::invalid_argument("cz_factor: odd characteristic only");
  if (f.is_zero()) throw std::invalid_argument("cz_factor of the zero polynomial");
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  PolyFactorization out{f.lead(), {}};
  if (f.degree() == 0) return out;
  for (const auto& comp : squarefree_decomposition(f)) {
    for (const auto& [e, t] : ddf(comp.poly)) {
      std::vector<FpPoly> pieces;
      edf(t, e, rng, pieces);
      for (auto& piece : pieces) out.factors.push_back({piece.monic(), comp.multiplicity});
    }
  }
  sort_canonical(out.factors);
  return out;
}

}  // namespace oracle

}  // namespace smoothroots
