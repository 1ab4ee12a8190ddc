#pragma once

// Dense univariate polynomial kernels over an arbitrary commutative
// coefficient ring. Polynomials are std::vector<Elem>, constant term first,
// with no trailing zeros (the zero polynomial is empty).
//
// A ring type R provides:
//   using Elem;
//   Elem zero() const, one() const;
//   Elem add(a, b), sub(a, b), mul(a, b) const; bool is_zero(a) const;
// and optionally, to enable Kronecker substitution through GMP:
//   const mpz_class& modulus() const; mpz_class to_mpz(a); Elem from_mpz(z).

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smoothroots::detail {

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::Elem& a) {
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.add(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.sub(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, a) } -> std::convertible_to<typename R::Elem>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
};

template <class R>
concept KroneckerRing = CoefficientRing<R> && requires(const R& r, const typename R::Elem& a,
                                                      const mpz_class& z) {
  { r.modulus() } -> std::convertible_to<const mpz_class&>;
  { r.to_mpz(a) } -> std::convertible_to<mpz_class>;
  { r.from_mpz(z) } -> std::convertible_to<typename R::Elem>;
};

/// Z/n for n < 2^63.
struct U64ModRing {
  using Elem = std::uint64_t;
  std::uint64_t n;
  mpz_class n_mpz;

  explicit U64ModRing(std::uint64_t modulus) : n(modulus), n_mpz(static_cast<unsigned long>(modulus)) {}

  Elem zero() const { return 0; }
  Elem one() const { return 1 % n; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= n ? s - n : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + n - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % n);
  }
  bool is_zero(Elem a) const { return a == 0; }
  const mpz_class& modulus() const { return n_mpz; }
  mpz_class to_mpz(Elem a) const { return mpz_class(static_cast<unsigned long>(a)); }
  Elem from_mpz(const mpz_class& z) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), n_mpz.get_mpz_t());
    return static_cast<Elem>(r.get_ui());
  }
};

/// Z/n for arbitrary n >= 2.
struct MpzModRing {
  using Elem = mpz_class;
  mpz_class n;

  explicit MpzModRing(mpz_class modulus) : n(std::move(modulus)) {}

  Elem zero() const { return 0; }
  Elem one() const { return n == 1 ? Elem(0) : Elem(1); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= n) s -= n;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (s < 0) s += n;
    return s;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem s = a * b;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), n.get_mpz_t());
    return s;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  const mpz_class& modulus() const { return n; }
  mpz_class to_mpz(const Elem& a) const { return a; }
  Elem from_mpz(const mpz_class& z) const {
    Elem r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), n.get_mpz_t());
    return r;
  }
};

inline constexpr std::size_t kKaratsubaThreshold = 32;
inline constexpr std::size_t kKroneckerThreshold = 24;

template <CoefficientRing R>
void trim(const R& r, std::vector<typename R::Elem>& a) {
  while (!a.empty() && r.is_zero(a.back())) a.pop_back();
}

template <CoefficientRing R>
std::vector<typename R::Elem> poly_add(const R& r, const std::vector<typename R::Elem>& a,
                                       const std::vector<typename R::Elem>& b) {
  std::vector<typename R::Elem> out(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = r.add(out[i], b[i]);
  trim(r, out);
  return out;
}

template <CoefficientRing R>
std::vector<typename R::Elem> poly_sub(const R& r, const std::vector<typename R::Elem>& a,
                                       const std::vector<typename R::Elem>& b) {
  std::vector<typename R::Elem> out(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = r.sub(out[i], b[i]);
  trim(r, out);
  return out;
}

template <CoefficientRing R>
std::vector<typename R::Elem> mul_schoolbook(const R& r, const std::vector<typename R::Elem>& a,
                                             const std::vector<typename R::Elem>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<typename R::Elem> out(a.size() + b.size() - 1, r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (r.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
  }
  trim(r, out);
  return out;
}

namespace karatsuba_impl {

// Unnormalized (may carry trailing zeros) recursive product of equal-length inputs.
template <CoefficientRing R>
std::vector<typename R::Elem> rec(const R& r, const typename R::Elem* a, const typename R::Elem* b,
                                  std::size_t n) {
  using E = typename R::Elem;
  if (n <= kKaratsubaThreshold) {
    std::vector<E> out(2 * n - 1, r.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
    return out;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;
  std::vector<E> asum(hi, r.zero()), bsum(hi, r.zero());
  for (std::size_t i = 0; i < hi; ++i) {
    asum[i] = a[h + i];
    bsum[i] = b[h + i];
    if (i < h) {
      asum[i] = r.add(asum[i], a[i]);
      bsum[i] = r.add(bsum[i], b[i]);
    }
  }
  std::vector<E> low = h ? rec(r, a, b, h) : std::vector<E>{};
  std::vector<E> high = rec(r, a + h, b + h, hi);
  std::vector<E> mid = rec(r, asum.data(), bsum.data(), hi);
  for (std::size_t i = 0; i < low.size(); ++i) mid[i] = r.sub(mid[i], low[i]);
  for (std::size_t i = 0; i < high.size(); ++i) mid[i] = r.sub(mid[i], high[i]);
  std::vector<E> out(2 * n - 1, r.zero());
  for (std::size_t i = 0; i < low.size(); ++i) out[i] = r.add(out[i], low[i]);
  for (std::size_t i = 0; i < mid.size(); ++i) out[i + h] = r.add(out[i + h], mid[i]);
  for (std::size_t i = 0; i < high.size(); ++i) out[i + 2 * h] = r.add(out[i + 2 * h], high[i]);
  return out;
}

}  // namespace karatsuba_impl

template <CoefficientRing R>
std::vector<typename R::Elem> mul_karatsuba(const R& r, std::vector<typename R::Elem> a,
                                            std::vector<typename R::Elem> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = std::max(a.size(), b.size());
  const std::size_t out_len = a.size() + b.size() - 1;
  a.resize(n, r.zero());
  b.resize(n, r.zero());
  auto out = karatsuba_impl::rec(r, a.data(), b.data(), n);
  out.resize(out_len, r.zero());
  trim(r, out);
  return out;
}

/// Multiplication by packing coefficients into one big integer and letting
/// GMP's subquadratic multiplication do the work.
template <KroneckerRing R>
std::vector<typename R::Elem> mul_kronecker(const R& r, const std::vector<typename R::Elem>& a,
                                            const std::vector<typename R::Elem>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t mod_bits = mpz_sizeinbase(r.modulus().get_mpz_t(), 2);
  std::size_t len_bits = 1;
  while ((std::size_t{1} << len_bits) < std::min(a.size(), b.size()) + 1) ++len_bits;
  const std::size_t slot_bits = 2 * mod_bits + len_bits + 1;
  const std::size_t slot_words = (slot_bits + 63) / 64;

  auto pack = [&](const std::vector<typename R::Elem>& p) {
    std::vector<std::uint64_t> buf(p.size() * slot_words, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      mpz_class c = r.to_mpz(p[i]);
      std::size_t count = 0;
      mpz_export(buf.data() + i * slot_words, &count, -1, sizeof(std::uint64_t), 0, 0, c.get_mpz_t());
    }
    mpz_class z;
    mpz_import(z.get_mpz_t(), buf.size(), -1, sizeof(std::uint64_t), 0, 0, buf.data());
    return z;
  };
  mpz_class za = pack(a), zb = pack(b);
  mpz_class prod = za * zb;
  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<std::uint64_t> buf(out_len * slot_words + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(std::uint64_t), 0, 0, prod.get_mpz_t());
  std::vector<typename R::Elem> out(out_len, r.zero());
  for (std::size_t i = 0; i < out_len; ++i) {
    mpz_class c;
    mpz_import(c.get_mpz_t(), slot_words, -1, sizeof(std::uint64_t), 0, 0, buf.data() + i * slot_words);
    out[i] = r.from_mpz(c);
  }
  trim(r, out);
  return out;
}

template <CoefficientRing R>
std::vector<typename R::Elem> poly_mul(const R& r, const std::vector<typename R::Elem>& a,
                                       const std::vector<typename R::Elem>& b) {
  const std::size_t m = std::min(a.size(), b.size());
  if constexpr (KroneckerRing<R>) {
    if (m >= kKroneckerThreshold) return mul_kronecker(r, a, b);
  }
  if (m > kKaratsubaThreshold) return mul_karatsuba(r, a, b);
  return mul_schoolbook(r, a, b);
}

/// a = q*m + rem with m monic (leading coefficient equal to r.one()).
template <CoefficientRing R>
std::pair<std::vector<typename R::Elem>, std::vector<typename R::Elem>> divrem_monic(
    const R& r, std::vector<typename R::Elem> a, const std::vector<typename R::Elem>& m) {
  using E = typename R::Elem;
  if (m.empty()) throw std::invalid_argument("division by zero polynomial");
  trim(r, a);
  if (a.size() < m.size()) return {{}, std::move(a)};
  const std::size_t dm = m.size() - 1;
  std::vector<E> q(a.size() - dm, r.zero());
  for (std::size_t i = a.size(); i-- > dm;) {
    E c = a[i];
    q[i - dm] = c;
    if (r.is_zero(c)) continue;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] = r.sub(a[i - dm + j], r.mul(c, m[j]));
  }
  a.resize(dm, r.zero());
  trim(r, a);
  trim(r, q);
  return {std::move(q), std::move(a)};
}

/// Inverse of f modulo x^n, f(0) = 1, by Newton iteration.
template <CoefficientRing R>
std::vector<typename R::Elem> series_inverse(const R& r, const std::vector<typename R::Elem>& f,
                                             std::size_t n) {
  using E = typename R::Elem;
  std::vector<E> g{r.one()};
  std::size_t prec = 1;
  while (prec < n) {
    prec = std::min(2 * prec, n);
    std::vector<E> ftrunc(f.begin(), f.begin() + std::min(f.size(), prec));
    trim(r, ftrunc);
    auto fg = poly_mul(r, ftrunc, g);
    fg.resize(prec, r.zero());
    // g <- g * (2 - f g)
    std::vector<E> corr(prec, r.zero());
    for (std::size_t i = 0; i < prec; ++i) corr[i] = r.sub(r.zero(), fg[i]);
    corr[0] = r.add(corr[0], r.add(r.one(), r.one()));
    trim(r, corr);
    g = poly_mul(r, g, corr);
    g.resize(prec, r.zero());
    trim(r, g);
  }
  return g;
}

/// Remainder of a modulo monic m, using a precomputed inverse of rev(m)
/// when the quotient is long.
template <CoefficientRing R>
std::vector<typename R::Elem> rem_monic(const R& r, const std::vector<typename R::Elem>& a,
                                        const std::vector<typename R::Elem>& m,
                                        const std::vector<typename R::Elem>* rev_inv = nullptr) {
  using E = typename R::Elem;
  if (a.size() < m.size()) return a;
  const std::size_t dm = m.size() - 1;
  const std::size_t qlen = a.size() - dm;
  if (qlen <= kKaratsubaThreshold || rev_inv == nullptr) return divrem_monic(r, a, m).second;
  // rev(q) = rev(a) * rev(m)^-1 mod x^qlen
  std::vector<E> ra(a.rbegin(), a.rend());
  ra.resize(qlen, r.zero());
  trim(r, ra);
  std::vector<E> inv(rev_inv->begin(), rev_inv->begin() + std::min(qlen, rev_inv->size()));
  auto rq = poly_mul(r, ra, inv);
  rq.resize(qlen, r.zero());
  std::vector<E> q(rq.rbegin(), rq.rend());
  trim(r, q);
  return poly_sub(r, a, poly_mul(r, q, m));
}

/// Balanced product tree: level 0 holds the inputs, the last level the product.
template <CoefficientRing R>
class ProductTree {
 public:
  using Poly = std::vector<typename R::Elem>;

  ProductTree(const R& r, std::vector<Poly> leaves) {
    if (leaves.empty()) leaves.push_back({r.one()});
    levels_.push_back(std::move(leaves));
    while (levels_.back().size() > 1) {
      const auto& prev = levels_.back();
      std::vector<Poly> next;
      next.reserve((prev.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(poly_mul(r, prev[i], prev[i + 1]));
      if (prev.size() % 2 == 1) next.push_back(prev.back());
      levels_.push_back(std::move(next));
    }
  }

  const Poly& root() const { return levels_.back().front(); }
  const std::vector<std::vector<Poly>>& levels() const { return levels_; }

 private:
  std::vector<std::vector<Poly>> levels_;
};

/// Values f(x_i) through the remainder tree over the subproduct tree of (X - x_i).
template <CoefficientRing R>
std::vector<typename R::Elem> multipoint_evaluate(const R& r, const std::vector<typename R::Elem>& f,
                                                  const std::vector<typename R::Elem>& points) {
  using E = typename R::Elem;
  using Poly = std::vector<E>;
  if (points.empty()) return {};
  std::vector<Poly> leaves;
  leaves.reserve(points.size());
  for (const auto& x : points) {
    Poly lin{r.sub(r.zero(), x), r.one()};
    trim(r, lin);
    leaves.push_back(std::move(lin));
  }
  ProductTree<R> tree(r, std::move(leaves));
  const auto& levels = tree.levels();

  std::vector<Poly> rems{f};
  for (std::size_t lv = levels.size(); lv-- > 0;) {
    const auto& nodes = levels[lv];
    std::vector<Poly> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Poly& parent_rem = (lv + 1 == levels.size()) ? rems[0] : rems[i / 2];
      const Poly& m = nodes[i];
      Poly inv;
      const std::size_t qlen = parent_rem.size() >= m.size() ? parent_rem.size() - m.size() + 1 : 0;
      if (qlen > kKaratsubaThreshold) inv = series_inverse(r, Poly(m.rbegin(), m.rend()), qlen);
      next[i] = rem_monic(r, parent_rem, m, inv.empty() ? nullptr : &inv);
    }
    rems = std::move(next);
  }
  std::vector<E> out;
  out.reserve(points.size());
  for (const auto& rem : rems) out.push_back(rem.empty() ? r.zero() : rem[0]);
  return out;
}

}  // namespace smoothroots::detail
