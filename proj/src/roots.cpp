#include "smoothroots/roots.hpp"

#include <algorithm>

#include "json.hpp"

namespace smoothroots {

std::string to_string(RootsMethod m) {
  switch (m) {
    case RootsMethod::FullFactorization:
      return "full_factorization";
    case RootsMethod::SingleRootFastPath:
      return "single_root_fast_path";
    case RootsMethod::ExpandedViaUnityRoot:
      return "expanded_via_unity_root";
  }
  return "unknown";
}

std::string to_string(ZetaSource z) {
  switch (z) {
    case ZetaSource::FromFactorization:
      return "from_factorization";
    case ZetaSource::Search:
      return "search";
    case ZetaSource::None:
      return "none";
  }
  return "unknown";
}

ZetaMode parse_zeta_mode(const std::string& text) {
  if (text == "none") return ZetaMode::None;
  if (text == "from_factorization") return ZetaMode::FromFactorization;
  if (text == "search") return ZetaMode::Search;
  throw std::invalid_argument("unknown zeta mode '" + text + "' (expected none, from_factorization or search)");
}

CapelliVerdict capelli_check(const Integer& a, unsigned long n) {
  if (n < 1) throw std::invalid_argument("capelli_check: n must be at least 1");
  if (a == 0 || a == 1 || a == -1) throw std::invalid_argument("capelli_check: a must not be 0, 1 or -1");
  unsigned long m = n;
  for (unsigned long ell = 2; ell <= m; ++ell) {
    if (m % ell != 0) continue;
    while (m % ell == 0) m /= ell;
    if (perfect_power_root(a, ell)) {
      return {false, a.get_str() + " = b^" + std::to_string(ell) + " for an integer b and " + std::to_string(ell) +
                         " divides n = " + std::to_string(n)};
    }
  }
  if (n % 4 == 0 && perfect_power_root(Integer(-4 * a), 4)) {
    return {false, "4 divides n = " + std::to_string(n) + " and -4a = " + Integer(-4 * a).get_str() +
                       " is a perfect fourth power"};
  }
  return {true, ""};
}

bool capelli_irreducible(const Integer& a, unsigned long n) { return capelli_check(a, n).irreducible; }

IntPoly binomial_poly(const Integer& a, unsigned long n) {
  IntPoly f(n + 1, Integer(0));
  f[0] = -a;
  f[n] = 1;
  return f;
}

Natural sth_root_from_factor(const FpPoly& g_in, const Natural& s, const Integer& a, const Natural& p) {
  if (g_in.modulus() != p) throw ModulusMismatch("sth_root_from_factor: factor is over a different prime");
  const FpPoly g = g_in.monic();
  const long dp = g.degree();
  if (dp < 1 || Natural(dp) >= s) throw std::invalid_argument("sth_root_from_factor: need 0 < deg g < s");
  const ModCtx& F = *g.ctx();
  Natural c0 = g.coeff(0);
  if (dp % 2 == 1) c0 = F.neg(c0);
  // deg g * u - s * w = 1
  const Bezout bz = egcd(Integer(dp), s);
  if (bz.g != 1) throw std::invalid_argument("sth_root_from_factor: deg g and s are not coprime");
  Integer u = bz.u;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), s.get_mpz_t());
  const Integer w = (Integer(dp) * u - 1) / s;
  const Natural ap = F.reduce(a);
  Natural cand = F.pow(c0, u);
  if (w >= 0) {
    cand = F.mul(cand, F.inv(F.pow(ap, w)));
  } else {
    cand = F.mul(cand, F.pow(ap, -w));
  }
  if (F.pow(cand, s) == ap) return cand;
  const Natural alt = F.neg(cand);
  if (F.pow(alt, s) == ap) return alt;
  throw ArithmeticError("sth_root_from_factor: candidate does not verify; g does not divide X^s - a");
}

std::vector<Natural> all_roots_from_one(const Natural& r, const Natural& s, const Natural& p, const Integer& a,
                                        ZetaMode mode, const std::optional<Natural>& other_root,
                                        unsigned long search_cap) {
  const ModCtx F(p);
  const Natural ap = F.reduce(a);
  if (F.pow(r, s) != ap) throw std::invalid_argument("all_roots_from_one: r is not an s-th root of a");
  if ((p - 1) % s != 0) throw std::invalid_argument("all_roots_from_one: s does not divide p - 1");
  Natural zeta;
  if (s == 2) {
    zeta = p - 1;
  } else if (mode == ZetaMode::FromFactorization) {
    if (!other_root || F.reduce(*other_root) == F.reduce(r)) {
      throw std::invalid_argument("all_roots_from_one: a second, distinct root is needed");
    }
    if (F.pow(*other_root, s) != ap) throw std::invalid_argument("all_roots_from_one: second value is not a root");
    zeta = F.mul(*other_root, F.inv(r));
  } else if (mode == ZetaMode::Search) {
    const Natural cap = search_cap ? Natural(search_cap) : Natural(p - 1);
    const Natural ex = (p - 1) / s;
    bool found = false;
    for (Natural b = 2; b <= cap && b < p; ++b) {
      zeta = F.pow(b, ex);
      if (zeta != 1) {
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("all_roots_from_one: no primitive root of unity below the search cap");
  } else {
    throw std::invalid_argument("all_roots_from_one: a zeta mode is required");
  }
  std::vector<Natural> out;
  Natural cur = F.reduce(r);
  for (Natural i = 0; i < s; ++i) {
    out.push_back(cur);
    cur = F.mul(cur, zeta);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// A monic proper divisor of h (deg h >= 2), or nothing when h is irreducible.
// h must divide X^n - a mod p, so it is squarefree.
std::optional<FpPoly> proper_divisor(const FpPoly& h, const NumberField& nf, const SmoothnessProfile* profile,
                                     const SplitParams& params) {
  if (h.degree() < 2) return std::nullopt;
  if (h.modulus() <= params.small_prime_cutoff || profile == nullptr) {
    const PolyFactorization fac = berlekamp_complete(h, std::max(params.small_prime_cutoff, h.modulus()));
    if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1) return std::nullopt;
    return fac.factors[0].poly;
  }
  const auto parts = ddf(h.monic());
  if (parts.size() >= 2) return parts.begin()->second;
  const auto& [e, t] = *parts.begin();
  if (t.degree() == static_cast<long>(e)) return std::nullopt;
  return split_factor(t, e, nf, *profile, params).divisor->monic();
}

}  // namespace

RootsResult nth_roots(const Integer& a, unsigned long n, const Natural& p, const NumberField& nf,
                      const SplitParams& params, ZetaMode mode) {
  const CapelliVerdict cap = capelli_check(a, n);
  if (!cap.irreducible) {
    throw CapelliViolation("X^" + std::to_string(n) + " - " + a.get_str() +
                           " is reducible over Q (" + cap.reason + "); factor it and treat each factor separately");
  }
  const IntPoly f = binomial_poly(a, n);
  if (nf.descriptor().f != f) throw std::invalid_argument("nth_roots: descriptor is not for X^n - a");
  if (!is_prime(p)) throw std::invalid_argument("nth_roots: p = " + p.get_str() + " is not prime");
  if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) throw std::invalid_argument("nth_roots: p divides a");

  RootsResult res;
  res.p = p;
  res.a = a;
  res.n = n;
  const ModCtxPtr F = make_modulus(p);
  const Natural ap = F->reduce(a);

  if (mode == ZetaMode::None) {
    const FactorizationResult fac = factor_fixed(f, p, nf, params);
    for (const auto& fc : fac.factors) {
      if (fc.poly.degree() == 1) res.roots.push_back(F->neg(fc.poly.coeff(0)));
    }
    res.method = RootsMethod::FullFactorization;
  } else {
    if (!is_prime(Natural(n))) throw std::invalid_argument("nth_roots: the single-root path needs n prime");
    const Natural s(n);
    SplitParams fast = params;
    fast.tau = Rational(1, n);
    if (fast.tau + fast.delta > 1) fast.delta = 1 - fast.tau;
    std::optional<SmoothnessProfile> profile;
    if (p > params.small_prime_cutoff && p != 2) profile = least_q(p, fast.tau, fast.delta);
    const SmoothnessProfile* prof = profile ? &*profile : nullptr;

    const FpPoly fp(F, f);
    res.method = RootsMethod::SingleRootFastPath;
    auto root_of = [&](const FpPoly& g) -> Natural {
      if (g.degree() == 1) return F->neg(g.monic().coeff(0));
      return sth_root_from_factor(g, s, a, p);
    };
    // X^p - a = (X - a)^p mod p.
    std::optional<FpPoly> g;
    if (s == p) {
      g = FpPoly::linear(F, ap);
    } else {
      g = n == 1 ? std::optional<FpPoly>(fp) : proper_divisor(fp, nf, prof, fast);
    }
    if (g) {
      const Natural r = root_of(*g);
      if ((p - 1) % s != 0 || n == 1) {
        res.roots.push_back(r);
      } else {
        std::optional<Natural> other;
        if (mode == ZetaMode::FromFactorization && s != 2) {
          // Keep splitting until two linear pieces are known.
          std::vector<FpPoly> pieces{*g, fp / *g};
          std::vector<Natural> known;
          while (known.size() < 2) {
            known.clear();
            std::size_t pick = pieces.size();
            for (std::size_t i = 0; i < pieces.size(); ++i) {
              if (pieces[i].degree() == 1) {
                known.push_back(F->neg(pieces[i].monic().coeff(0)));
              } else if (pick == pieces.size() || pieces[i].degree() < pieces[pick].degree()) {
                pick = i;
              }
            }
            if (known.size() >= 2) break;
            if (pick == pieces.size()) throw std::logic_error("nth_roots: ran out of pieces to split");
            const FpPoly h = pieces[pick];
            const auto d = proper_divisor(h, nf, prof, fast);
            if (!d) throw std::logic_error("nth_roots: X^s - a did not split completely");
            pieces[pick] = *d;
            pieces.push_back(h / *d);
          }
          const Natural r0 = known[0];
          other = known[1];
          res.roots = all_roots_from_one(r0, s, p, a, mode, other);
        } else {
          res.roots = all_roots_from_one(r, s, p, a, mode, other);
        }
        res.method = RootsMethod::ExpandedViaUnityRoot;
        res.zeta_source = mode == ZetaMode::Search ? ZetaSource::Search : ZetaSource::FromFactorization;
        res.zeta_caveat = mode == ZetaMode::Search;
      }
    }
  }
  std::sort(res.roots.begin(), res.roots.end());
  res.roots.erase(std::unique(res.roots.begin(), res.roots.end()), res.roots.end());
  for (const auto& r : res.roots) {
    if (F->pow(r, Natural(n)) != ap) throw std::logic_error("nth_roots: produced a value that is not a root");
  }
  return res;
}

std::string roots_to_json(const RootsResult& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p.get_str();
  j["a"] = r.a.get_str();
  j["n"] = r.n;
  auto roots = nlohmann::ordered_json::array();
  for (const auto& x : r.roots) roots.push_back(x.get_str());
  j["roots"] = std::move(roots);
  j["method"] = to_string(r.method);
  j["zeta_source"] = to_string(r.zeta_source);
  j["zeta_caveat"] = r.zeta_caveat;
  return j.dump(2) + "\n";
}

}  // namespace smoothroots
