#include "smoothroots/splitter.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "smoothroots/detail/poly_kernels.hpp"

namespace smoothroots {

namespace {

std::string coords_str(const AlgebraicInt& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + x.coords[i].get_str();
  return s + ")";
}

TraceEvent event(std::string kind, std::vector<std::pair<std::string, std::string>> fields = {}) {
  return TraceEvent{std::move(kind), std::move(fields)};
}

Natural ceil_sqrt(const Natural& n) {
  Natural r = isqrt(n);
  if (r * r < n) ++r;
  return r;
}

bool is_scalar(const ResidueElem& a) { return a.value().degree() <= 0; }

}  // namespace

std::vector<std::string> check_params(const SplitParams& params, std::size_t degree) {
  if (params.delta <= 0) throw std::invalid_argument("delta must be positive");
  if (params.c <= 0) throw std::invalid_argument("c must be positive");
  if (params.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (params.tau < 0 || params.tau + params.delta > 1) throw std::invalid_argument("need 0 <= tau and tau + delta <= 1");
  if (params.coord_bound_schedule.empty()) throw std::invalid_argument("coordinate bound schedule is empty");
  for (std::size_t i = 0; i < params.coord_bound_schedule.size(); ++i) {
    if (params.coord_bound_schedule[i] < 1) throw std::invalid_argument("coordinate bounds must be at least 1");
    if (i && params.coord_bound_schedule[i] <= params.coord_bound_schedule[i - 1]) {
      throw std::invalid_argument("coordinate bound schedule must be strictly increasing");
    }
  }
  std::vector<std::string> warnings;
  const Rational lhs = Rational(Integer(degree)) / params.c + params.epsilon;
  if (lhs >= 2 * params.delta) {
    warnings.push_back("d/c + epsilon = " + to_string(lhs) + " is not below 2*delta = " +
                       to_string(Rational(2 * params.delta)));
  }
  return warnings;
}

GroupContext make_group_context(const FpPoly& g, unsigned long e, const SmoothnessProfile& profile) {
  if (e == 0 || g.degree() < 1 || g.degree() % static_cast<long>(e) != 0) {
    throw std::invalid_argument("make_group_context: deg g must be a positive multiple of e");
  }
  if (g.modulus() != profile.p) throw ModulusMismatch("make_group_context: profile is for a different prime");
  GroupContext ctx{profile.p, g.monic(), nullptr, e, static_cast<unsigned long>(g.degree()) / e, profile, 0, 0};
  ctx.ring = ResidueRing::make(ctx.g);
  const Natural pm1 = ctx.p - 1;
  const Natural rest = pm1 / profile.smooth;
  if (gcd(profile.smooth, rest) != 1) throw std::logic_error("smooth part is not coprime to its cofactor");
  ctx.m_proj = crt_idempotent(profile.smooth, rest);
  Natural pe;
  mpz_pow_ui(pe.get_mpz_t(), ctx.p.get_mpz_t(), e);
  ctx.sigma_exp = (pe - 1) / pm1;
  return ctx;
}

ResidueElem sigma_map(const ResidueElem& b, const GroupContext& ctx) { return ctx.ring->pow(b, ctx.sigma_exp); }

ResidueElem project_to_G1(const ResidueElem& a, const GroupContext& ctx) { return ctx.ring->pow(a, ctx.m_proj); }

unsigned long s_part_order(const ResidueElem& a, const Natural& s, unsigned long cap) {
  ResidueElem x = a;
  for (unsigned long j = 0;; ++j) {
    if (x.is_one()) return j;
    if (j == cap) throw std::invalid_argument("s_part_order: element order is not a divisor of s^cap");
    x = a.ring()->pow(x, s);
  }
}

// ---------------------------------------------------------------------------

namespace {

// Baby-step/giant-step in the cyclic group of prime order s generated by gamma.
class OrderSTable {
 public:
  OrderSTable(const ResidueElem& gamma, const Natural& s) : gamma_(gamma), giant_(gamma) {
    const Natural m = ceil_sqrt(s);
    if (!m.fits_ulong_p() || m > Natural(1UL << 32)) throw std::invalid_argument("BSGS: prime s too large");
    m_ = m.get_ui();
    const auto& R = gamma.ring();
    ResidueElem cur = R->one();
    for (unsigned long j = 0; j < m_; ++j) {
      baby_.emplace(cur.encode(), j);
      cur = R->mul(cur, gamma);
    }
    // gamma^-m = gamma^(s - m mod s)
    Natural neg_m = s - (m % s);
    if (neg_m == s) neg_m = 0;
    giant_ = R->pow(gamma, neg_m);
  }

  std::size_t size() const { return baby_.size(); }

  std::optional<Natural> log(const ResidueElem& h) const {
    const auto& R = h.ring();
    ResidueElem cur = h;
    for (unsigned long i = 0; i < m_; ++i) {
      auto it = baby_.find(cur.encode());
      if (it != baby_.end()) return Natural(i) * m_ + it->second;
      cur = R->mul(cur, giant_);
    }
    return std::nullopt;
  }

 private:
  ResidueElem gamma_;
  ResidueElem giant_;
  unsigned long m_ = 1;
  std::unordered_map<std::string, unsigned long> baby_;
};

}  // namespace

std::variant<Natural, NotInSubgroup> bsgs_dlog(const ResidueElem& base, const ResidueElem& target, const Natural& s,
                                               unsigned long alpha) {
  const auto& R = base.ring();
  Natural order;
  mpz_pow_ui(order.get_mpz_t(), s.get_mpz_t(), alpha);
  if (!R->pow(target, order).is_one()) throw std::invalid_argument("bsgs_dlog: target order does not divide s^alpha");
  if (alpha == 0) return Natural(0);
  Natural top;
  mpz_pow_ui(top.get_mpz_t(), s.get_mpz_t(), alpha - 1);
  const ResidueElem gamma = R->pow(base, top);
  if (gamma.is_one()) throw std::invalid_argument("bsgs_dlog: base does not have order s^alpha");
  const OrderSTable table(gamma, s);
  const ResidueElem base_inv = R->pow(base, order - 1);

  Natural x = 0;
  Natural s_k = 1;  // s^k
  for (unsigned long k = 0; k < alpha; ++k) {
    // h_k = (base^-x * target)^(s^(alpha-1-k))
    const ResidueElem y = R->mul(target, R->pow(base_inv, x));
    Natural ex;
    mpz_pow_ui(ex.get_mpz_t(), s.get_mpz_t(), alpha - 1 - k);
    const ResidueElem hk = R->pow(y, ex);
    const auto digit = table.log(hk);
    if (!digit) return NotInSubgroup{gamma, hk};
    x += *digit * s_k;
    s_k *= s;
  }
  return x;
}

Extraction extract_factor(const ResidueElem& a_prime, const ResidueElem& b_prime, const FpPoly& g, const Natural& s) {
  const auto& R = a_prime.ring();
  const ResidueElem a_inv = R->pow(a_prime, s - 1);
  const FpPoly one = FpPoly::constant(g.ctx(), 1);
  ResidueElem w = b_prime;
  for (Natural i = 0; i < s; ++i) {
    const FpPoly d = poly_gcd(w.value() - one, g);
    if (d.degree() > 0 && d.degree() < g.degree()) return {d, i};
    w = R->mul(w, a_inv);
  }
  throw std::logic_error("extract_factor: no i in [0, s) splits g (witnesses do not satisfy the preconditions)");
}

namespace {

// R_g as a coefficient ring for the product-tree kernels.
struct ResidueCoeffRing {
  using Elem = FpPoly;
  ResidueRingPtr ring;

  Elem zero() const { return FpPoly(ring->field()); }
  Elem one() const { return FpPoly::constant(ring->field(), 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return ring->mul(ring->element(a), ring->element(b)).value(); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
};

}  // namespace

Extraction extract_factor_batched(const ResidueElem& a_prime, const ResidueElem& b_prime, const FpPoly& g,
                                  const Natural& s) {
  const auto& R = a_prime.ring();
  const Natural mm = ceil_sqrt(s);
  if (!mm.fits_ulong_p()) throw std::invalid_argument("extract_factor_batched: s too large");
  const unsigned long m = mm.get_ui();
  const ResidueElem a_inv = R->pow(a_prime, s - 1);
  const ResidueCoeffRing ring{R};
  const FpPoly one = ring.one();

  // c_j = b' a'^-j, F(Z) = prod_j (c_j Z - 1), u = a'^-m; block t covers i = t*m + j.
  std::vector<std::vector<FpPoly>> leaves;
  std::vector<ResidueElem> cs;
  ResidueElem c = b_prime;
  for (unsigned long j = 0; j < m; ++j) {
    cs.push_back(c);
    leaves.push_back({ring.sub(ring.zero(), one), c.value()});
    c = R->mul(c, a_inv);
  }
  const ResidueElem u = R->pow(a_inv, mm);
  detail::ProductTree<ResidueCoeffRing> tree(ring, std::move(leaves));
  std::vector<FpPoly> points;
  ResidueElem z = R->one();
  for (unsigned long t = 0; t < m; ++t) {
    points.push_back(z.value());
    z = R->mul(z, u);
  }
  const auto values = detail::multipoint_evaluate(ring, tree.root(), points);
  for (unsigned long t = 0; t < m; ++t) {
    if (poly_gcd(values[t], g).is_one()) continue;
    // Some i in this block has a nonconstant gcd; find the first one.
    const ResidueElem zt = R->pow(u, Natural(t));
    for (unsigned long j = 0; j < m; ++j) {
      const Natural i = Natural(t) * m + j;
      if (i >= s) break;
      const FpPoly d = poly_gcd(R->mul(cs[j], zt).value() - one, g);
      if (d.degree() > 0 && d.degree() < g.degree()) return {d, i};
    }
  }
  throw std::logic_error("extract_factor_batched: no i in [0, s) splits g (witnesses do not satisfy the preconditions)");
}

std::string to_string(SplitOutcome outcome) {
  switch (outcome) {
    case SplitOutcome::Split:
      return "split";
    case SplitOutcome::CyclicPassed:
      return "cyclic_passed";
    case SplitOutcome::GcdShortcut:
      return "gcd_shortcut";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

CyclicityTester::CyclicityTester(FpPoly g, std::vector<PrimePower> primes, Natural exponent, bool batched)
    : g_(std::move(g)), exponent_(std::move(exponent)), batched_(batched) {
  for (auto& pp : primes) {
    Natural spow;
    mpz_pow_ui(spow.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    if (!mpz_divisible_p(exponent_.get_mpz_t(), spow.get_mpz_t())) {
      throw std::invalid_argument("CyclicityTester: prime power does not divide the exponent");
    }
    states_.push_back(PrimeState{pp, exponent_ / spow, std::nullopt, 0});
  }
}

std::optional<Extraction> CyclicityTester::add(const ResidueElem& a, std::vector<TraceEvent>& trace) {
  const auto& R = a.ring();
  for (auto& st : states_) {
    const Natural& s = st.pp.prime;
    const ResidueElem h = R->pow(a, st.part_exp);
    const unsigned long beta = s_part_order(h, s, st.pp.exponent);
    if (beta == 0) continue;
    if (!st.base) {
      st.base = h;
      st.alpha = beta;
      trace.push_back(event("base", {{"s", s.get_str()}, {"order_exponent", std::to_string(beta)}}));
      continue;
    }
    const bool swap = beta > st.alpha;
    const ResidueElem& big = swap ? h : *st.base;
    const ResidueElem& small = swap ? *st.base : h;
    const unsigned long big_alpha = swap ? beta : st.alpha;
    auto res = bsgs_dlog(big, small, s, big_alpha);
    trace.push_back(event("dlog", {{"s", s.get_str()},
                                   {"base_order_exponent", std::to_string(big_alpha)},
                                   {"table_size", ceil_sqrt(s).get_str()},
                                   {"in_subgroup", std::holds_alternative<Natural>(res) ? "true" : "false"}}));
    if (auto* w = std::get_if<NotInSubgroup>(&res)) {
      Extraction ex = batched_ ? extract_factor_batched(w->a_prime, w->b_prime, g_, s)
                               : extract_factor(w->a_prime, w->b_prime, g_, s);
      trace.push_back(event("extract", {{"s", s.get_str()}, {"i", ex.index.get_str()}, {"divisor", to_text(ex.divisor)}}));
      return ex;
    }
    if (swap) {
      st.base = h;
      st.alpha = beta;
      trace.push_back(event("base", {{"s", s.get_str()}, {"order_exponent", std::to_string(beta)}}));
    }
  }
  return std::nullopt;
}

SplitReport ph_cyclic_test(const std::vector<ResidueElem>& gens, const GroupContext& ctx, bool batched) {
  SplitReport rep;
  CyclicityTester tester(ctx.g, ctx.profile.factors, ctx.profile.smooth, batched);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (auto ex = tester.add(gens[i], rep.trace)) {
      rep.outcome = SplitOutcome::Split;
      rep.divisor = ex->divisor;
      rep.generator_index = i;
      return rep;
    }
  }
  rep.outcome = SplitOutcome::CyclicPassed;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

enum class Candidate { Emitted, Duplicate, Zero, Shortcut };

struct Classifier {
  const FpPoly& g;
  const NumberField& nf;
  ResidueRingPtr ring;
  std::set<std::string> seen;

  Candidate classify(const AlgebraicInt& x, std::optional<ResidueElem>& out, std::optional<FpPoly>& divisor) {
    const FpPoly b = kappa_reduce(x, g.ctx(), nf) % g;
    if (b.is_zero()) return Candidate::Zero;
    const FpPoly d = poly_gcd(b, g);
    if (d.degree() > 0) {
      divisor = d;
      return Candidate::Shortcut;
    }
    ResidueElem r = ring->element(b);
    if (!seen.insert(r.encode()).second) return Candidate::Duplicate;
    out = std::move(r);
    return Candidate::Emitted;
  }
};

}  // namespace

GeneratorBatch build_generators(const FpPoly& g, const NumberField& nf, unsigned long coord_bound) {
  GeneratorBatch batch;
  Classifier cls{g, nf, ResidueRing::make(g), {}};
  auto take = [&](const AlgebraicInt& x, const std::string& origin, std::vector<Generator>& dst) {
    std::optional<ResidueElem> r;
    std::optional<FpPoly> d;
    switch (cls.classify(x, r, d)) {
      case Candidate::Emitted:
        dst.push_back({*r, origin});
        return false;
      case Candidate::Shortcut:
        batch.shortcut = d;
        batch.shortcut_origin = origin;
        return true;
      default:
        return false;
    }
  };
  const auto& units = nf.descriptor().units;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (take(AlgebraicInt{units[i]}, "unit " + std::to_string(i), batch.units_part)) return batch;
  }
  ShellEnumerator it(nf.degree(), static_cast<long>(coord_bound));
  while (auto x = it.next()) {
    if (take(*x, "A " + coords_str(*x), batch.stream_part)) return batch;
  }
  return batch;
}

CyclicExhausted::CyclicExhausted(std::string what, FpPoly g, std::vector<TraceEvent> trace)
    : std::runtime_error(std::move(what)), g_(std::move(g)), trace_(std::move(trace)) {}

SplitReport split_factor(const FpPoly& g, unsigned long e, const NumberField& nf, const SmoothnessProfile& profile,
                         const SplitParams& params) {
  if (e == 0 || g.degree() <= static_cast<long>(e) || g.degree() % static_cast<long>(e) != 0) {
    throw std::invalid_argument("split_factor: need deg g = k*e with k >= 2");
  }
  const GroupContext ctx = make_group_context(g, e, profile);
  CyclicityTester tester(ctx.g, profile.factors, profile.smooth, params.batched_extraction);
  Classifier cls{ctx.g, nf, ctx.ring, {}};
  SplitReport rep;
  std::size_t consumed = 0;

  auto feed = [&](const AlgebraicInt& x, const std::string& origin) -> bool {
    std::optional<ResidueElem> b;
    std::optional<FpPoly> d;
    const Candidate kind = cls.classify(x, b, d);
    if (kind == Candidate::Shortcut) {
      rep.trace.push_back(event("shortcut", {{"origin", origin}, {"divisor", to_text(*d)}}));
      rep.outcome = SplitOutcome::GcdShortcut;
      rep.divisor = d->monic();
      rep.generator_index = consumed;
      return true;
    }
    if (kind != Candidate::Emitted) return false;
    const std::size_t index = consumed++;
    rep.trace.push_back(event("generator", {{"index", std::to_string(index)}, {"origin", origin}}));
    const ResidueElem a = project_to_G1(sigma_map(*b, ctx), ctx);
    if (auto ex = tester.add(a, rep.trace)) {
      rep.outcome = SplitOutcome::Split;
      rep.divisor = ex->divisor;
      rep.generator_index = index;
      return true;
    }
    return false;
  };

  const auto& units = nf.descriptor().units;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (feed(AlgebraicInt{units[i]}, "unit " + std::to_string(i))) return rep;
  }
  long prev = 0;
  for (unsigned long bound : params.coord_bound_schedule) {
    ShellEnumerator it(nf.degree(), static_cast<long>(bound), prev + 1);
    while (auto x = it.next()) {
      if (feed(*x, "A " + coords_str(*x))) return rep;
    }
    rep.trace.push_back(event("stage_cyclic", {{"coord_bound", std::to_string(bound)},
                                               {"generators", std::to_string(consumed)}}));
    prev = static_cast<long>(bound);
  }
  rep.outcome = SplitOutcome::CyclicPassed;
  throw CyclicExhausted("generators up to coordinate bound " + std::to_string(prev) +
                            " generate a cyclic group; no split of " + to_text(ctx.g),
                        ctx.g, rep.trace);
}

SplitReport shoup_erh_split(const FpPoly& g_in, const SplitParams& params) {
  if (g_in.degree() < 2) throw std::invalid_argument("shoup_erh_split: g must be reducible");
  const FpPoly g = g_in.monic();
  if (!poly_gcd(g, g.derivative()).is_one()) throw std::invalid_argument("shoup_erh_split: g is not squarefree");
  const auto parts = ddf(g);
  if (parts.size() != 1 || parts.begin()->second.degree() <= static_cast<long>(parts.begin()->first)) {
    throw std::invalid_argument("shoup_erh_split: g must be a reducible product of equal-degree irreducibles");
  }
  const unsigned long e = parts.begin()->first;
  const Natural p = g.modulus();
  const Natural pm1 = p - 1;
  const SmoothnessProfile full = least_q(p, Rational(0), Rational(1));
  Natural pe;
  mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
  const Natural sigma_exp = (pe - 1) / pm1;
  const auto R = ResidueRing::make(g);
  SplitReport rep;

  std::optional<ResidueElem> a;
  PrimePower chosen;
  const FpPoly y = FpPoly::y(g.ctx());
  for (unsigned long c = 0; c < 1000 && !a; ++c) {
    const FpPoly b = y + FpPoly::constant(g.ctx(), c);
    const FpPoly d = poly_gcd(b, g);
    if (d.degree() > 0) {
      rep.trace.push_back(event("shortcut", {{"origin", "Y+" + std::to_string(c)}, {"divisor", to_text(d)}}));
      rep.outcome = SplitOutcome::GcdShortcut;
      rep.divisor = d;
      rep.generator_index = c;
      return rep;
    }
    const ResidueElem a0 = R->pow(R->element(b), sigma_exp);
    for (const auto& pp : full.factors) {
      Natural spow;
      mpz_pow_ui(spow.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
      ResidueElem as = R->pow(a0, pm1 / spow);
      if (!is_scalar(as)) {
        rep.trace.push_back(event("non_scalar", {{"origin", "Y+" + std::to_string(c)}, {"s", pp.prime.get_str()}}));
        a = std::move(as);
        chosen = pp;
        break;
      }
    }
  }
  if (!a) throw std::runtime_error("shoup_erh_split: no non-scalar element of prime-power order found");

  unsigned long cap = params.nonresidue_cap;
  if (cap == 0) {
    const double lp = std::log(p.get_d());
    cap = static_cast<unsigned long>(std::ceil(2.0 * lp * lp));
  }
  const ModCtx F(p);
  const Natural& s = chosen.prime;
  Natural spow;
  mpz_pow_ui(spow.get_mpz_t(), s.get_mpz_t(), chosen.exponent);
  std::optional<Natural> z;
  for (unsigned long n = 2; n <= cap && Natural(n) < p; ++n) {
    if (F.pow(Natural(n), pm1 / s) != 1) {
      rep.trace.push_back(event("nonresidue", {{"s", s.get_str()}, {"b", std::to_string(n)}}));
      z = F.pow(Natural(n), pm1 / spow);
      break;
    }
  }
  if (!z) throw std::runtime_error("shoup_erh_split: no " + s.get_str() + "-th power nonresidue below the cap " +
                                   std::to_string(cap));

  CyclicityTester tester(g, {chosen}, spow, params.batched_extraction);
  const std::vector<ResidueElem> gens{*a, R->scalar(*z)};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (auto ex = tester.add(gens[i], rep.trace)) {
      rep.outcome = SplitOutcome::Split;
      rep.divisor = ex->divisor;
      rep.generator_index = i;
      return rep;
    }
  }
  throw std::logic_error("shoup_erh_split: non-scalar element and scalar generated a cyclic group");
}

// ---------------------------------------------------------------------------

namespace {

// Monic factor of f(X) from a monic factor h(Y) of f~(Y): h(lX) / l^deg h.
FpPoly back_substitute(const FpPoly& h, const Natural& l_mod_p) {
  const auto& F = *h.ctx();
  const Natural l_inv = F.inv(l_mod_p);
  const long k = h.degree();
  std::vector<Integer> c(k + 1);
  Natural scale = 1;  // l^(i-k) = l_inv^(k-i), built from i = k downward
  for (long i = k; i >= 0; --i) {
    c[i] = F.mul(h.coeff(i), scale);
    scale = F.mul(scale, l_inv);
  }
  return FpPoly(h.ctx(), c);
}

}  // namespace

FactorizationResult factor_fixed(const IntPoly& f, const Natural& p, const NumberField& nf,
                                 const SplitParams& params) {
  const auto& desc = nf.descriptor();
  if (f != desc.f) throw std::invalid_argument("factor_fixed: polynomial does not match the descriptor");
  if (f.size() < 2) throw std::invalid_argument("factor_fixed: polynomial must be nonconstant");
  if (!is_prime(p)) throw std::invalid_argument("factor_fixed: p = " + p.get_str() + " is not prime");

  FactorizationResult res;
  res.p = p;
  res.warnings = check_params(params, desc.degree());
  const ModCtxPtr F = make_modulus(p);
  const FpPoly fp(F, f);
  const bool p_divides_l = mpz_divisible_p(desc.leading().get_mpz_t(), p.get_mpz_t());
  const bool p_divides_index = mpz_divisible_p(desc.index.get_mpz_t(), p.get_mpz_t());

  if (p_divides_l && p > params.small_prime_cutoff) {
    throw UnsupportedPrime("p = " + p.get_str() + " divides the leading coefficient and exceeds the small-prime cutoff");
  }
  if (p <= params.small_prime_cutoff || p == 2 || p_divides_index) {
    const Natural limit = p_divides_index ? std::max(p, params.small_prime_cutoff) : std::max(Natural(2), params.small_prime_cutoff);
    PolyFactorization fac = berlekamp_complete(fp, limit);
    res.leading = fac.leading;
    res.factors = std::move(fac.factors);
    res.path = "small_prime_berlekamp";
    return res;
  }

  res.path = params.erh_mode ? "splitter_erh" : "splitter";
  const SmoothnessProfile profile = least_q(p, params.tau, params.delta);
  res.profile = profile;
  const FpPoly ft = reduce_f_tilde(nf, F);
  std::vector<Factor> tilde_factors;
  for (const auto& comp : squarefree_decomposition(ft)) {
    for (const auto& [e, te] : ddf(comp.poly)) {
      std::vector<FpPoly> work{te};
      while (!work.empty()) {
        FpPoly h = std::move(work.back());
        work.pop_back();
        if (h.degree() == static_cast<long>(e)) {
          tilde_factors.push_back({h, comp.multiplicity});
          continue;
        }
        SplitReport rep = params.erh_mode ? shoup_erh_split(h, params) : split_factor(h, e, nf, profile, params);
        const FpPoly d = rep.divisor->monic();
        res.splits.push_back({h, e, rep});
        // Pieces go back on the stack; larger-index first keeps output order fixed.
        work.push_back(h / d);
        work.push_back(d);
      }
    }
  }
  const Natural l_mod_p = F->reduce(desc.leading());
  for (auto& fac : tilde_factors) res.factors.push_back({back_substitute(fac.poly, l_mod_p), fac.multiplicity});
  sort_canonical(res.factors);
  res.leading = l_mod_p;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

using ojson = nlohmann::ordered_json;

ojson poly_json(const FpPoly& f) {
  ojson a = ojson::array();
  for (const auto& c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

ojson trace_json(const std::vector<TraceEvent>& trace) {
  ojson a = ojson::array();
  for (const auto& ev : trace) {
    ojson o;
    o["kind"] = ev.kind;
    for (const auto& [k, v] : ev.fields) o[k] = v;
    a.push_back(std::move(o));
  }
  return a;
}

}  // namespace

std::string factorization_to_json(const FactorizationResult& r) {
  ojson j;
  j["p"] = r.p.get_str();
  j["leading"] = r.leading.get_str();
  ojson factors = ojson::array();
  for (const auto& f : r.factors) {
    ojson o;
    o["poly"] = poly_json(f.poly);
    o["multiplicity"] = f.multiplicity;
    factors.push_back(std::move(o));
  }
  j["factors"] = std::move(factors);
  ojson report;
  report["path"] = r.path;
  if (r.profile) {
    ojson prof;
    prof["q"] = r.profile->q.get_str();
    prof["S"] = r.profile->smooth.get_str();
    ojson pf = ojson::array();
    for (const auto& pp : r.profile->factors) {
      ojson o;
      o["prime"] = pp.prime.get_str();
      o["exponent"] = pp.exponent;
      pf.push_back(std::move(o));
    }
    prof["factors"] = std::move(pf);
    prof["tau"] = to_string(r.profile->tau);
    prof["delta"] = to_string(r.profile->delta);
    report["profile"] = std::move(prof);
  } else {
    report["profile"] = nullptr;
  }
  ojson splits = ojson::array();
  for (const auto& s : r.splits) {
    ojson o;
    o["g"] = poly_json(s.g);
    o["e"] = s.e;
    o["outcome"] = to_string(s.report.outcome);
    o["divisor"] = s.report.divisor ? poly_json(*s.report.divisor) : ojson(nullptr);
    o["generator_index"] = s.report.generator_index ? ojson(*s.report.generator_index) : ojson(nullptr);
    o["trace"] = trace_json(s.report.trace);
    splits.push_back(std::move(o));
  }
  report["splits"] = std::move(splits);
  report["warnings"] = r.warnings;
  j["report"] = std::move(report);
  return j.dump(2) + "\n";
}

}  // namespace smoothroots
