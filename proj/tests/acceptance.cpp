#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "smoothroots/quadratic.hpp"
#include "smoothroots/roots.hpp"
#include "smoothroots/splitter.hpp"

using namespace smoothroots;
using u64 = std::uint64_t;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt_time(double s, double limit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.2f s, limit %.0f s", s, limit);
  return buf;
}

FpPoly from_ref(u64 p, const oracle_ref::Poly& c) {
  std::vector<Integer> v;
  for (auto x : c) v.push_back(static_cast<unsigned long>(x));
  return FpPoly(make_modulus(p), v);
}

bool same(const FactorizationResult& a, const PolyFactorization& b) {
  if (a.leading != b.leading || a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (!(a.factors[i].poly == b.factors[i].poly) || a.factors[i].multiplicity != b.factors[i].multiplicity) return false;
  return true;
}

SplitParams forced_splitter() {
  SplitParams sp;
  sp.small_prime_cutoff = 2;
  return sp;
}

struct Fixture {
  std::string name;
  IntPoly f;
};

const std::vector<Fixture>& quadratic_fixtures() {
  static const std::vector<Fixture> fx{
      {"X^2+1", {1, 0, 1}}, {"X^2-7", {-7, 0, 1}}, {"2X^2+3X+5", {5, 3, 2}}, {"X^2-X-1", {-1, -1, 1}}};
  return fx;
}

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (oracle_ref::is_prime_td(n)) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  std::size_t runs = 0, agree = 0;
  std::string first_bad;
  for (const auto& fx : quadratic_fixtures()) {
    const NumberField nf(quadratic_descriptor_for(fx.f));
    for (u64 p : primes_between(3, 2000)) {
      const FpPoly fp(make_modulus(p), fx.f);
      const PolyFactorization cz = oracle::cz_factor(fp, 1000 + p);
      const PolyFactorization bk = berlekamp_complete(fp);
      for (const SplitParams& sp : {SplitParams{}, forced_splitter()}) {
        ++runs;
        bool ok = false;
        try {
          const FactorizationResult r = factor_fixed(fx.f, p, nf, sp);
          ok = same(r, cz) && same(r, bk);
        } catch (const std::exception& e) {
          ok = false;
        }
        if (ok) {
          ++agree;
        } else if (first_bad.empty()) {
          first_bad = fx.name + " mod " + std::to_string(p);
        }
      }
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << runs << " runs agree over default and forced-splitter paths";
  if (!first_bad.empty()) d << ", first mismatch " << first_bad;
  d << ", " << fmt_time(t, 120);
  report(1, agree == runs && t < 120, "factor_fixed equals cz_oracle and berlekamp_complete for 3 <= p <= 2000", d.str());
}

void criterion2() {
  const auto t0 = Clock::now();
  const IntPoly f{-7, 0, 1};
  const NumberField nf(quadratic_descriptor_for(f));
  SplitParams sp;
  sp.tau = Rational(1, 2);
  sp.delta = Rational(1, 20);
  const u64 lo = (1ULL << 20) + 1, hi = (1ULL << 20) + 10000 - 1;
  std::size_t eligible = 0, ok = 0;
  std::string first_bad;
  for (u64 p : primes_between(lo, hi)) {
    if (p % 8 != 1 || oracle_ref::fast_powm(7, (p - 1) / 2, p) != 1) continue;
    ++eligible;
    bool good = false;
    try {
      const FactorizationResult r = factor_fixed(f, p, nf, sp);
      good = r.path == "splitter" && r.factors.size() == 2;
      for (const auto& fc : r.factors) {
        const u64 root = (p - fc.poly.coeff(0).get_ui()) % p;
        good = good && fc.poly.degree() == 1 && oracle_ref::mulm(root, root, p) == 7;
      }
    } catch (const std::exception&) {
      good = false;
    }
    if (good) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = std::to_string(p);
    }
  }
  std::ostringstream d;
  d << ok << "/" << eligible << " primes split through the splitter path";
  if (!first_bad.empty()) d << ", first failure p=" << first_bad;
  d << ", " << fmt_time(seconds_since(t0), 600);
  report(2, eligible > 0 && ok == eligible, "X^2-7 splits without fallback for 2^20 < p < 2^20+10^4, p = 1 mod 8", d.str());
}

void criterion3() {
  auto t0 = Clock::now();
  std::size_t mismatches = 0, runs = 0;
  std::string first_bad;
  const std::vector<u64> bounds{2, 3, 5, 10, 100, 1000};
  for (u64 n = 1; n <= 1000000; ++n) {
    const Natural N(static_cast<unsigned long>(n));
    for (u64 b : bounds) {
      ++runs;
      const auto got = pollard_strassen_primes(N, Natural(static_cast<unsigned long>(b)));
      const auto ref = oracle_ref::trial_factor(n, b);
      bool ok = got.size() == ref.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) ok = got[i] == static_cast<unsigned long>(ref[i].first);
      if (!ok) {
        ++mismatches;
        if (first_bad.empty()) first_bad = "N=" + std::to_string(n) + " B=" + std::to_string(b);
      }
    }
  }
  const double t_grid = seconds_since(t0);

  std::mt19937_64 rng(20240601);
  double worst = 0;
  std::size_t wrong_parts = 0;
  for (int i = 0; i < 20; ++i) {
    const u64 start = rng() | (1ULL << 63);
    const Natural p = next_prime(Natural(std::to_string(start)));
    const Natural pm1 = p - 1;
    const u64 n = std::stoull(pm1.get_str());
    t0 = Clock::now();
    const SmoothPart sp = smooth_part(pm1, 10000);
    worst = std::max(worst, seconds_since(t0));
    if (sp.value.get_str() != std::to_string(oracle_ref::smooth_value(n, 10000))) ++wrong_parts;
  }
  std::ostringstream d;
  d << runs - mismatches << "/" << runs << " (N, B) pairs agree with trial division";
  if (!first_bad.empty()) d << ", first mismatch " << first_bad;
  char buf[160];
  std::snprintf(buf, sizeof buf, " in %.1f s; 20 random 64-bit primes: %zu wrong smooth parts, slowest %.3f s, limit 1 s",
                t_grid, wrong_parts, worst);
  d << buf;
  report(3, mismatches == 0 && wrong_parts == 0 && worst < 1.0, "Pollard-Strassen agrees with trial division", d.str());
}

void criterion4() {
  const auto t0 = Clock::now();
  std::size_t cases = 0, split = 0, exhausted = 0, bad_divisor = 0;
  for (u64 p : {5ULL, 13ULL, 41ULL}) {
    u64 gamma = 2;
    while (oracle_ref::mult_order(gamma, p) != p - 1) ++gamma;
    const SmoothnessProfile profile = least_q(Natural(static_cast<unsigned long>(p)), Rational(1, 2), Rational(1, 20));
    std::vector<std::vector<u64>> root_sets;
    for (u64 a = 0; a < p; ++a)
      for (u64 b = a + 1; b < p; ++b) {
        root_sets.push_back({a, b});
        for (u64 c = b + 1; c < p; ++c) root_sets.push_back({a, b, c});
      }
    for (const auto& roots : root_sets) {
      oracle_ref::Poly gr{1};
      for (auto r : roots) gr = oracle_ref::pmul(gr, {(p - r) % p, 1}, p);
      const FpPoly g = from_ref(p, gr);
      const GroupContext ctx = make_group_context(g, 1, profile);
      const std::size_t k = roots.size();
      // e_i = gamma at root i, 1 elsewhere; with the diagonal gamma in front
      std::vector<ResidueElem> coords, with_diag;
      with_diag.push_back(project_to_G1(ctx.ring->scalar(static_cast<unsigned long>(gamma)), ctx));
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<u64> vals(k, 1);
        vals[i] = gamma;
        const ResidueElem e = project_to_G1(ctx.ring->element(from_ref(p, oracle_ref::interpolate(roots, vals, p))), ctx);
        coords.push_back(e);
        with_diag.push_back(e);
      }
      for (const auto* gens : {&coords, &with_diag}) {
        for (bool batched : {false, true}) {
          ++cases;
          try {
            const SplitReport r = ph_cyclic_test(*gens, ctx, batched);
            if (r.outcome == SplitOutcome::Split && r.divisor) {
              ++split;
              const FpPoly d = r.divisor->monic();
              if (!(d.degree() >= 1 && d.degree() < g.degree() && divides(d, g))) ++bad_divisor;
            }
          } catch (const std::logic_error&) {
            ++exhausted;
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << split << "/" << cases << " generator sets split, " << bad_divisor << " bad divisors, " << exhausted
    << " extraction-loop exhaustions, " << fmt_time(seconds_since(t0), 60);
  report(4, cases > 0 && split == cases && bad_divisor == 0 && exhausted == 0,
         "ph_cyclic_test splits every product of 2 or 3 linears mod 5, 13, 41", d.str());
}

void criterion5() {
  const auto t0 = Clock::now();
  std::size_t checks = 0, holds = 0;
  std::string first_bad;
  for (long m : {-1L, -5L}) {
    const FieldDescriptor desc = quadratic_descriptor(m);
    for (unsigned long y = 2; y <= 20; ++y) {
      for (const auto& c : check_census_inequality(desc, 1000, y)) {
        ++checks;
        if (c.holds) {
          ++holds;
        } else if (first_bad.empty()) {
          first_bad = "m=" + std::to_string(m) + " x=" + std::to_string(c.x) + " y=" + std::to_string(y);
        }
      }
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << holds << "/" << checks << " (x, y) points hold";
  if (!first_bad.empty()) d << ", first violation " << first_bad;
  d << ", " << fmt_time(t, 60);
  report(5, checks == 2 * 19 * 1000 && holds == checks && t < 60,
         "h psi~(x, y) >= psi(x / M_K, y^(1/h)) in Q(i) and Q(sqrt -5), x <= 1000, 2 <= y <= 20", d.str());
}

void criterion6() {
  const std::vector<std::pair<long, unsigned>> expect{{-1, 1}, {-2, 1}, {-3, 1}, {-5, 2}, {-23, 3}, {2, 1}, {5, 1}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [m, h] : expect) {
    const Integer disc = quadratic_discriminant(m);
    const unsigned ref =
        m < 0 ? oracle_ref::class_number_forms(disc.get_si()) : oracle_ref::class_number_real(disc.get_si());
    const Natural got = quadratic_descriptor(m).class_number;
    const bool this_ok = got == ref && ref == h;
    ok = ok && this_ok;
    d << "m=" << m << ":" << got << (this_ok ? "" : "!") << " ";
  }
  d << "vs reduced-forms oracles";
  report(6, ok, "quadratic class numbers 1, 1, 1, 2, 3, 1, 1", d.str());
}

std::vector<FpPoly> proper_divisors(const FpPoly& f) {
  const auto fac = berlekamp_complete(f);
  std::vector<FpPoly> out;
  const std::size_t n = fac.factors.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    FpPoly d = FpPoly::constant(f.ctx(), 1);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) d = d * fac.factors[i].poly;
    out.push_back(d);
  }
  return out;
}

FieldDescriptor binomial_descriptor(long a, unsigned long n) {
  if (n == 2) return quadratic_descriptor_for(binomial_poly(a, 2));
  return load_descriptor(std::string(SMOOTHROOTS_DATA_DIR "/fields/x") + std::to_string(n) + "-" + std::to_string(a) +
                         ".json");
}

void criterion7() {
  const auto t0 = Clock::now();
  std::size_t runs = 0, agree = 0, skipped = 0;
  std::string first_bad;
  const std::vector<std::pair<long, unsigned long>> cases{{2, 2}, {3, 2}, {2, 3}, {6, 3}, {7, 5}};
  for (const auto& [a, n] : cases) {
    if (!capelli_irreducible(a, n)) continue;
    const NumberField nf(binomial_descriptor(a, n));
    for (u64 p : primes_between(2, 2000)) {
      if (a % static_cast<long>(p) == 0) {
        ++skipped;
        continue;
      }
      std::vector<Natural> scan;
      for (auto r : oracle_ref::nth_root_scan(a, n, p)) scan.push_back(static_cast<unsigned long>(r));
      for (const SplitParams& sp : {SplitParams{}, forced_splitter()}) {
        ++runs;
        bool ok = false;
        try {
          ok = nth_roots(a, n, p, nf, sp).roots == scan;
        } catch (const std::exception&) {
          ok = false;
        }
        if (ok) {
          ++agree;
        } else if (first_bad.empty()) {
          first_bad = "a=" + std::to_string(a) + " n=" + std::to_string(n) + " p=" + std::to_string(p);
        }
      }
    }
  }
  struct SthCase {
    long a;
    unsigned long s;
    u64 p;
  };
  std::ostringstream sth;
  bool sth_ok = true;
  for (const SthCase& c : {SthCase{6, 3, 7}, SthCase{3, 5, 11}, SthCase{10, 5, 11}}) {
    const FpPoly f(make_modulus(c.p), binomial_poly(c.a, c.s));
    std::size_t verified = 0;
    const auto divs = proper_divisors(f);
    for (const FpPoly& g : divs) {
      try {
        const Natural r = sth_root_from_factor(g, c.s, c.a, c.p);
        if (oracle_ref::fast_powm(r.get_ui(), c.s, c.p) == oracle_ref::modp(c.a, c.p)) ++verified;
      } catch (const std::exception&) {
      }
    }
    sth_ok = sth_ok && verified == divs.size();
    sth << "X^" << c.s << "-" << c.a << " mod " << c.p << ": " << verified << "/" << divs.size()
        << (divs.empty() ? " (irreducible, vacuous)" : "") << "; ";
  }
  std::ostringstream d;
  d << agree << "/" << runs << " root sets match the scan (" << skipped << " p | a skipped)";
  if (!first_bad.empty()) d << ", first mismatch " << first_bad;
  d << "; sth_root_from_factor " << sth.str() << fmt_time(seconds_since(t0), 600);
  report(7, runs > 0 && agree == runs && sth_ok, "nth_roots matches the exhaustive scan for p <= 2000", d.str());
}

// Every JSON-producing path of the library, concatenated.
std::string json_suite() {
  std::ostringstream out;
  for (const auto& fx : quadratic_fixtures()) {
    const NumberField nf(quadratic_descriptor_for(fx.f));
    for (u64 p : {13ULL, 101ULL, 1009ULL, 1999ULL})
      for (const SplitParams& sp : {SplitParams{}, forced_splitter()})
        out << factorization_to_json(factor_fixed(fx.f, p, nf, sp)) << "\n";
  }
  const IntPoly x2m7{-7, 0, 1};
  const NumberField q7(quadratic_descriptor_for(x2m7));
  for (u64 p : {1048793ULL, 1049177ULL}) {
    SplitParams batched;
    batched.batched_extraction = true;
    out << factorization_to_json(factor_fixed(x2m7, p, q7)) << "\n";
    out << factorization_to_json(factor_fixed(x2m7, p, q7, batched)) << "\n";
  }
  for (const char* name : {"x3-2", "x3-6", "x4+1", "x5-7"}) {
    const FieldDescriptor desc = load_descriptor(std::string(SMOOTHROOTS_DATA_DIR "/fields/") + name + ".json");
    out << descriptor_to_json(desc) << "\n";
    const NumberField nf(desc);
    for (u64 p : {101ULL, 1048609ULL}) {
      SplitParams sp;
      sp.small_prime_cutoff = 2;
      try {
        out << factorization_to_json(factor_fixed(desc.f, p, nf, sp)) << "\n";
      } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
      }
    }
  }
  for (const auto& [a, n] : std::vector<std::pair<long, unsigned long>>{{2, 2}, {3, 2}, {2, 3}, {6, 3}, {7, 5}}) {
    const NumberField nf(binomial_descriptor(a, n));
    for (u64 p : {31ULL, 61ULL, 1801ULL}) {
      if (a % static_cast<long>(p) == 0) continue;
      out << roots_to_json(nth_roots(a, n, p, nf)) << "\n";
      if (n > 2) out << roots_to_json(nth_roots(a, n, p, nf, forced_splitter(), ZetaMode::FromFactorization)) << "\n";
    }
  }
  for (long m : {-1L, -2L, -3L, -5L, -23L, 2L, 5L}) out << descriptor_to_json(quadratic_descriptor(m)) << "\n";
  for (u64 p : {41ULL, 1000003ULL, 1048609ULL}) {
    const SmoothnessProfile sp = least_q(Natural(static_cast<unsigned long>(p)), Rational(1, 2), Rational(1, 20));
    out << p << " q=" << sp.q << " S=" << sp.smooth << "\n";
  }
  for (long m : {-1L, -5L}) {
    const CensusCounts c = principal_ideal_census(quadratic_descriptor(m), 500, 13);
    out << "census " << m << " " << c.psi << " " << c.psi_tilde << "\n";
  }
  return out.str();
}

void criterion8() {
  const auto t0 = Clock::now();
  const std::string a = json_suite();
  const std::string b = json_suite();
  std::ostringstream d;
  d << a.size() << " bytes per run, " << (a == b ? "identical" : "different") << ", "
    << fmt_time(seconds_since(t0), 600);
  report(8, !a.empty() && a == b, "repeated runs produce byte-identical JSON", d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--dump") {
    std::ofstream(argv[2]) << json_suite();
    return 0;
  }
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8};
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--only") only = std::stoi(argv[2]);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "unexpected exception", e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
