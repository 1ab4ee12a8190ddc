// Command-line front end: factor, roots, smooth, field, census, selftest.
//
// Exit codes: 0 success, 1 input or validation error, 2 the splitter ran out
// of generators (every stage found a cyclic group).

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "smoothroots/quadratic.hpp"
#include "smoothroots/roots.hpp"
#include "smoothroots/splitter.hpp"

using namespace smoothroots;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kExhausted = 2;

struct PolyArg {
  IntPoly coeffs;
  std::optional<Natural> prime;
};

// "c0,c1,...,cd" with an optional " mod p" suffix.
PolyArg parse_int_poly(const std::string& text) {
  PolyArg out;
  std::string body = text;
  if (auto pos = text.find("mod"); pos != std::string::npos) {
    body = text.substr(0, pos);
    out.prime = parse_integer(text.substr(pos + 3));
  }
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.coeffs.push_back(parse_integer(item));
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  if (out.coeffs.size() < 2) throw std::invalid_argument("--poly must have degree at least 1");
  return out;
}

std::string factor_line(const FactorizationResult& r) {
  std::string s;
  if (r.leading != 1) s += r.leading.get_str() + " * ";
  for (const auto& f : r.factors) {
    s += "(" + to_pretty(f.poly) + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s + " mod " + r.p.get_str();
}

struct FactorOpts {
  std::string poly;
  std::string prime;
  std::string descriptor;
  std::string delta = "1/20";
  std::string c = "100";
  std::string epsilon = "1/100";
  std::string tau = "1/2";
  std::string cutoff;
  std::string schedule;
  bool erh = false;
  bool batched = false;
  bool json = false;
};

SplitParams params_from(const FactorOpts& o) {
  SplitParams p;
  p.delta = parse_rational(o.delta);
  p.c = parse_rational(o.c);
  p.epsilon = parse_rational(o.epsilon);
  p.tau = parse_rational(o.tau);
  p.erh_mode = o.erh;
  p.batched_extraction = o.batched;
  if (!o.cutoff.empty()) p.small_prime_cutoff = parse_integer(o.cutoff);
  if (!o.schedule.empty()) {
    p.coord_bound_schedule.clear();
    std::stringstream ss(o.schedule);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const Integer b = parse_integer(item);
      if (b < 1 || !b.fits_ulong_p()) throw std::invalid_argument("--schedule entries must be positive integers");
      p.coord_bound_schedule.push_back(b.get_ui());
    }
  }
  return p;
}

int cmd_factor(const FactorOpts& o) {
  const PolyArg poly = parse_int_poly(o.poly);
  Natural p;
  if (!o.prime.empty()) {
    p = parse_integer(o.prime);
  } else if (poly.prime) {
    p = *poly.prime;
  } else {
    throw std::invalid_argument("--prime is required");
  }
  if (o.descriptor.empty()) throw std::invalid_argument("--descriptor is required");
  const NumberField nf(load_descriptor(o.descriptor));
  const SplitParams params = params_from(o);
  try {
    const FactorizationResult r = factor_fixed(poly.coeffs, p, nf, params);
    if (o.json) {
      std::cout << factorization_to_json(r);
    } else {
      std::cout << factor_line(r) << "\n";
      std::cout << "path: " << r.path;
      if (r.factors.size() == 1 && r.factors[0].multiplicity == 1) std::cout << " (irreducible)";
      std::cout << "\n";
      for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    }
    return kOk;
  } catch (const CyclicExhausted& e) {
    if (o.json) {
      ojson j;
      j["error"] = "cyclic_exhausted";
      j["message"] = e.what();
      j["polynomial"] = to_text(e.polynomial());
      j["trace_events"] = e.trace().size();
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "cyclic exhausted: " << e.what() << " (" << e.trace().size() << " trace events)\n";
    return kExhausted;
  }
}

struct RootsOpts {
  std::string a;
  unsigned long n = 0;
  std::string prime;
  std::string descriptor;
  std::string zeta_mode = "none";
  std::string cutoff;
  bool json = false;
};

int cmd_roots(const RootsOpts& o) {
  const Integer a = parse_integer(o.a);
  const Natural p = parse_integer(o.prime);
  const CapelliVerdict cv = capelli_check(a, o.n);
  if (!cv.irreducible) throw CapelliViolation("X^n - a is reducible over Q: " + cv.reason);
  FieldDescriptor desc;
  if (!o.descriptor.empty()) {
    desc = load_descriptor(o.descriptor);
  } else if (o.n == 2) {
    desc = quadratic_descriptor_for(binomial_poly(a, 2));
  } else {
    throw std::invalid_argument("--descriptor is required for n > 2");
  }
  const NumberField nf(desc);
  SplitParams params;
  if (!o.cutoff.empty()) params.small_prime_cutoff = parse_integer(o.cutoff);
  try {
    const RootsResult r = nth_roots(a, o.n, p, nf, params, parse_zeta_mode(o.zeta_mode));
    if (o.json) {
      std::cout << roots_to_json(r);
    } else if (r.roots.empty()) {
      std::cout << "no roots: " << a << " is not an n-th power mod " << p << " (n = " << o.n << "), a nonresidue\n";
    } else {
      for (std::size_t i = 0; i < r.roots.size(); ++i) std::cout << (i ? " " : "") << r.roots[i];
      std::cout << "\nmethod: " << to_string(r.method) << ", zeta: " << to_string(r.zeta_source) << "\n";
      if (r.zeta_caveat) std::cout << "note: the root of unity came from an unproven scan\n";
    }
    return kOk;
  } catch (const CyclicExhausted& e) {
    std::cerr << "cyclic exhausted: " << e.what() << "\n";
    return kExhausted;
  }
}

int cmd_smooth(const std::string& prime, const std::string& delta, const std::string& tau, bool json) {
  const Natural p = parse_integer(prime);
  if (!is_prime(p)) throw std::invalid_argument("--prime must be prime");
  const SmoothnessProfile prof = least_q(p, parse_rational(tau), parse_rational(delta));
  if (json) {
    ojson j;
    j["p"] = prof.p.get_str();
    j["q"] = prof.q.get_str();
    j["S"] = prof.smooth.get_str();
    ojson fs = ojson::array();
    for (const auto& f : prof.factors) {
      ojson o;
      o["prime"] = f.prime.get_str();
      o["exponent"] = f.exponent;
      fs.push_back(std::move(o));
    }
    j["factors"] = std::move(fs);
    j["tau"] = to_string(prof.tau);
    j["delta"] = to_string(prof.delta);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q=" << prof.q << ", S=" << prof.smooth << " =";
    for (std::size_t i = 0; i < prof.factors.size(); ++i) {
      std::cout << (i ? " *" : "") << " " << prof.factors[i].prime;
      if (prof.factors[i].exponent > 1) std::cout << "^" << prof.factors[i].exponent;
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_field(const std::string& quadratic, const std::string& poly, const std::string& validate, bool json) {
  const int given = !quadratic.empty() + !poly.empty() + !validate.empty();
  if (given != 1) throw std::invalid_argument("give exactly one of --quadratic, --poly, --validate");
  if (!validate.empty()) {
    const auto checks = validate_descriptor(load_descriptor(validate));
    const bool ok = all_passed(checks);
    if (json) {
      ojson j;
      ojson arr = ojson::array();
      for (const auto& c : checks) {
        ojson o;
        o["name"] = c.name;
        o["passed"] = c.passed;
        o["detail"] = c.detail;
        arr.push_back(std::move(o));
      }
      j["checks"] = std::move(arr);
      j["valid"] = ok;
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << ": " << c.detail;
        std::cout << "\n";
      }
    }
    return ok ? kOk : kInputError;
  }
  const FieldDescriptor d =
      quadratic.empty() ? quadratic_descriptor_for(parse_int_poly(poly).coeffs) : quadratic_descriptor(parse_integer(quadratic));
  std::cout << descriptor_to_json(d);
  return kOk;
}

int cmd_census(const std::string& quadratic, unsigned long x, unsigned long y, unsigned long cap, bool json) {
  const Integer m = parse_integer(quadratic);
  const FieldDescriptor d = quadratic_descriptor(m);
  const CensusCounts c = principal_ideal_census(d, x, y, cap);
  const auto checks = check_census_inequality(d, x, y, cap);
  std::size_t failures = 0;
  for (const auto& ch : checks) failures += !ch.holds;
  if (json) {
    ojson j;
    j["m"] = m.get_str();
    j["x"] = x;
    j["y"] = y;
    j["class_number"] = d.class_number.get_str();
    j["psi"] = c.psi.get_str();
    j["psi_tilde"] = c.psi_tilde.get_str();
    j["inequality_holds"] = failures == 0;
    j["failures"] = failures;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "psiK=" << c.psi << " psiTildeK=" << c.psi_tilde << " h=" << d.class_number << "\n";
    std::cout << "inequality h*psiTilde(x',y) >= psi(x'/M_K, y^(1/h)) for all x' <= " << x << ": "
              << (failures == 0 ? "holds" : "FAILS at " + std::to_string(failures) + " values") << "\n";
  }
  return kOk;
}

struct SelfCheck {
  std::string name;
  bool ok;
};

int cmd_selftest() {
  std::vector<SelfCheck> checks;
  auto run = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    checks.push_back({name, ok});
  };
  run("powmod(3, 40, 41) = 1", [] { return powmod(3, 40, ModCtx(41)) == 1; });
  run("crt_idempotent(8, 5) = 25", [] { return crt_idempotent(8, 5) == 25; });
  run("smooth_part(40, 5) = 40", [] { return smooth_part(40, 5).value == 40; });
  run("least_q(13, 1/2, 1/4) has q = 3", [] { return least_q(13, Rational(1, 2), Rational(1, 4)).q == 3; });
  run("Y^2+1 mod 5 splits as (Y-2)(Y-3)", [] {
    const auto F = make_modulus(5);
    return berlekamp_complete(FpPoly(F, {1, 0, 1})).factors.size() == 2;
  });
  run("h(Q(sqrt -5)) = 2", [] { return quadratic_descriptor(-5).class_number == 2; });
  run("X^2+1 mod 13 through the splitter", [] {
    const NumberField nf(quadratic_descriptor(-1));
    SplitParams sp;
    sp.small_prime_cutoff = 2;
    const auto r = factor_fixed(nf.descriptor().f, 13, nf, sp);
    return r.path == "splitter" && r.factors.size() == 2 && r.factors[0].poly.coeff(0) == 8;
  });
  run("2X^2+3X+5 mod 7 = 2(X-4)(X+2)", [] {
    const NumberField nf(quadratic_descriptor_for({5, 3, 2}));
    SplitParams sp;
    sp.small_prime_cutoff = 2;
    const auto r = factor_fixed({5, 3, 2}, 7, nf, sp);
    return r.leading == 2 && r.factors.size() == 2 && r.factors[0].poly.coeff(0) == 3 && r.factors[1].poly.coeff(0) == 2;
  });
  run("square roots of 2 mod 7 are 3, 4", [] {
    const NumberField nf(quadratic_descriptor(2));
    const auto r = nth_roots(2, 2, 7, nf);
    return r.roots == std::vector<Natural>{3, 4};
  });
  run("cube root of 6 mod 7 from (Y-3)(Y-6)", [] {
    const auto F = make_modulus(7);
    return sth_root_from_factor(FpPoly(F, {4, 5, 1}), 3, 6, 7) == 5;
  });
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << "\n";
    failed += !c.ok;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " passed\n";
  return failed ? kInputError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic factorization of a fixed polynomial mod p, and n-th roots mod p"};
  app.require_subcommand(1);

  FactorOpts fo;
  auto* factor = app.add_subcommand("factor", "Completely factor the fixed polynomial modulo p");
  factor->add_option("--poly", fo.poly, "Coefficients c0,c1,...,cd (optionally followed by 'mod p')")->required();
  factor->add_option("--prime", fo.prime, "The prime p");
  factor->add_option("--descriptor", fo.descriptor, "Field descriptor JSON for the polynomial");
  factor->add_option("--delta", fo.delta, "delta (rational)");
  factor->add_option("--c", fo.c, "c (rational)");
  factor->add_option("--epsilon", fo.epsilon, "epsilon (rational)");
  factor->add_option("--tau", fo.tau, "Threshold exponent tau (rational)");
  factor->add_option("--small-prime-cutoff", fo.cutoff, "Use Berlekamp for p up to this value (default 2^20)");
  factor->add_option("--schedule", fo.schedule, "Coordinate bounds for the generator stream, e.g. 1,2,4");
  factor->add_flag("--erh", fo.erh, "Split with an s-th power nonresidue instead of field generators");
  factor->add_flag("--batched", fo.batched, "Batch the extraction loop through a product tree");
  factor->add_flag("--json", fo.json, "Emit JSON");

  RootsOpts ro;
  auto* roots = app.add_subcommand("roots", "All n-th roots of a modulo p");
  roots->add_option("--a", ro.a, "The integer a")->required();
  roots->add_option("--n", ro.n, "The exponent n")->required();
  roots->add_option("--prime", ro.prime, "The prime p")->required();
  roots->add_option("--descriptor", ro.descriptor, "Field descriptor for X^n - a (optional when n = 2)");
  roots->add_option("--zeta-mode", ro.zeta_mode, "none | from_factorization | search");
  roots->add_option("--small-prime-cutoff", ro.cutoff, "Use Berlekamp for p up to this value (default 2^20)");
  roots->add_flag("--json", ro.json, "Emit JSON");

  std::string sm_prime, sm_delta = "1/20", sm_tau = "1/2";
  bool sm_json = false;
  auto* smooth = app.add_subcommand("smooth", "Least q whose q-smooth part of p-1 reaches (p-1)^(tau+delta)");
  smooth->add_option("--prime", sm_prime, "The prime p")->required();
  smooth->add_option("--delta", sm_delta, "delta (rational)");
  smooth->add_option("--tau", sm_tau, "tau (rational)");
  smooth->add_flag("--json", sm_json, "Emit JSON");

  std::string fq, fpoly, fval;
  bool f_json = false;
  auto* field = app.add_subcommand("field", "Emit or validate a field descriptor");
  field->add_option("--quadratic", fq, "Descriptor for X^2 - m");
  field->add_option("--poly", fpoly, "Descriptor for an irreducible quadratic c0,c1,c2");
  field->add_option("--validate", fval, "Validate a descriptor JSON file");
  field->add_flag("--json", f_json, "Emit validation results as JSON");

  std::string cq;
  unsigned long cx = 0, cy = 0, ccap = kDefaultCensusCap;
  bool c_json = false;
  auto* census = app.add_subcommand("census", "Count smooth ideals and principal ideals in Q(sqrt m), m < 0");
  census->add_option("--quadratic", cq, "m")->required();
  census->add_option("--x", cx, "Norm bound x")->required();
  census->add_option("--y", cy, "Smoothness bound y")->required();
  census->add_option("--cap", ccap, "Largest allowed x");
  census->add_flag("--json", c_json, "Emit JSON");

  auto* selftest = app.add_subcommand("selftest", "Run the embedded fixture checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (factor->parsed()) return cmd_factor(fo);
    if (roots->parsed()) return cmd_roots(ro);
    if (smooth->parsed()) return cmd_smooth(sm_prime, sm_delta, sm_tau, sm_json);
    if (field->parsed()) return cmd_field(fq, fpoly, fval, f_json);
    if (census->parsed()) return cmd_census(cq, cx, cy, ccap, c_json);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
