#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "smoothroots/numberfield.hpp"
#include "smoothroots/quadratic.hpp"

using namespace smoothroots;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FieldDescriptor gaussian() {
  FieldDescriptor d;
  d.f = {1, 0, 1};
  d.f_tilde = {1, 0, 1};
  d.basis = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  d.units = {{-1, 0}, {0, 1}};
  d.class_number = 1;
  d.index = 1;
  d.minkowski_bound = Rational(4, 3);
  d.c3 = Rational(2);
  d.discriminant = -4;
  return d;
}

bool check_named(const std::vector<CheckResult>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return c.passed;
  FAIL("no check named " << name);
  return false;
}

FpPoly P(std::uint64_t p, std::vector<Integer> c) { return FpPoly(make_modulus(p), c); }

}  // namespace

TEST_CASE("monicize examples") {
  CHECK(monicize({5, 3, 2}) == IntPoly{10, 3, 1});
  // expand 2 * (2 (Y/2)^2 + 3 (Y/2) + 5) = Y^2 + 3Y + 10 at sample points
  for (long y = -5; y <= 5; ++y) {
    const Rational x(y, 2);
    const Rational lhs = 2 * (2 * x * x + 3 * x + 5);
    CHECK(lhs == Rational(y * y + 3 * y + 10));
  }
  CHECK(monicize({1, 0, 1}) == IntPoly{1, 0, 1});
  // degree 1: f~(l x) = l^0 f(x), so 3X - 1 becomes Y - 1
  CHECK(monicize({-1, 3}) == IntPoly{-1, 1});
  CHECK(monicize({-2, 0, 0, 3}) == IntPoly{-18, 0, 0, 1});
}

TEST_CASE("validate_descriptor examples") {
  const auto ok = validate_descriptor(gaussian());
  CHECK(all_passed(ok));
  FieldDescriptor bad_unit = gaussian();
  bad_unit.units.push_back({1, 1});
  const auto r1 = validate_descriptor(bad_unit);
  CHECK_FALSE(all_passed(r1));
  CHECK_FALSE(check_named(r1, "unit_norms"));
  FieldDescriptor bad_tilde = gaussian();
  bad_tilde.f_tilde = {2, 0, 1};
  const auto r2 = validate_descriptor(bad_tilde);
  CHECK_FALSE(check_named(r2, "f_tilde_identity"));
  FieldDescriptor bad_index = gaussian();
  bad_index.index = 2;
  CHECK_FALSE(check_named(validate_descriptor(bad_index), "index_determinant"));
  FieldDescriptor not_closed = gaussian();
  not_closed.basis = {{Rational(1), Rational(0)}, {Rational(1, 2), Rational(1, 2)}};
  not_closed.index = 2;
  CHECK_FALSE(all_passed(validate_descriptor(not_closed)));
}

TEST_CASE("kappa_reduce examples") {
  const NumberField qi(gaussian());
  const auto F13 = make_modulus(13);
  CHECK(kappa_reduce({{3, 2}}, F13, qi) == P(13, {3, 2}));
  const NumberField q5(quadratic_descriptor(5));
  const auto F7 = make_modulus(7);
  CHECK(kappa_reduce({{0, 1}}, F7, q5) == P(7, {4, 4}));
  CHECK(oracle_ref::inv_scan(2, 7) == 4);
  CHECK(kappa_reduce({{0, 0}}, F13, qi).is_zero());
  const NumberField x57(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x5-7.json"));
  CHECK_THROWS_AS(kappa_reduce({{1, 0, 0, 0, 0}}, make_modulus(5), x57), IndexDivisible);
}

TEST_CASE("enumerate_A examples") {
  CHECK(enumerate_A(2, 1).size() == 8);
  const auto two = enumerate_A(2, 2);
  CHECK(two.size() == 24);
  CHECK(two.front().coords == std::vector<Integer>{-1, -1});
  ShellEnumerator resume(2, 2, 2);
  std::size_t n = 0;
  while (auto x = resume.next()) {
    CHECK(resume.current_shell() == 2);
    ++n;
  }
  CHECK(n == 16);
}

TEST_CASE("norm examples") {
  const NumberField qi(gaussian());
  CHECK(qi.norm({{3, 2}}) == 13);
  CHECK(qi.norm(qi.one()) == 1);
  const NumberField q2(quadratic_descriptor(2));
  CHECK(q2.norm({{1, 1}}) == -1);
  CHECK(norm(AlgebraicInt{{1, 1}}, q2) == -1);
}

TEST_CASE("descriptor JSON round trip is byte-identical") {
  for (const char* name : {"x3-2", "x3-6", "x4+1", "x5-7"}) {
    const std::string path = std::string(SMOOTHROOTS_DATA_DIR) + "/fields/" + name + ".json";
    const std::string text = slurp(path);
    const FieldDescriptor d = descriptor_from_json(text);
    CHECK_MESSAGE(descriptor_to_json(d) == text, name);
    CHECK_MESSAGE(all_passed(validate_descriptor(d)), name);
    CHECK(descriptor_from_json(descriptor_to_json(d)) == d);
  }
  for (long m : {-1L, -5L, 2L, 5L, 7L}) {
    const FieldDescriptor d = quadratic_descriptor(m);
    const std::string text = descriptor_to_json(d);
    CHECK(descriptor_to_json(descriptor_from_json(text)) == text);
  }
}

TEST_CASE("descriptor JSON defaults for optional keys") {
  const std::string text = R"({"f": ["1", "0", "1"], "basis": [["1", "0"], ["0", "1"]], "class_number": "1",
    "discriminant": "-4", "units": [["-1", "0"], ["0", "1"]]})";
  const FieldDescriptor d = descriptor_from_json(text);
  CHECK(d.f_tilde == IntPoly{1, 0, 1});
  CHECK(d.index == 1);
  CHECK(d.c3 == default_c3(-4));
  CHECK(default_c3(-4) == 2);
  CHECK(default_c3(-108) == 11);
  CHECK_THROWS(descriptor_from_json("{\"f\": 3}"));
}

TEST_CASE("property: kappa_reduce is a ring homomorphism") {
  std::mt19937_64 rng(17);
  std::vector<NumberField> fields;
  fields.emplace_back(gaussian());
  fields.emplace_back(quadratic_descriptor(-5));
  fields.emplace_back(quadratic_descriptor(5));
  fields.emplace_back(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x3-2.json"));
  fields.emplace_back(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x4+1.json"));
  fields.emplace_back(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x5-7.json"));
  for (const auto& nf : fields) {
    for (std::uint64_t p : {7ULL, 13ULL, 101ULL}) {
      if (nf.descriptor().index % static_cast<unsigned long>(p) == 0) continue;
      const auto F = make_modulus(p);
      const FpPoly ft = reduce_f_tilde(nf, F);
      for (int i = 0; i < 200; ++i) {
        AlgebraicInt x, y;
        for (std::size_t k = 0; k < nf.degree(); ++k) {
          x.coords.push_back(static_cast<long>(rng() % 41) - 20);
          y.coords.push_back(static_cast<long>(rng() % 41) - 20);
        }
        const FpPoly kx = kappa_reduce(x, F, nf), ky = kappa_reduce(y, F, nf);
        CHECK(kappa_reduce(nf.mul(x, y), F, nf) == poly_mulmod(kx, ky, ft));
        CHECK(kappa_reduce(nf.add(x, y), F, nf) == (kx + ky) % ft);
      }
    }
  }
}

TEST_CASE("property: p divides the norm exactly when kappa shares a factor with f~") {
  std::mt19937_64 rng(5);
  for (long m : {-1L, -5L}) {
    const NumberField nf(quadratic_descriptor(m));
    for (std::uint64_t p : oracle_ref::primes_upto(100)) {
      if (nf.descriptor().index % static_cast<unsigned long>(p) == 0) continue;
      const auto F = make_modulus(p);
      const FpPoly ft = reduce_f_tilde(nf, F);
      for (int i = 0; i < 60; ++i) {
        const AlgebraicInt x{{static_cast<long>(rng() % 61) - 30, static_cast<long>(rng() % 61) - 30}};
        if (x.coords[0] == 0 && x.coords[1] == 0) continue;
        const bool divisible = nf.norm(x) % static_cast<unsigned long>(p) == 0;
        const FpPoly g = poly_gcd(kappa_reduce(x, F, nf), ft);
        const bool shares = kappa_reduce(x, F, nf).is_zero() || g.degree() > 0;
        CHECK(divisible == shares);
      }
    }
  }
}

TEST_CASE("property: shells are disjoint and of the right size") {
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    const long bound = d <= 2 ? 5 : 3;
    std::set<std::vector<Integer>> seen;
    std::map<long, std::size_t> per_shell;
    ShellEnumerator en(d, bound);
    while (auto x = en.next()) {
      CHECK(seen.insert(x->coords).second);
      long sup = 0;
      for (const auto& c : x->coords) sup = std::max(sup, Integer(abs(c)).get_si());
      CHECK(sup == en.current_shell());
      ++per_shell[sup];
    }
    for (long k = 1; k <= bound; ++k) {
      CHECK(Natural(static_cast<unsigned long>(per_shell[k])) == shell_size(d, k));
      long expect = 1, inner = 1;
      for (std::size_t i = 0; i < d; ++i) {
        expect *= 2 * k + 1;
        inner *= 2 * k - 1;
      }
      CHECK(static_cast<long>(per_shell[k]) == expect - inner);
    }
  }
}

TEST_CASE("external descriptors: unit norms and multiplicative structure") {
  const NumberField x32(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x3-2.json"));
  for (const auto& u : x32.descriptor().units) CHECK(abs(x32.norm({u})) == 1);
  // theta^3 = 2 in the power basis
  AlgebraicInt theta = *x32.from_power_basis({Rational(0), Rational(1), Rational(0)});
  const AlgebraicInt cube = x32.mul(x32.mul(theta, theta), theta);
  CHECK(x32.to_power_basis(cube) == std::vector<Rational>{Rational(2), Rational(0), Rational(0)});
  const NumberField x57(load_descriptor(SMOOTHROOTS_DATA_DIR "/fields/x5-7.json"));
  CHECK(x57.descriptor().index == 5);
  CHECK(x57.norm(x57.one()) == 1);
}
