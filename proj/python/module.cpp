#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smoothroots/quadratic.hpp"
#include "smoothroots/roots.hpp"
#include "smoothroots/splitter.hpp"

namespace py = pybind11;
using namespace smoothroots;

namespace {

Integer to_integer(const py::int_& x) { return parse_integer(py::str(x).cast<std::string>()); }

py::int_ to_py(const Integer& x) {
  return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10)));
}

IntPoly to_intpoly(const std::vector<py::int_>& coeffs) {
  IntPoly f;
  for (const auto& c : coeffs) f.push_back(to_integer(c));
  return f;
}

std::vector<py::int_> coeff_list(const FpPoly& g) {
  std::vector<py::int_> out;
  for (const auto& c : g.coeffs()) out.push_back(to_py(c));
  return out;
}

py::list prime_powers(const std::vector<PrimePower>& pps) {
  py::list out;
  for (const auto& pp : pps) out.append(py::make_tuple(to_py(pp.prime), pp.exponent));
  return out;
}

FieldDescriptor descriptor_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return descriptor_from_json(text);
  return load_descriptor(text);
}

py::dict factor(const std::vector<py::int_>& poly, const py::int_& p, const std::string& descriptor,
                const std::string& delta, const std::string& tau, const std::string& c, const std::string& epsilon,
                const std::optional<py::int_>& small_prime_cutoff, bool erh, bool batched,
                const std::optional<std::vector<unsigned long>>& schedule) {
  SplitParams params;
  params.delta = parse_rational(delta);
  params.tau = parse_rational(tau);
  params.c = parse_rational(c);
  params.epsilon = parse_rational(epsilon);
  params.erh_mode = erh;
  params.batched_extraction = batched;
  if (small_prime_cutoff) params.small_prime_cutoff = to_integer(*small_prime_cutoff);
  if (schedule) params.coord_bound_schedule = *schedule;
  const NumberField nf(descriptor_arg(descriptor));
  const IntPoly f = to_intpoly(poly);
  const Natural pv = to_integer(p);
  FactorizationResult r;
  {
    py::gil_scoped_release release;
    r = factor_fixed(f, pv, nf, params);
  }
  py::list factors;
  for (const auto& f : r.factors) factors.append(py::make_tuple(coeff_list(f.poly), f.multiplicity));
  py::dict out;
  out["p"] = to_py(r.p);
  out["leading"] = to_py(r.leading);
  out["factors"] = factors;
  out["path"] = r.path;
  out["warnings"] = r.warnings;
  out["json"] = factorization_to_json(r);
  return out;
}

std::vector<py::int_> nth_roots_py(const py::int_& a, unsigned long n, const py::int_& p,
                                   const std::optional<std::string>& descriptor, const std::string& zeta_mode,
                                   const std::optional<py::int_>& small_prime_cutoff) {
  const Integer av = to_integer(a);
  const CapelliVerdict cap = capelli_check(av, n);
  if (!cap.irreducible) throw CapelliViolation("X^n - a is reducible over Q: " + cap.reason);
  const FieldDescriptor desc = descriptor ? descriptor_arg(*descriptor)
                               : n == 2   ? quadratic_descriptor_for(binomial_poly(av, 2))
                                          : throw std::invalid_argument("a descriptor is required for n > 2");
  SplitParams params;
  if (small_prime_cutoff) params.small_prime_cutoff = to_integer(*small_prime_cutoff);
  const NumberField nf(desc);
  const RootsResult r = nth_roots(av, n, to_integer(p), nf, params, parse_zeta_mode(zeta_mode));
  std::vector<py::int_> out;
  for (const auto& x : r.roots) out.push_back(to_py(x));
  return out;
}

py::dict least_q_py(const py::int_& p, const std::string& tau, const std::string& delta) {
  const SmoothnessProfile sp = least_q(to_integer(p), parse_rational(tau), parse_rational(delta));
  py::dict out;
  out["q"] = to_py(sp.q);
  out["smooth"] = to_py(sp.smooth);
  out["factors"] = prime_powers(sp.factors);
  return out;
}

py::tuple smooth_part_py(const py::int_& n, const py::int_& bound) {
  const SmoothPart sp = smooth_part(to_integer(n), to_integer(bound));
  return py::make_tuple(to_py(sp.value), prime_powers(sp.factors));
}

py::dict census_py(long m, unsigned long x, unsigned long y) {
  const FieldDescriptor desc = quadratic_descriptor(m);
  const CensusCounts c = principal_ideal_census(desc, x, y);
  bool holds = true;
  for (const auto& chk : check_census_inequality(desc, x, y)) holds = holds && chk.holds;
  py::dict out;
  out["psi"] = to_py(c.psi);
  out["psi_tilde"] = to_py(c.psi_tilde);
  out["class_number"] = to_py(desc.class_number);
  out["inequality_holds"] = holds;
  return out;
}

std::vector<py::tuple> validate_py(const std::string& descriptor) {
  std::vector<py::tuple> out;
  for (const auto& c : validate_descriptor(descriptor_arg(descriptor)))
    out.push_back(py::make_tuple(c.name, c.passed, c.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(smoothroots, m) {
  m.doc() = "Deterministic factoring of a fixed polynomial mod p and n-th roots mod p";

  py::register_exception<CyclicExhausted>(m, "CyclicExhausted", PyExc_RuntimeError);
  py::register_exception<CapelliViolation>(m, "CapelliViolation", PyExc_ValueError);
  py::register_exception<UnsupportedPrime>(m, "UnsupportedPrime", PyExc_ValueError);

  m.def("factor", &factor, py::arg("poly"), py::arg("p"), py::arg("descriptor"), py::arg("delta") = "1/20",
        py::arg("tau") = "1/2", py::arg("c") = "100", py::arg("epsilon") = "1/100",
        py::arg("small_prime_cutoff") = py::none(), py::arg("erh") = false, py::arg("batched") = false,
        py::arg("schedule") = py::none(),
        "Complete factorization of poly (constant term first) mod p. descriptor is JSON text or a path.");
  m.def("nth_roots", &nth_roots_py, py::arg("a"), py::arg("n"), py::arg("p"), py::arg("descriptor") = py::none(),
        py::arg("zeta_mode") = "none", py::arg("small_prime_cutoff") = py::none(),
        "All n-th roots of a mod p, ascending.");
  m.def("capelli_irreducible", [](const py::int_& a, unsigned long n) { return capelli_irreducible(to_integer(a), n); },
        py::arg("a"), py::arg("n"));
  m.def("least_q", &least_q_py, py::arg("p"), py::arg("tau") = "1/2", py::arg("delta") = "1/20");
  m.def("smooth_part", &smooth_part_py, py::arg("n"), py::arg("bound"));
  m.def("quadratic_descriptor", [](long m) { return descriptor_to_json(quadratic_descriptor(m)); }, py::arg("m"));
  m.def("validate_descriptor", &validate_py, py::arg("descriptor"));
  m.def("census", &census_py, py::arg("m"), py::arg("x"), py::arg("y"));
}
