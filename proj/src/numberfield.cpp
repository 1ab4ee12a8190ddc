#include "smoothroots/numberfield.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace smoothroots {

namespace {

using RationalPoly = std::vector<Rational>;

// (a * b) mod monic m, all in the power basis of length d.
RationalPoly mul_mod_monic(const RationalPoly& a, const RationalPoly& b, const IntPoly& m) {
  const std::size_t d = m.size() - 1;
  RationalPoly prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > d;) {
    const Rational c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= c * m[i];
  }
  prod.resize(d);
  return prod;
}

std::optional<RationalMatrix> invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational k = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= k;
      inv[col][j] /= k;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

// Fraction-free (Bareiss) determinant of an integer matrix.
Integer int_determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::string shape_problem(const FieldDescriptor& desc) {
  const std::size_t d = desc.degree();
  if (d < 1) return "f must be nonconstant";
  if (desc.f.back() == 0) return "f has a zero leading coefficient";
  if (desc.f_tilde.size() != d + 1) return "f_tilde has the wrong degree";
  if (desc.f_tilde.back() != 1) return "f_tilde is not monic";
  if (desc.basis.size() != d) return "basis must have d rows";
  for (const auto& row : desc.basis)
    if (row.size() != d) return "basis rows must have length d";
  for (const auto& u : desc.units)
    if (u.size() != d) return "unit coordinate vectors must have length d";
  if (desc.index < 1) return "index must be positive";
  return {};
}

// Structure constants in omega-coordinates, rational (integral iff closed).
std::vector<std::vector<std::vector<Rational>>> structure_constants(const FieldDescriptor& desc,
                                                                    const RationalMatrix& inv) {
  const std::size_t d = desc.degree();
  std::vector<std::vector<std::vector<Rational>>> t(d, std::vector<std::vector<Rational>>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const RationalPoly prod = mul_mod_monic(desc.basis[i], desc.basis[j], desc.f_tilde);
      std::vector<Rational> coords(d, Rational(0));
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) coords[l] += prod[k] * inv[k][l];
      t[i][j] = std::move(coords);
    }
  }
  return t;
}

std::string vec_str(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

}  // namespace

IntPoly monicize(const IntPoly& f) {
  if (f.size() < 2 || f.back() == 0) throw std::invalid_argument("monicize needs a nonconstant polynomial");
  const std::size_t d = f.size() - 1;
  const Integer& l = f.back();
  IntPoly out(d + 1);
  Integer lp = 1;  // l^(d-1-i), built from i = d-1 downward
  for (std::size_t i = d; i-- > 0;) {
    out[i] = f[i] * lp;
    lp *= l;
  }
  out[d] = 1;
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<CheckResult> validate_descriptor(const FieldDescriptor& desc) {
  std::vector<CheckResult> out;
  if (auto problem = shape_problem(desc); !problem.empty()) {
    out.push_back({"shape", false, problem});
    return out;
  }
  out.push_back({"shape", true, ""});

  const IntPoly expect = monicize(desc.f);
  if (expect == desc.f_tilde) {
    out.push_back({"f_tilde_identity", true, ""});
  } else {
    std::ostringstream os;
    os << "expected f_tilde = " << vec_str(expect) << ", got " << vec_str(desc.f_tilde);
    out.push_back({"f_tilde_identity", false, os.str()});
  }

  const auto inv = invert(desc.basis);
  if (!inv) {
    out.push_back({"basis_invertible", false, "basis matrix is singular"});
    return out;
  }
  out.push_back({"basis_invertible", true, ""});

  const Rational det = determinant(desc.basis);
  const Rational want(1, desc.index);
  if (abs(det) == want) {
    out.push_back({"index_determinant", true, ""});
  } else {
    out.push_back({"index_determinant", false,
                   "det(basis) = " + to_string(det) + " but 1/index = " + to_string(want)});
  }

  const auto table = structure_constants(desc, *inv);
  std::string closure_problem;
  for (std::size_t i = 0; i < table.size() && closure_problem.empty(); ++i)
    for (std::size_t j = 0; j < table.size() && closure_problem.empty(); ++j)
      for (const auto& c : table[i][j])
        if (c.get_den() != 1) {
          closure_problem = "omega_" + std::to_string(i + 1) + " * omega_" + std::to_string(j + 1) +
                            " has non-integral coordinate " + to_string(c);
          break;
        }
  out.push_back({"multiplicative_closure", closure_problem.empty(), closure_problem});
  if (!closure_problem.empty()) return out;

  const NumberField nf(desc);
  std::string unit_problem;
  for (const auto& u : desc.units) {
    const Integer n = nf.norm(AlgebraicInt{u});
    if (abs(n) != 1) {
      unit_problem = "unit " + vec_str(u) + " has norm " + n.get_str();
      break;
    }
  }
  out.push_back({"unit_norms", unit_problem.empty(), unit_problem});
  return out;
}

NumberField::NumberField(FieldDescriptor desc) : desc_(std::move(desc)), d_(desc_.degree()) {
  if (auto problem = shape_problem(desc_); !problem.empty()) throw std::invalid_argument("descriptor: " + problem);
  auto inv = invert(desc_.basis);
  if (!inv) throw std::invalid_argument("descriptor: singular basis");
  basis_inv_ = std::move(*inv);
  const auto rt = structure_constants(desc_, basis_inv_);
  table_.assign(d_, std::vector<std::vector<Integer>>(d_));
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      for (const auto& c : rt[i][j]) {
        if (c.get_den() != 1) throw std::invalid_argument("descriptor: basis is not multiplicatively closed");
        table_[i][j].push_back(c.get_num());
      }
    }
  }
}

AlgebraicInt NumberField::one() const {
  // 1 in omega-coordinates (omega_1 is normally 1, but do not assume it).
  std::vector<Rational> e(d_, Rational(0));
  e[0] = 1;
  auto x = from_power_basis(e);
  if (!x) throw std::logic_error("1 is not in the lattice spanned by the basis");
  return *x;
}

AlgebraicInt NumberField::add(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out{std::vector<Integer>(d_)};
  for (std::size_t i = 0; i < d_; ++i) out.coords[i] = a.coords[i] + b.coords[i];
  return out;
}

AlgebraicInt NumberField::sub(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out{std::vector<Integer>(d_)};
  for (std::size_t i = 0; i < d_; ++i) out.coords[i] = a.coords[i] - b.coords[i];
  return out;
}

AlgebraicInt NumberField::mul(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out{std::vector<Integer>(d_, Integer(0))};
  for (std::size_t i = 0; i < d_; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (b.coords[j] == 0) continue;
      const Integer ab = a.coords[i] * b.coords[j];
      for (std::size_t k = 0; k < d_; ++k) out.coords[k] += ab * table_[i][j][k];
    }
  }
  return out;
}

std::vector<std::vector<Integer>> NumberField::multiplication_matrix(const AlgebraicInt& x) const {
  std::vector<std::vector<Integer>> m(d_, std::vector<Integer>(d_, Integer(0)));
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      if (x.coords[j] == 0) continue;
      for (std::size_t k = 0; k < d_; ++k) m[i][k] += x.coords[j] * table_[j][i][k];
    }
  return m;
}

Integer NumberField::norm(const AlgebraicInt& x) const { return int_determinant(multiplication_matrix(x)); }

std::vector<Rational> NumberField::to_power_basis(const AlgebraicInt& x) const {
  std::vector<Rational> v(d_, Rational(0));
  for (std::size_t i = 0; i < d_; ++i) {
    if (x.coords[i] == 0) continue;
    for (std::size_t j = 0; j < d_; ++j) v[j] += Rational(x.coords[i]) * desc_.basis[i][j];
  }
  return v;
}

std::optional<AlgebraicInt> NumberField::from_power_basis(const std::vector<Rational>& v) const {
  AlgebraicInt out{std::vector<Integer>(d_)};
  for (std::size_t l = 0; l < d_; ++l) {
    Rational c = 0;
    for (std::size_t k = 0; k < d_; ++k) c += v[k] * basis_inv_[k][l];
    if (c.get_den() != 1) return std::nullopt;
    out.coords[l] = c.get_num();
  }
  return out;
}

Integer norm(const AlgebraicInt& x, const NumberField& nf) { return nf.norm(x); }

FpPoly kappa_reduce(const AlgebraicInt& x, const ModCtxPtr& field, const NumberField& nf) {
  const Natural& p = field->modulus();
  if (mpz_divisible_p(nf.descriptor().index.get_mpz_t(), p.get_mpz_t())) {
    throw IndexDivisible("p = " + p.get_str() + " divides the index " + nf.descriptor().index.get_str());
  }
  if (x.coords.size() != nf.degree()) throw std::invalid_argument("kappa_reduce: coordinate vector has wrong length");
  std::vector<Integer> coeffs;
  coeffs.reserve(nf.degree());
  for (const auto& c : nf.to_power_basis(x)) {
    coeffs.push_back(field->mul(field->reduce(c.get_num()), field->inv(field->reduce(c.get_den()))));
  }
  return FpPoly(field, coeffs);
}

FpPoly reduce_f_tilde(const NumberField& nf, const ModCtxPtr& field) {
  return FpPoly(field, nf.descriptor().f_tilde);
}

// ---------------------------------------------------------------------------

ShellEnumerator::ShellEnumerator(std::size_t dimension, long bound, long first_shell)
    : dim_(dimension), bound_(bound), shell_(std::max(1L, first_shell)) {
  if (dimension == 0) throw std::invalid_argument("ShellEnumerator: dimension must be positive");
}

bool ShellEnumerator::start_shell() {
  if (shell_ > bound_) return false;
  cur_.assign(dim_, -shell_);
  return true;
}

bool ShellEnumerator::advance() {
  const long k = shell_;
  for (std::size_t i = dim_; i-- > 0;) {
    bool hit = false;
    for (std::size_t j = 0; j < i; ++j) hit = hit || std::labs(cur_[j]) == k;
    long nxt;
    if (i == dim_ - 1 && !hit) {
      // The last coordinate must reach the shell on its own.
      if (cur_[i] != -k) continue;
      nxt = k;
    } else {
      if (cur_[i] >= k) continue;
      nxt = cur_[i] + 1;
    }
    cur_[i] = nxt;
    for (std::size_t j = i + 1; j < dim_; ++j) cur_[j] = -k;
    return true;
  }
  return false;
}

std::optional<AlgebraicInt> ShellEnumerator::next() {
  if (done_) return std::nullopt;
  bool ok;
  if (fresh_) {
    fresh_ = false;
    ok = start_shell();
  } else {
    ok = advance();
    if (!ok) {
      ++shell_;
      ok = start_shell();
    }
  }
  if (!ok) {
    done_ = true;
    return std::nullopt;
  }
  AlgebraicInt out;
  out.coords.reserve(dim_);
  for (long c : cur_) out.coords.emplace_back(c);
  return out;
}

std::vector<AlgebraicInt> enumerate_A(std::size_t dimension, long bound) {
  if (bound < 1) throw std::invalid_argument("enumerate_A: bound must be at least 1");
  std::vector<AlgebraicInt> out;
  ShellEnumerator it(dimension, bound);
  while (auto x = it.next()) out.push_back(std::move(*x));
  return out;
}

Natural shell_size(std::size_t dimension, long k) {
  Natural a, b;
  mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(2 * k + 1), dimension);
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(2 * k - 1), dimension);
  return a - b;
}

Rational default_c3(const Integer& discriminant) {
  Integer a = abs(discriminant);
  Integer r = isqrt(a);
  if (r * r != a) ++r;
  return Rational(r);
}

// ---------------------------------------------------------------------------

namespace {

using ojson = nlohmann::ordered_json;

Integer json_integer(const ojson& j, const char* what) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.dump());
  throw std::invalid_argument(std::string("descriptor: ") + what + " must be an integer string");
}

Rational json_rational(const ojson& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw std::invalid_argument(std::string("descriptor: ") + what + " must be a rational string");
}

IntPoly json_int_vector(const ojson& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string("descriptor: ") + what + " must be an array");
  IntPoly out;
  for (const auto& e : j) out.push_back(json_integer(e, what));
  return out;
}

ojson int_vector_json(const std::vector<Integer>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

}  // namespace

std::string descriptor_to_json(const FieldDescriptor& desc) {
  ojson j;
  j["f"] = int_vector_json(desc.f);
  j["f_tilde"] = int_vector_json(desc.f_tilde);
  ojson basis = ojson::array();
  for (const auto& row : desc.basis) {
    ojson r = ojson::array();
    for (const auto& c : row) r.push_back(to_string(c));
    basis.push_back(std::move(r));
  }
  j["basis"] = std::move(basis);
  ojson units = ojson::array();
  for (const auto& u : desc.units) units.push_back(int_vector_json(u));
  j["units"] = std::move(units);
  j["class_number"] = desc.class_number.get_str();
  j["index"] = desc.index.get_str();
  j["minkowski_bound"] = to_string(desc.minkowski_bound);
  j["c3"] = to_string(desc.c3);
  j["discriminant"] = desc.discriminant.get_str();
  return j.dump(2) + "\n";
}

FieldDescriptor descriptor_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw std::invalid_argument(std::string("descriptor: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("descriptor: top level must be an object");
  for (const char* key : {"f", "basis", "class_number", "discriminant"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("descriptor: missing key '") + key + "'");
  }
  FieldDescriptor d;
  d.f = json_int_vector(j["f"], "f");
  if (d.f.size() < 2) throw std::invalid_argument("descriptor: f must be nonconstant");
  d.f_tilde = j.contains("f_tilde") ? json_int_vector(j["f_tilde"], "f_tilde") : monicize(d.f);
  const auto& basis = j["basis"];
  if (!basis.is_array()) throw std::invalid_argument("descriptor: basis must be an array of rows");
  for (const auto& row : basis) {
    if (!row.is_array()) throw std::invalid_argument("descriptor: basis rows must be arrays");
    std::vector<Rational> r;
    for (const auto& c : row) r.push_back(json_rational(c, "basis entry"));
    d.basis.push_back(std::move(r));
  }
  if (j.contains("units")) {
    if (!j["units"].is_array()) throw std::invalid_argument("descriptor: units must be an array");
    for (const auto& u : j["units"]) d.units.push_back(json_int_vector(u, "unit"));
  }
  d.class_number = json_integer(j["class_number"], "class_number");
  d.index = j.contains("index") ? json_integer(j["index"], "index") : Integer(1);
  d.minkowski_bound = j.contains("minkowski_bound") ? json_rational(j["minkowski_bound"], "minkowski_bound") : Rational(0);
  d.discriminant = json_integer(j["discriminant"], "discriminant");
  d.c3 = j.contains("c3") ? json_rational(j["c3"], "c3") : default_c3(d.discriminant);
  return d;
}

FieldDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return descriptor_from_json(ss.str());
}

}  // namespace smoothroots
