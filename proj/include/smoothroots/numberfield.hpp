#pragma once

// The fixed number field K = Q(theta): precomputed descriptor data, exact
// arithmetic on O_K in an integral basis, and the reduction
// O_K/(p) -> Z/pZ[Y]/(f~) sending theta to Y.

#include <optional>
#include <string>
#include <vector>

#include "smoothroots/bigmod.hpp"
#include "smoothroots/fpoly.hpp"

namespace smoothroots {

/// Integer polynomial, constant term first.
using IntPoly = std::vector<Integer>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct FieldDescriptor {
  IntPoly f;
  IntPoly f_tilde;
  /// Row i is omega_i in the power basis 1, theta, ..., theta^(d-1).
  RationalMatrix basis;
  /// Coordinate vectors over omega.
  std::vector<std::vector<Integer>> units;
  Natural class_number = 1;
  /// [O_K : Z[theta]]
  Natural index = 1;
  Rational minkowski_bound;
  Rational c3;
  Integer discriminant;

  std::size_t degree() const { return f.empty() ? 0 : f.size() - 1; }
  const Integer& leading() const { return f.back(); }

  bool operator==(const FieldDescriptor&) const = default;
};

struct AlgebraicInt {
  std::vector<Integer> coords;

  bool operator==(const AlgebraicInt&) const = default;
};

/// f~(Y) = l^(d-1) f(Y/l) for leading coefficient l.
IntPoly monicize(const IntPoly& f);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Checks every invariant decidable from the data: the f~ identity,
/// multiplicative closure of the basis, unit norms, det(basis) = +-1/index.
/// The class number and completeness of the unit list are trusted.
std::vector<CheckResult> validate_descriptor(const FieldDescriptor& desc);
bool all_passed(const std::vector<CheckResult>& checks);

/// Descriptor plus derived tables (structure constants, inverse basis).
class NumberField {
 public:
  /// Throws std::invalid_argument if the descriptor is not even structurally
  /// usable (shape mismatch, singular basis, non-integral structure constants).
  explicit NumberField(FieldDescriptor desc);

  const FieldDescriptor& descriptor() const { return desc_; }
  std::size_t degree() const { return d_; }

  AlgebraicInt one() const;
  AlgebraicInt add(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt sub(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b) const;

  /// Rows are the omega-coordinates of x * omega_i.
  std::vector<std::vector<Integer>> multiplication_matrix(const AlgebraicInt& x) const;
  Integer norm(const AlgebraicInt& x) const;

  /// Power-basis coefficients of x.
  std::vector<Rational> to_power_basis(const AlgebraicInt& x) const;
  /// Omega-coordinates of a power-basis vector, if integral.
  std::optional<AlgebraicInt> from_power_basis(const std::vector<Rational>& v) const;

 private:
  FieldDescriptor desc_;
  std::size_t d_;
  RationalMatrix basis_inv_;
  /// table_[i][j] = coordinates of omega_i * omega_j
  std::vector<std::vector<std::vector<Integer>>> table_;
};

/// Raised when p divides the index, so the reduction map is not defined.
class IndexDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Representative of degree < d of the image of x in Z/pZ[Y]/(f~ mod p).
FpPoly kappa_reduce(const AlgebraicInt& x, const ModCtxPtr& field, const NumberField& nf);
/// f~ reduced modulo p.
FpPoly reduce_f_tilde(const NumberField& nf, const ModCtxPtr& field);

Integer norm(const AlgebraicInt& x, const NumberField& nf);

/// Coordinate vectors with sup-norm <= bound, shell by shell (sup-norm
/// 1, 2, ...), lexicographic inside a shell, zero excluded. Resumable from
/// any starting shell.
class ShellEnumerator {
 public:
  ShellEnumerator(std::size_t dimension, long bound, long first_shell = 1);

  std::optional<AlgebraicInt> next();
  /// Sup-norm of the vector returned by the last next().
  long current_shell() const { return shell_; }

 private:
  bool start_shell();
  bool advance();

  std::size_t dim_;
  long bound_;
  long shell_;
  std::vector<long> cur_;
  bool fresh_ = true;
  bool done_ = false;
};

/// Convenience: collect enumerate_A(bound) into a vector.
std::vector<AlgebraicInt> enumerate_A(std::size_t dimension, long bound);

/// (2k+1)^d - (2k-1)^d
Natural shell_size(std::size_t dimension, long k);

// Descriptor JSON (keys f, f_tilde, basis, units, class_number, index,
// minkowski_bound, c3, discriminant; integers and rationals as strings).
std::string descriptor_to_json(const FieldDescriptor& desc);
FieldDescriptor descriptor_from_json(const std::string& text);
FieldDescriptor load_descriptor(const std::string& path);

/// Default c3 for external descriptors lacking one: ceil(sqrt(|disc|)).
Rational default_c3(const Integer& discriminant);

}  // namespace smoothroots
