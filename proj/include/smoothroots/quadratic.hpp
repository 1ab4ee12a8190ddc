#pragma once

// Built-in quadratic fields: descriptors, fundamental units, class numbers,
// ideal arithmetic in O_K = Z[w], and the smooth-ideal census.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "smoothroots/numberfield.hpp"

namespace smoothroots {

/// Element x + y*w of O_K.
struct QuadElem {
  Integer x;
  Integer y;

  bool operator==(const QuadElem&) const = default;
  bool operator<(const QuadElem& o) const { return x != o.x ? x < o.x : y < o.y; }
};

/// Ideal given by its Hermite normal form: the lattice Z*a + Z*(b + c*w)
/// with 0 <= b < a. Norm is a*c.
struct QuadIdeal {
  Natural a;
  Natural b;
  Natural c;

  Natural norm() const { return a * c; }
  bool operator==(const QuadIdeal&) const = default;
  bool operator<(const QuadIdeal& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

/// O_K for a fundamental discriminant d: w = (r + sqrt d)/2 with r = d mod 2,
/// so w^2 = r*w - n_w where n_w = (r^2 - d)/4.
class QuadraticOrder {
 public:
  explicit QuadraticOrder(Integer discriminant);

  const Integer& discriminant() const { return d_; }
  int r() const { return r_; }
  const Integer& n_w() const { return n_w_; }
  bool imaginary() const { return d_ < 0; }

  Integer norm(const QuadElem& e) const;
  QuadElem mul(const QuadElem& a, const QuadElem& b) const;
  QuadElem conj(const QuadElem& e) const;

  QuadIdeal unit_ideal() const { return {1, 0, 1}; }
  /// HNF of the Z-span of the given elements (must have rank 2).
  QuadIdeal span(const std::vector<QuadElem>& gens) const;
  bool is_ideal(const QuadIdeal& I) const;
  bool contains(const QuadIdeal& I, const QuadElem& e) const;
  QuadIdeal mul(const QuadIdeal& I, const QuadIdeal& J) const;
  QuadIdeal conj(const QuadIdeal& I) const;
  QuadIdeal principal(const QuadElem& e) const;

  /// A generator of I when I is principal.
  std::optional<QuadElem> principal_generator(const QuadIdeal& I) const;
  bool equivalent(const QuadIdeal& I, const QuadIdeal& J) const;

  /// Prime ideals above the rational prime ell.
  std::vector<QuadIdeal> primes_above(unsigned long ell) const;
  /// Every ideal of norm <= bound, in HNF order.
  std::vector<QuadIdeal> ideals_up_to(unsigned long bound) const;

  /// Units of finite order (imaginary case only).
  std::vector<QuadElem> roots_of_unity() const;
  /// Fundamental unit > 1 (real case only).
  const QuadElem& fundamental_unit() const { return eps_; }

 private:
  Integer d_;
  int r_;
  Integer n_w_;
  QuadElem eps_{0, 0};
  long double eps_value_ = 0;
};

/// d_K for Q(sqrt m). Throws std::invalid_argument if m is 0, 1 or not squarefree.
Integer quadratic_discriminant(const Integer& m);

/// Fundamental unit of the real quadratic order of discriminant d > 0, as
/// coordinates over (1, w), from the continued fraction of w.
QuadElem fundamental_unit(const Integer& d);

/// Imaginary discriminants: number of reduced primitive forms.
Natural class_number_reduced_forms(const Integer& d);
/// Any discriminant: classes of ideals of norm below the Minkowski bound.
Natural class_number_ideals(const Integer& d);

/// Descriptor for X^2 - m (m squarefree, not 0 or 1).
FieldDescriptor quadratic_descriptor(const Integer& m);
/// Descriptor for any irreducible integer quadratic f (constant term first).
FieldDescriptor quadratic_descriptor_for(const IntPoly& f);

// ---------------------------------------------------------------------------
// Census of smooth ideals in imaginary quadratic fields

inline constexpr unsigned long kDefaultCensusCap = 10000;

struct CensusCounts {
  Natural psi;
  Natural psi_tilde;
};

/// psi_K(x, y): ideals of norm <= x built from prime ideals of norm <= y.
/// psi~_K(x, y): principal ideals of norm <= x built from principal ideals
/// of norm <= y.
CensusCounts principal_ideal_census(const FieldDescriptor& desc, unsigned long x, unsigned long y,
                                    unsigned long cap = kDefaultCensusCap);

/// Sorted norms of the ideals counted by psi_K(x, .) when the allowed prime
/// ideals are those whose norm n satisfies n^power <= y.
std::vector<unsigned long> smooth_ideal_norms(const QuadraticOrder& O, unsigned long x, unsigned long y,
                                              unsigned long power = 1);
/// Sorted norms of the principal ideals counted by psi~_K(x, y).
std::vector<unsigned long> smooth_principal_norms(const QuadraticOrder& O, unsigned long x, unsigned long y);

struct CensusCheck {
  unsigned long x = 0;
  unsigned long y = 0;
  Natural lhs;  // h * psi~(x, y)
  Natural rhs;  // psi(floor(x / M_K), y^(1/h))
  bool holds = false;
};

/// Checks h * psi~(x, y) >= psi(x / M_K, y^(1/h)) for every x <= x_max at
/// the given y. M_K is taken from below so the check is never loosened by
/// rounding.
std::vector<CensusCheck> check_census_inequality(const FieldDescriptor& desc, unsigned long x_max, unsigned long y,
                                                 unsigned long cap = kDefaultCensusCap);

}  // namespace smoothroots
