#pragma once

#include <utility>
#include <vector>

#include "gplane/field.hpp"

namespace gplane {

// Dense univariate polynomial over a single field context.  Coefficients are
// little-endian and normalized (no trailing zeros); the zero polynomial has
// an empty coefficient vector and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const FieldCtx* F) : F_(F) {}
  UPoly(const FieldCtx* F, std::vector<FieldElem> c);

  static UPoly zero(const FieldCtx* F) { return UPoly(F); }
  static UPoly constant(const FieldElem& a);
  static UPoly monomial(const FieldCtx* F, u32 deg, const FieldElem& coef);
  // x - r
  static UPoly linear_root(const FieldElem& r);
  static UPoly from_prime_coeffs(const FieldCtx* F, const std::vector<u64>& c);

  const FieldCtx* field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  // Coefficient of x^i (zero element when i > degree).
  FieldElem coeff(u32 i) const;
  FieldElem lead() const;
  bool is_monic() const;

  FieldElem eval(const FieldElem& x) const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const FieldElem& s) const;
  bool operator==(const UPoly& o) const;
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  UPoly derivative() const;
  // Monic rescaling (throws on zero polynomial).
  UPoly monic() const;

  std::string str() const;

 private:
  const FieldCtx* F_ = nullptr;
  std::vector<FieldElem> c_;
  void normalize();
};

// Division with remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
// Monic gcd (zero polynomial when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
// base^e mod m, with m of degree >= 1.
UPoly powmod(const UPoly& base, u64 e, const UPoly& m);

// All roots of f in its own field, with multiplicities, sorted by element
// index.  Deterministic (Cantor-Zassenhaus with a fixed splitting sequence;
// exhaustive scan for small fields).  f must be nonzero.
std::vector<std::pair<FieldElem, u32>> roots_with_multiplicity(const UPoly& f);

// Product of the distinct monic irreducible factors of f (f nonzero,
// degree >= 1 unless f is constant, in which case 1).
UPoly radical(const UPoly& f);

// Degrees of the distinct irreducible factors of f: sorted list of
// (degree, count) pairs, computed on the radical.
std::vector<std::pair<u32, u32>> irreducible_degree_profile(const UPoly& f);

// lcm of the irreducible-factor degrees: the degree over f's field of the
// smallest extension where f splits completely.
u32 splitting_extension_degree(const UPoly& f);

}  // namespace gplane
