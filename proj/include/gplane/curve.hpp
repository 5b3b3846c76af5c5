#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gplane/projective.hpp"

namespace gplane {

// Dense homogeneous polynomial of fixed total degree d in X, Y, Z.
// Monomial X^a Y^b Z^c (a+b+c = d) is stored at index t(t+1)/2 + (t-b) with
// t = d - a: terms are ordered by a descending, then b descending, so the
// first stored term of a curve in canonical form is its X-leading term.
class HomPoly {
 public:
  HomPoly() = default;
  HomPoly(const FieldCtx* F, u32 d);

  static u32 term_count(u32 d) { return (d + 1) * (d + 2) / 2; }
  static u32 index_of(u32 d, u32 a, u32 b);

  const FieldCtx* field() const { return F_; }
  u32 degree() const { return d_; }
  bool is_zero() const;
  const std::vector<FieldElem>& coeffs() const { return c_; }

  FieldElem coeff(u32 a, u32 b, u32 c) const;
  void set_coeff(u32 a, u32 b, u32 c, const FieldElem& v);
  // Visits the nonzero terms (a, b, c, coefficient) in storage order.
  void for_each_term(const std::function<void(u32, u32, u32, const FieldElem&)>& fn) const;

  FieldElem eval(const FieldElem& x, const FieldElem& y, const FieldElem& z) const;
  FieldElem eval_point(const ProjPoint& P) const;

  HomPoly operator+(const HomPoly& o) const;
  HomPoly operator-(const HomPoly& o) const;
  HomPoly operator*(const HomPoly& o) const;  // degrees add
  HomPoly scaled(const FieldElem& s) const;
  bool operator==(const HomPoly& o) const;
  bool operator!=(const HomPoly& o) const { return !(*this == o); }

  // Partial derivative with respect to variable 0 (X), 1 (Y) or 2 (Z).
  HomPoly derivative(u32 var) const;

  // Canonical representative: first stored nonzero coefficient scaled to 1.
  HomPoly normalized() const;

  // Substitution F(M * (X,Y,Z)^T), computed through a cached evaluation
  // frame; exact.
  HomPoly compose(const ProjMatrix& M) const;

  std::string str() const;

 private:
  const FieldCtx* F_ = nullptr;
  u32 d_ = 0;
  std::vector<FieldElem> c_;
};

HomPoly embed_hompoly(const HomPoly& f, const FieldCtx* target);
// Equal up to a nonzero scalar?
bool proportional(const HomPoly& a, const HomPoly& b);
// No repeated factor (over the algebraic closure; the ground field is
// perfect, so derivative-gcd criteria apply).
bool hompoly_squarefree(const HomPoly& f);

// A reduced plane curve F = 0 over a base field context.
struct PlaneCurve {
  const FieldCtx* k = nullptr;
  u32 degree = 0;
  HomPoly F;  // normalized, squarefree

  // X^q Z + X Z^q - Y^(q+1) over GF(q^2).
  static PlaneCurve hermitian(const FieldCtx* k, u64 q);
  // X^d + Y^d + Z^d, requires gcd(d, char) = 1.
  static PlaneCurve fermat(const FieldCtx* k, u32 d);
  // Any nonzero squarefree homogeneous polynomial.
  static PlaneCurve from_poly(const HomPoly& f);

  // The defining polynomial with coefficients embedded into an extension
  // (cached).
  const HomPoly& poly_over(const FieldCtx* ext) const;
  // P may live over any field of the lattice (lifted through the compositum
  // when it is not an extension of k).
  bool contains(const ProjPoint& P) const;
  bool is_smooth_at(const ProjPoint& P) const;
  // 0 when P is off the curve, 1 at smooth points, >= 2 at singular ones.
  u32 multiplicity_at(const ProjPoint& P) const;
  // All points rational over ext, sorted canonically (cached).
  const std::vector<ProjPoint>& points_over(const FieldCtx* ext,
                                            u64 field_cap = 1ull << 20) const;

  mutable std::map<const FieldCtx*, HomPoly> poly_cache_;
  mutable std::map<const FieldCtx*, std::vector<ProjPoint>> point_cache_;
};

struct InterpolationResult {
  enum class Status { unique, underdetermined, none };
  Status status = Status::none;
  u32 rank = 0;
  u32 ncols = 0;
  u32 npoints = 0;
  bool squarefree = false;
  bool descended = false;
  // Normalized fit over the evaluation field, present when status == unique.
  std::optional<HomPoly> raw;
  // The fit with coefficients descended to the base field, when possible.
  std::optional<HomPoly> over_base;
};

// Fit a single curve of the given degree through the points (all points must
// share one field, an extension of `base` in its lattice).
InterpolationResult interpolate_curve(const FieldCtx* base, u32 degree,
                                      const std::vector<ProjPoint>& pts);

}  // namespace gplane
