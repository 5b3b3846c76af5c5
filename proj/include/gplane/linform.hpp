#pragma once

#include <string>
#include <vector>

#include "gplane/divisor.hpp"

namespace gplane {

struct LinTerm {
  ProjLine form;
  i64 exp;
};

struct LinValue {
  enum class Kind { finite, zero, pole, indeterminate };
  Kind kind = Kind::indeterminate;
  // The exact value for kind finite; the zero element for kind zero.
  FieldElem value;
};

// A rational function on the plane of the shape  c * prod L_i^(e_i)  with
// linear forms L_i and sum(e_i) = 0, so the value at a projective point does
// not depend on the representative.  The scalar c is tracked exactly, which
// makes pullback along a projectivity value-preserving even though the
// canonical line representatives drop scalars.
class LinFormProduct {
 public:
  explicit LinFormProduct(const FieldCtx* F);

  // Merges duplicate forms, drops zero exponents; the exponent sum must be
  // zero.
  static LinFormProduct from_terms(const FieldCtx* F, const std::vector<LinTerm>& ts);

  const FieldCtx* field() const { return F_; }
  const std::vector<LinTerm>& terms() const { return terms_; }
  const FieldElem& scalar() const { return scalar_; }
  bool is_constant() const { return terms_.empty(); }

  LinFormProduct operator*(const LinFormProduct& o) const;
  LinFormProduct inverse() const;
  LinFormProduct scaled(const FieldElem& c) const;
  LinFormProduct pow(i64 e) const;
  bool operator==(const LinFormProduct& o) const;

  // The function composed with M: P -> value at M * P, exactly.
  LinFormProduct pullback(const ProjMatrix& M) const;

  // Evaluate at a point of any lattice field.
  LinValue value_at(const ProjPoint& P) const;

  // The divisor cut on C: sum of e_i times the line cut of L_i.  Total
  // degree is zero.  Requires no L_i to be a component of C.
  Divisor divisor_on(const PlaneCurve& C) const;

  std::string str() const;

 private:
  const FieldCtx* F_ = nullptr;
  FieldElem scalar_;
  std::vector<LinTerm> terms_;  // sorted by form, unique, nonzero exponents
};

}  // namespace gplane
