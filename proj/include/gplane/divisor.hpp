#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "gplane/curve.hpp"

namespace gplane {

// Raised when an intersection computation would need a splitting field whose
// order does not fit in the element representation.
struct SplittingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The representative of P over its minimal field of definition inside the
// lattice (the smallest subfield all normalized coordinates descend to).
ProjPoint canonical_point(const ProjPoint& P);

// Total order on canonical points: characteristic, then field order, then
// coordinate indices.
struct CanonPointLess {
  bool operator()(const ProjPoint& a, const ProjPoint& b) const;
};

// Formal integer combination of geometric points, keyed by canonical
// minimal-field representatives, so equal geometric points merge no matter
// which extension they were produced over.
class Divisor {
 public:
  using Map = std::map<ProjPoint, i64, CanonPointLess>;

  Divisor() = default;
  static Divisor single(const ProjPoint& P, i64 mult = 1);

  void add_point(const ProjPoint& P, i64 mult);
  i64 mult_of(const ProjPoint& P) const;
  i64 degree() const;
  size_t support_size() const { return m_.size(); }
  bool is_zero() const { return m_.empty(); }
  bool is_effective() const;

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor scaled(i64 s) const;
  bool operator==(const Divisor& o) const;
  bool operator!=(const Divisor& o) const { return !(*this == o); }

  const Map& entries() const { return m_; }
  std::string str() const;

 private:
  Map m_;
};

// The divisor cut on C by the line L (L over any lattice extension of C's
// field, and not a component of C).  Points appear over the splitting field
// of the restricted binary form; total degree is deg C.  Throws
// SplittingError when that field would overflow the element type.
Divisor line_intersection_divisor(const PlaneCurve& C, const ProjLine& L);

// Image divisor under a projective map (multiplicities carried along).
Divisor pushforward(const Divisor& D, const ProjMatrix& M);

}  // namespace gplane
