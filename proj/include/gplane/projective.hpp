#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gplane/field.hpp"

namespace gplane {

// Point of the projective plane over a field context.  Coordinates are kept
// in the canonical representative with first nonzero coordinate equal to 1,
// so equality of representatives is projective equality.
struct ProjPoint {
  const FieldCtx* F = nullptr;
  std::array<FieldElem, 3> v;

  static ProjPoint make(const FieldElem& x, const FieldElem& y, const FieldElem& z);
  static ProjPoint from_ints(const FieldCtx* F, u64 x, u64 y, u64 z);

  bool operator==(const ProjPoint& o) const;
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  std::string str() const;
};

struct PPointLess {
  bool operator()(const ProjPoint& a, const ProjPoint& b) const;
};

// Line a*X + b*Y + c*Z = 0, canonical representative as for points.
struct ProjLine {
  const FieldCtx* F = nullptr;
  std::array<FieldElem, 3> v;

  static ProjLine make(const FieldElem& a, const FieldElem& b, const FieldElem& c);
  static ProjLine from_ints(const FieldCtx* F, u64 a, u64 b, u64 c);

  FieldElem eval(const ProjPoint& P) const;
  bool contains(const ProjPoint& P) const { return eval(P).is_zero(); }
  bool operator==(const ProjLine& o) const;
  bool operator!=(const ProjLine& o) const { return !(*this == o); }
  std::string str() const;
};

struct PLineLess {
  bool operator()(const ProjLine& a, const ProjLine& b) const;
};

// Invertible 3x3 matrix up to scalars, canonical representative with first
// nonzero entry (row-major) equal to 1.
struct ProjMatrix {
  const FieldCtx* F = nullptr;
  std::array<FieldElem, 9> m;  // row-major

  static ProjMatrix identity(const FieldCtx* F);
  static ProjMatrix make(const FieldCtx* F, const std::array<FieldElem, 9>& entries);
  static ProjMatrix from_ints(const FieldCtx* F, const std::array<u64, 9>& entries);
  static ProjMatrix diagonal(const FieldElem& a, const FieldElem& b, const FieldElem& c);

  FieldElem at(u32 r, u32 c) const { return m[r * 3 + c]; }
  FieldElem det() const;
  ProjMatrix operator*(const ProjMatrix& o) const;
  ProjMatrix inverse() const;
  ProjMatrix transpose() const;
  ProjPoint apply(const ProjPoint& P) const;
  // Image of a line under the point map (multiplies by the inverse on the
  // dual side, so contains() is preserved).
  ProjLine apply_line(const ProjLine& L) const;
  bool is_identity() const;
  bool operator==(const ProjMatrix& o) const;
  bool operator!=(const ProjMatrix& o) const { return !(*this == o); }
  std::string str() const;
};

struct PMatLess {
  bool operator()(const ProjMatrix& a, const ProjMatrix& b) const;
};

ProjLine line_through(const ProjPoint& P, const ProjPoint& Q);
ProjPoint intersect_lines(const ProjLine& L1, const ProjLine& L2);

// All q^2 + q + 1 points / lines of the plane, sorted canonically.
std::vector<ProjPoint> all_points(const FieldCtx* F);
std::vector<ProjLine> all_lines(const FieldCtx* F);
// The q + 1 lines through a point, sorted canonically.
std::vector<ProjLine> lines_through(const ProjPoint& P);

ProjPoint embed_point(const ProjPoint& P, const FieldCtx* target);
ProjLine embed_line(const ProjLine& L, const FieldCtx* target);
ProjMatrix embed_matrix(const ProjMatrix& M, const FieldCtx* target);
// Projective equality across fields of one lattice.
bool same_point(const ProjPoint& a, const ProjPoint& b);

struct GroupCapExceeded : std::runtime_error {
  explicit GroupCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Closure of the generated group (semigroup closure; the group is finite).
// Sorted canonically.  Throws GroupCapExceeded beyond `cap` elements.
std::vector<ProjMatrix> group_closure(const std::vector<ProjMatrix>& gens, u64 cap);

// Orbit of P under a list of maps (typically a full group), sorted.
std::vector<ProjPoint> orbit_of(const std::vector<ProjMatrix>& group, const ProjPoint& P);

// Every non-identity perspectivity with the given center: maps of the form
// I + v * w^T with v the center and w ranging over nonzero covectors with
// 1 + w.v != 0.  There are exactly q^3 - q^2 - 1 of them, enumerated in a
// fixed order.
void for_each_perspectivity(const ProjPoint& center,
                            const std::function<bool(const ProjMatrix&)>& fn);

}  // namespace gplane
