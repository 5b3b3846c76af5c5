#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gplane/divisor.hpp"
#include "gplane/linform.hpp"

namespace gplane {

// All plane collineations over the curve's base field that fix every line
// through P and map the curve to itself (the linear deck transformations of
// the projection from P).  Includes the identity; sorted canonically.  The
// result is automatically closed under composition: products of central
// collineations with a common center share that center.
std::vector<ProjMatrix> decomposition_group(const PlaneCurve& C, const ProjPoint& P);

enum class PointKind { inner, outer };

// Scaling character of a group of homologies with a common center and a
// common axis: in the frame (center, two axis points) every element is
// diag(a, 1, 1), and gamma -> a(gamma) is an injective homomorphism into
// the multiplicative group.  Extraction succeeds only when the group is
// simultaneously diagonalizable this way (no unipotent elements, one shared
// axis); otherwise nothing is reported.
struct CharacterTable {
  ProjLine axis;
  std::vector<std::pair<ProjMatrix, FieldElem>> values;  // element, a(element)
};

// Extracts the table for a group of perspectivities with the given center;
// empty result when the group is trivial, contains an elation, mixes axes,
// or the field is too large to search for the axis eigenvalue.
std::optional<CharacterTable> perspectivity_character(
    const std::vector<ProjMatrix>& group, const ProjPoint& center);

struct GaloisPointReport {
  ProjPoint point;
  PointKind kind = PointKind::outer;
  u32 multiplicity = 0;       // of the point on the curve (0 or 1)
  u32 projection_degree = 0;  // deg C minus that multiplicity
  std::vector<ProjMatrix> group;
  // True when the linear deck group is as large as the projection degree,
  // which proves the projection is a Galois covering.  False means "not
  // Galois by linear maps"; for curves of degree at least four every
  // automorphism is linear, so false then means not Galois outright.
  bool galois = false;
  // Observed on every smooth example; recorded rather than assumed, so a
  // violation surfaces in reports instead of being silently dropped.
  bool order_divides_degree = true;
  std::optional<CharacterTable> character;
};

// Classify the projection from a base-rational point P.  The projection
// center must be off the curve or a smooth point of it: singular centers
// are rejected (the inner/outer classification excludes them).
GaloisPointReport is_galois_point(const PlaneCurve& C, const ProjPoint& P);

struct ScanResult {
  u32 total_points = 0;      // candidates examined
  u32 on_curve = 0;          // how many of them lie on the curve
  u32 skipped_singular = 0;  // singular centers: no report produced
  u32 inner_galois = 0;
  u32 outer_galois = 0;
  std::vector<GaloisPointReport> reports;  // one per non-skipped candidate
};

// Census over all points of the base-field plane, or an explicit candidate
// list (base-rational points); deterministic order.
ScanResult scan_galois_points(const PlaneCurve& C);
ScanResult scan_galois_points(const PlaneCurve& C, const std::vector<ProjPoint>& candidates);

// The fiber divisor of the projection from `center` over the pencil line L
// (which must pass through the center): the line cut minus the base-locus
// contribution mult_center(C) * [center].  Its degree is the projection
// degree, for every L.
Divisor projection_fiber(const PlaneCurve& C, const ProjPoint& center, const ProjLine& L);

// sum over the group of [sigma(P)] as a divisor (coincident images merge
// into multiplicities), and the plain orbit set.
Divisor group_image_divisor(const std::vector<ProjMatrix>& group, const ProjPoint& P);
std::vector<ProjPoint> orbit_points(const std::vector<ProjMatrix>& group, const ProjPoint& P);

// All curve automorphisms (linear, over the base field) mapping src1 to dst1
// and src2 to dst2; src1 and src2 must be distinct.  Enumerated by column
// parametrization, deterministic order.
std::vector<ProjMatrix> automorphisms_mapping(const PlaneCurve& C,
                                              const ProjPoint& src1,
                                              const ProjPoint& dst1,
                                              const ProjPoint& src2,
                                              const ProjPoint& dst2);

// Certificate that f generates the fixed field of the group: f must be
// invariant (equal image divisor and matching value at a safe point) with
// pole degree equal to the group order.  A nonconstant invariant function
// of pole degree |G| has [k(X):k(f)] = |G| = [k(X):k(X)^G], so k(f) is the
// whole fixed field and the quotient curve is rational.
struct GeneratorCertificate {
  enum class Status { verified, failed, unverified };
  Status status = Status::unverified;
  u64 pole_degree = 0;
  u64 group_order = 0;
  std::string detail;
};

GeneratorCertificate quotient_generator_check(const PlaneCurve& C,
                                              const std::vector<ProjMatrix>& group,
                                              const LinFormProduct& f,
                                              const std::vector<ProjPoint>& safe_pool);
// Convenience overload: safe points drawn from the base-rational curve points.
GeneratorCertificate quotient_generator_check(const PlaneCurve& C,
                                              const std::vector<ProjMatrix>& group,
                                              const LinFormProduct& f);

}  // namespace gplane
