#pragma once
// Scenario builder for the family of Hermitian-curve examples.
//
// The curve is X^q Z + X Z^q = Y^(q+1) over GF(q^2).  For every nonzero a in
// GF(q^2) the diagonal map  A_a = diag(a^(q+1), a, 1)  preserves the curve,
// and for each divisor s of q - 1 (write m = (q - 1) / s) the closure of
// A_(gamma^m), gamma a generator of GF(q^2)*, is a cyclic group of order
// n = s (q + 1).  That group fixes the two distinguished points
// (1 : 0 : 0) and (0 : 0 : 1), and the ratio (X/Z)^s generates its quotient
// function field, with divisor n ((0:0:1) - (1:0:0)).
//
// The builder picks a third rational point off the line Y = 0 (so that the
// three points are never collinear), conjugates the diagonal group by curve
// automorphisms that transport one of the two fixed points onto the third
// point, and transports the quotient generators the same way.  The three
// resulting groups and points satisfy the outer existence criterion, and the
// map assembled from the transported generators has a plane image of degree
// n on which all three fundamental vertices are outer Galois points.
//
// The whole construction is exact: the transported generators are invariant
// under their groups identically (the tracked scalar is a (q^2 - 1)-th power
// of a field unit), not merely at sampled points.

#include <array>

#include "gplane/criterion.hpp"

namespace gplane {

// Derived parameters of one scenario.  q = p^e is a prime power, s divides
// q - 1, m = (q - 1) / s, and d = s (q + 1) is both the order of each of the
// three groups and the degree of the plane image.
struct ScenarioParams {
  u64 p = 0;
  u64 q = 0;
  u64 s = 0;
  u64 m = 0;
  u64 d = 0;
  u64 seed = 0;
};

// Verifies, for every nonzero a in GF(q^2), that the s-th power of the raw
// matrix diag((a^m)^(q+1), a^m, 1) equals diag(1, a^(q-1), 1) entry by entry.
// The powers are computed by repeated 3x3 matrix multiplication, so the check
// exercises the actual arithmetic rather than restating exponent identities.
// This is the identity that makes the group order and the quotient generator
// work out; it is rechecked at runtime by every scenario build.
bool hermitian_power_identity(u64 q, u64 s);

struct HermitianScenario {
  ScenarioParams params;
  PlaneCurve curve;  // Hermitian curve over GF(q^2)
  // points[0] = (1:0:0), points[1] = (0:0:1), points[2] = the seeded third
  // rational point with nonzero Y coordinate.
  std::array<ProjPoint, 3> points;
  // Group i fixes the two points other than points[i]; groups[0] and
  // groups[1] carry the transported quotient generators used as the two map
  // coordinates, groups[2] carries (X/Z)^s.
  std::array<CriterionGroup, 3> groups;
  ProjMatrix conjugator_g1;  // fixes points[1], carries points[0] to points[2]
  ProjMatrix conjugator_g2;  // fixes points[0], carries points[1] to points[2]
  bool power_identity = false;
  // Smallest extension of GF(q^2) whose curve points give strictly more than
  // d^2 distinct images (so the degree-d fit is overdetermined).
  const FieldCtx* sample_field = nullptr;
  CriterionReport criterion;  // outer criterion report; always a pass
  PlaneModel model;
  ModelVerification verification;
};

// Builds the full scenario for the given parameters.  The seed selects the
// third point among the rational points off Y = 0 (deterministically).
// ext_bound caps the extension search for the sample field, measured in
// multiples of the base degree of GF(q^2).
//
// Throws std::invalid_argument for malformed parameters (q not a prime power,
// s = 0, s not dividing q - 1) and std::logic_error if any internal
// consistency requirement fails (no transporting automorphism, wrong group
// order, failed power identity, criterion not passing, no workable sample
// field within ext_bound).
HermitianScenario hermitian_scenario(u64 q, u64 s, u64 seed = 0,
                                     u32 ext_bound = 4);

}  // namespace gplane
