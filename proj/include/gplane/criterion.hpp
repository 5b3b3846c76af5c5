#pragma once
// Joint conditions under which three groups of linear automorphisms of a
// plane curve yield a new plane model whose three projection vertices are
// simultaneous Galois points, plus the model construction itself and an
// independent verification of the result.
//
// Conventions shared by everything in this header:
//   * the three groups and the three distinguished points are indexed 1..3
//     in reports, with group i attached to the i-th entry of the inputs;
//   * all points and matrices must live over the curve's base field; enlarge
//     the base field of the curve first if an example needs bigger scalars;
//   * the plane map is always (f : g : 1) with f attached to group 1 and g
//     to group 2, so the image vertices correspond as
//       (0:1:0) <-> group 1,   (1:0:0) <-> group 2,   (0:0:1) <-> group 3.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gplane/galois.hpp"

namespace gplane {

enum class CheckStatus { pass, fail, unverified };

const char* to_string(CheckStatus s);

// A candidate group of curve automorphisms together with an optional
// generator of the fixed field of its action on the function field.
struct CriterionGroup {
  std::vector<ProjMatrix> elements;         // must contain the identity
  std::optional<LinFormProduct> generator;  // candidate quotient generator
};

// Rational-quotient condition for one group: a supplied generator is run
// through quotient_generator_check; with no generator the condition stays
// unverified rather than being assumed.
struct QuotientCheck {
  CheckStatus status = CheckStatus::unverified;
  std::optional<GeneratorCertificate> certificate;
};

// Pairwise trivial-intersection condition, with the offending elements.
struct IntersectionCheck {
  u32 first = 0, second = 0;       // 1-based group indices
  std::vector<ProjMatrix> shared;  // common non-identity elements
  CheckStatus status = CheckStatus::unverified;
};

// One required identity between two orbit divisors.  For the outer variant
// the entry for point k compares the two orbit sums of point k under the
// remaining two groups.  For the inner variant the entry for the pair (i, j)
// compares point_i + (orbit of point_j under group i) with
// point_j + (orbit of point_i under group j); `point` is then 0.
struct DivisorBalanceCheck {
  u32 left_group = 0, right_group = 0;  // 1-based
  u32 point = 0;                        // transported point, outer variant only
  Divisor left, right;
  CheckStatus status = CheckStatus::unverified;
};

// Orbit-separation condition: under the acting group, the orbits of the two
// other distinguished points must be different point sets.
struct OrbitSeparationCheck {
  u32 group = 0;                      // acting group index
  u32 first_point = 0, second_point = 0;
  std::vector<ProjPoint> first_orbit, second_orbit;  // sorted, deduplicated
  CheckStatus status = CheckStatus::unverified;
};

struct CriterionReport {
  bool inner = false;
  std::array<QuotientCheck, 3> rational_quotients;
  std::array<IntersectionCheck, 3> pairwise_trivial;    // (1,2), (1,3), (2,3)
  std::array<DivisorBalanceCheck, 3> divisor_balance;
  std::array<OrbitSeparationCheck, 3> orbit_separation;  // acting group 1, 2, 3
  // pass only when every condition passes, fail as soon as one fails,
  // unverified otherwise (some condition could not be decided).
  CheckStatus verdict = CheckStatus::unverified;
};

// The inner variant: the three distinguished points lie on the curve and end
// up as the three vertices of the image triangle.  The outer variant: the
// three points are transported onto the sides of the image triangle.
// Both validate their input (groups really are groups of automorphisms of
// the curve, points are distinct and on the curve) and throw
// std::invalid_argument on violations; criterion failures are reported, not
// thrown.
CriterionReport check_inner_criterion(const PlaneCurve& C,
                                      const std::array<CriterionGroup, 3>& groups,
                                      const std::array<ProjPoint, 3>& points);
CriterionReport check_outer_criterion(const PlaneCurve& C,
                                      const std::array<CriterionGroup, 3>& groups,
                                      const std::array<ProjPoint, 3>& points);

struct ModelOptions {
  // Enforce the exact zero/pole prescriptions for f and g (throwing with
  // both divisors quoted) and the placement of the distinguished images.
  // When false, both only land in recorded flags.
  bool check_prescriptions = true;
  bool interpolate = true;
  // Degree of the fitted image curve; defaults to the group order for the
  // outer variant and group order + 1 for the inner variant.
  std::optional<u32> image_degree;
  // Field over which source points are enumerated and mapped; defaults to
  // the curve's base field.
  const FieldCtx* sample_field = nullptr;
};

struct PlaneModel {
  PlaneCurve source;
  bool inner = false;
  std::array<std::vector<ProjMatrix>, 3> groups;
  std::array<ProjPoint, 3> centers;  // the three distinguished source points
  LinFormProduct f, g;               // the map is (f : g : 1)
  u32 expected_degree = 0;

  // Placement of the images of the three distinguished points, decided
  // exactly from valuations of f and g, never by floating evaluation.
  // Outer variant: the image of center i lies on its side of the image
  // triangle (Y = 0, X = 0, Z = 0 in this order).  Inner variant: the image
  // of center i is its vertex of the triangle.
  std::array<bool, 3> incidence{};
  // The exact image points, when the valuations (or a chart evaluation)
  // determine them.
  std::array<std::optional<ProjPoint>, 3> center_images;

  // Image sample over the sample field.
  std::vector<ProjPoint> images;  // distinct, sorted
  u32 samples = 0;                // source points where some chart evaluated
  u32 excluded = 0;               // source points where no chart evaluated
  u32 collisions = 0;             // samples - number of distinct images

  InterpolationResult interpolation;
  std::optional<PlaneCurve> image;  // the fitted plane curve, when unique
};

// Build the plane model (f : g : 1) from the generators attached to groups 1
// and 2 (both required).  Checks the divisor prescriptions, maps every
// enumerated source point by exact chart evaluation, bounds the number of
// image collisions by the worst case coming from singular image points, and
// fits the image curve.  Throws std::logic_error when an enforced check
// fails and std::invalid_argument on malformed input.
PlaneModel build_inner_model(const PlaneCurve& C,
                             const std::array<CriterionGroup, 3>& groups,
                             const std::array<ProjPoint, 3>& points,
                             const ModelOptions& opts = {});
PlaneModel build_outer_model(const PlaneCurve& C,
                             const std::array<CriterionGroup, 3>& groups,
                             const std::array<ProjPoint, 3>& points,
                             const ModelOptions& opts = {});

struct ModelVerification {
  // Vertex i of the image triangle checked against group i: the vertex must
  // be a Galois point of the fitted curve, on the expected side of it
  // (on the curve for the inner variant, off it for the outer one), with
  // Galois group of order equal to the source group.  Two routes can certify
  // this.  The perspectivity search on the fitted curve finds the deck group
  // directly when it acts by linear maps (linear_action[i] set, report
  // filled).  When it does not -- which happens for singular models of high
  // degree, where the functions moved by the deck action live in a Riemann-
  // Roch space bigger than the span of the coordinates -- an exact function-
  // field certificate is used instead: strictly more than degree^2 distinct
  // sampled images identify the fitted curve with the image (two distinct
  // curves of that degree cannot share that many points); the vertex lies on
  // the prescribed side; and the attached coordinate (f, g, or g/f) is
  // invariant under group i with pole degree equal to the group order, which
  // makes the map birational onto the image and the projection from the
  // vertex a Galois covering with exactly that group.  Reports are absent
  // when no image curve was fitted.
  std::array<std::optional<GaloisPointReport>, 3> vertex_reports;
  std::array<bool, 3> linear_action{false, false, false};
  std::array<std::optional<GeneratorCertificate>, 3> vertex_certificates;
  std::array<CheckStatus, 3> vertex_galois{CheckStatus::unverified,
                                           CheckStatus::unverified,
                                           CheckStatus::unverified};
  // Source-side invariance: f under group 1 and g under group 2 (exact
  // divisor and value invariance via quotient_generator_check), g/f under
  // group 3 (divisor invariance).
  std::array<CheckStatus, 3> source_invariance{CheckStatus::unverified,
                                               CheckStatus::unverified,
                                               CheckStatus::unverified};
  // Placement of the distinguished images: exact vertex equality for the
  // inner variant, the three side incidences for the outer one.
  std::array<CheckStatus, 3> placement{CheckStatus::unverified,
                                       CheckStatus::unverified,
                                       CheckStatus::unverified};
  CheckStatus degree = CheckStatus::unverified;  // fitted degree as predicted
  CheckStatus status = CheckStatus::unverified;
  std::string detail;  // first failure, empty when everything passes
};

ModelVerification verify_model_galois(const PlaneModel& model);

// First group element found carrying a point of the three chords off them.
struct OrbitEscape {
  ProjPoint from;
  ProjMatrix map;
  ProjPoint to;
};

struct OrbitConditionReport {
  // Hypothesis: the three centers are distinct, not collinear, and each is
  // an outer Galois point of the curve.  When it fails the orbit condition
  // itself is not evaluated.
  bool hypothesis = false;
  std::string hypothesis_detail;
  std::vector<GaloisPointReport> centers;

  u64 chord_points = 0;  // curve points on the three chords, over splitting fields
  bool holds = false;
  std::optional<OrbitEscape> escape;

  // Filled in when the condition holds.
  u64 group_order = 0;      // order of the group generated by the three groups
  bool group_capped = false;  // closure exceeded the cap, order unknown
  bool diagonal_frame = false;  // every group element diagonal in the center frame
  bool groups_cyclic = false;   // each of the three deck groups is cyclic
};

// Decide whether every curve point on one of the three chords through the
// centers has its whole orbit (under the group generated by the three deck
// groups) inside those chords.  Points on the chords are collected over the
// exact splitting fields of the chord cuts.
OrbitConditionReport orbit_condition(const PlaneCurve& C,
                                     const std::array<ProjPoint, 3>& centers,
                                     u64 group_cap = 1ull << 12);

// The same condition for the image of an outer plane model, with the three
// coordinate vertices of the image triangle as centers.  The deck groups at
// the vertices need not act by linear maps on the image, so the condition is
// evaluated upstairs on the smooth source, where they do: the curve points
// on the three chords are exactly the images of the zero and pole supports
// of f and g (a coordinate of (f : g : 1) vanishes where the corresponding
// function does), and an orbit stays on the chords precisely when the source
// groups keep that support set stable.  The chord cut of the fitted image
// and the support transport are cross-checked point by point before the
// orbit scan; any mismatch throws instead of producing a verdict.  The
// hypothesis is taken from the supplied verification: every vertex must be
// certified Galois (by either route).  In a returned escape witness, `from`
// and `to` are source points; `from` maps onto a chord, `to` off all of
// them.
OrbitConditionReport orbit_condition(const PlaneModel& model,
                                     const ModelVerification& verification,
                                     u64 group_cap = 1ull << 12);

}  // namespace gplane
