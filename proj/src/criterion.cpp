#include "gplane/criterion.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>

#include "gplane/check.hpp"

namespace gplane {
namespace {

bool preserves_curve(const PlaneCurve& C, const ProjMatrix& M) {
  return proportional(C.F.compose(M), C.F);
}

void validate_point(const PlaneCurve& C, const ProjPoint& P, const char* role) {
  require(P.F == C.k, std::string(role) + " must be given over the curve's base field");
  require(C.contains(P), std::string(role) + " must lie on the curve");
}

void validate_group(const PlaneCurve& C, const std::vector<ProjMatrix>& G, u32 index) {
  std::string tag = "group " + std::to_string(index);
  require(!G.empty(), tag + " is empty");
  std::set<ProjMatrix, PMatLess> set;
  bool has_identity = false;
  for (const ProjMatrix& M : G) {
    require(M.F == C.k, tag + " has an element over a different field than the curve");
    require(set.insert(M).second, tag + " lists an element twice");
    require(preserves_curve(C, M), tag + " has an element that does not preserve the curve");
    if (M.is_identity()) has_identity = true;
  }
  require(has_identity, tag + " does not contain the identity");
  for (const ProjMatrix& A : G)
    for (const ProjMatrix& B : G)
      require(set.count(A * B) != 0, tag + " is not closed under composition");
}

void validate_inputs(const PlaneCurve& C, const std::array<CriterionGroup, 3>& groups,
                     const std::array<ProjPoint, 3>& points) {
  for (u32 i = 0; i < 3; ++i) validate_group(C, groups[i].elements, i + 1);
  for (u32 i = 0; i < 3; ++i)
    validate_point(C, points[i], ("distinguished point " + std::to_string(i + 1)).c_str());
  for (u32 i = 0; i < 3; ++i)
    for (u32 j = i + 1; j < 3; ++j)
      require(points[i] != points[j], "the distinguished points must be pairwise distinct");
}

CheckStatus certificate_status(GeneratorCertificate::Status s) {
  switch (s) {
    case GeneratorCertificate::Status::verified: return CheckStatus::pass;
    case GeneratorCertificate::Status::failed: return CheckStatus::fail;
    default: return CheckStatus::unverified;
  }
}

// Equality of sorted canonical point lists, safe across splitting fields.
bool same_point_list(const std::vector<ProjPoint>& A, const std::vector<ProjPoint>& B) {
  if (A.size() != B.size()) return false;
  for (size_t i = 0; i < A.size(); ++i)
    if (A[i].F != B[i].F || !(A[i] == B[i])) return false;
  return true;
}

CheckStatus fold(std::initializer_list<CheckStatus> statuses) {
  CheckStatus acc = CheckStatus::pass;
  for (CheckStatus s : statuses) {
    if (s == CheckStatus::fail) return CheckStatus::fail;
    if (s == CheckStatus::unverified) acc = CheckStatus::unverified;
  }
  return acc;
}

CriterionReport check_criterion(const PlaneCurve& C,
                                const std::array<CriterionGroup, 3>& groups,
                                const std::array<ProjPoint, 3>& points, bool inner) {
  validate_inputs(C, groups, points);
  CriterionReport rep;
  rep.inner = inner;

  for (u32 i = 0; i < 3; ++i) {
    QuotientCheck& q = rep.rational_quotients[i];
    if (groups[i].generator) {
      q.certificate = quotient_generator_check(C, groups[i].elements, *groups[i].generator);
      q.status = certificate_status(q.certificate->status);
    }
  }

  constexpr u32 pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (u32 n = 0; n < 3; ++n) {
    const u32 i = pairs[n][0], j = pairs[n][1];
    IntersectionCheck& inter = rep.pairwise_trivial[n];
    inter.first = i + 1;
    inter.second = j + 1;
    std::set<ProjMatrix, PMatLess> left(groups[i].elements.begin(), groups[i].elements.end());
    for (const ProjMatrix& M : groups[j].elements)
      if (!M.is_identity() && left.count(M)) inter.shared.push_back(M);
    inter.status = inter.shared.empty() ? CheckStatus::pass : CheckStatus::fail;
  }

  for (u32 n = 0; n < 3; ++n) {
    DivisorBalanceCheck& bal = rep.divisor_balance[n];
    if (inner) {
      // For the pair (i, j): point_i + orbit_i(point_j) == point_j + orbit_j(point_i).
      const u32 i = pairs[n][0], j = pairs[n][1];
      bal.left_group = i + 1;
      bal.right_group = j + 1;
      bal.left = Divisor::single(points[i]) + group_image_divisor(groups[i].elements, points[j]);
      bal.right = Divisor::single(points[j]) + group_image_divisor(groups[j].elements, points[i]);
    } else {
      // For the point k: its orbit sums under the two other groups agree.
      const u32 k = 2 - n, i = pairs[n][0], j = pairs[n][1];
      bal.left_group = i + 1;
      bal.right_group = j + 1;
      bal.point = k + 1;
      bal.left = group_image_divisor(groups[i].elements, points[k]);
      bal.right = group_image_divisor(groups[j].elements, points[k]);
    }
    bal.status = bal.left == bal.right ? CheckStatus::pass : CheckStatus::fail;
  }

  for (u32 i = 0; i < 3; ++i) {
    OrbitSeparationCheck& sep = rep.orbit_separation[i];
    const u32 j = (i == 0) ? 1 : 0;
    const u32 k = (i == 2) ? 1 : 2;
    sep.group = i + 1;
    sep.first_point = j + 1;
    sep.second_point = k + 1;
    sep.first_orbit = orbit_points(groups[i].elements, points[j]);
    sep.second_orbit = orbit_points(groups[i].elements, points[k]);
    sep.status =
        same_point_list(sep.first_orbit, sep.second_orbit) ? CheckStatus::fail : CheckStatus::pass;
  }

  rep.verdict = fold({rep.rational_quotients[0].status, rep.rational_quotients[1].status,
                      rep.rational_quotients[2].status, rep.pairwise_trivial[0].status,
                      rep.pairwise_trivial[1].status, rep.pairwise_trivial[2].status,
                      rep.divisor_balance[0].status, rep.divisor_balance[1].status,
                      rep.divisor_balance[2].status, rep.orbit_separation[0].status,
                      rep.orbit_separation[1].status, rep.orbit_separation[2].status});
  return rep;
}

bool value_usable(const LinValue& v) {
  return v.kind == LinValue::Kind::finite || v.kind == LinValue::Kind::zero;
}

// Exact evaluation of (f : g : 1) at P through the three affine charts of the
// image plane; empty when every chart hits a formally indeterminate form.
std::optional<ProjPoint> chart_eval(const LinFormProduct& f, const LinFormProduct& g,
                                    const ProjPoint& P) {
  const LinValue vf = f.value_at(P);
  const LinValue vg = g.value_at(P);
  if (value_usable(vf) && value_usable(vg))
    return ProjPoint::make(vf.value, vg.value, vf.value.field()->one());
  {
    // Chart X = 1: (1 : g/f : 1/f).
    const LinValue r = (g * f.inverse()).value_at(P);
    const LinValue s = f.inverse().value_at(P);
    if (value_usable(r) && value_usable(s))
      return ProjPoint::make(r.value.field()->one(), r.value, s.value);
  }
  {
    // Chart Y = 1: (f/g : 1 : 1/g).
    const LinValue r = (f * g.inverse()).value_at(P);
    const LinValue s = g.inverse().value_at(P);
    if (value_usable(r) && value_usable(s))
      return ProjPoint::make(r.value, r.value.field()->one(), s.value);
  }
  return std::nullopt;
}

ProjPoint image_vertex(const FieldCtx* F, u32 index) {
  // Vertex attached to group 1, 2, 3 in this order.
  switch (index) {
    case 0: return ProjPoint::from_ints(F, 0, 1, 0);
    case 1: return ProjPoint::from_ints(F, 1, 0, 0);
    default: return ProjPoint::from_ints(F, 0, 0, 1);
  }
}

PlaneModel build_model(const PlaneCurve& C, const std::array<CriterionGroup, 3>& groups,
                       const std::array<ProjPoint, 3>& points, bool inner,
                       const ModelOptions& opts) {
  validate_inputs(C, groups, points);
  require(groups[0].generator && groups[1].generator,
          "the model construction needs generators for groups 1 and 2");

  const size_t n = groups[0].elements.size();
  require(groups[1].elements.size() == n && groups[2].elements.size() == n,
          "the three groups must share one order");

  PlaneModel model{C, inner, {groups[0].elements, groups[1].elements, groups[2].elements},
                   points, *groups[0].generator, *groups[1].generator};
  require(model.f.field() == C.k && model.g.field() == C.k,
          "the generators must be defined over the curve's base field");
  model.expected_degree = opts.image_degree.value_or(static_cast<u32>(inner ? n + 1 : n));

  const Divisor div_f = model.f.divisor_on(C);
  const Divisor div_g = model.g.divisor_on(C);
  const Divisor presc_f =
      inner ? group_image_divisor(groups[0].elements, points[2]) -
                  group_image_divisor(groups[0].elements, points[1])
            : group_image_divisor(groups[0].elements, points[1]) -
                  group_image_divisor(groups[0].elements, points[2]);
  const Divisor presc_g =
      inner ? group_image_divisor(groups[1].elements, points[2]) -
                  group_image_divisor(groups[1].elements, points[0])
            : group_image_divisor(groups[1].elements, points[0]) -
                  group_image_divisor(groups[1].elements, points[2]);
  if (opts.check_prescriptions) {
    if (!(div_f == presc_f))
      fail("the supplied f cuts the divisor " + div_f.str() +
           " but the construction prescribes " + presc_f.str());
    if (!(div_g == presc_g))
      fail("the supplied g cuts the divisor " + div_g.str() +
           " but the construction prescribes " + presc_g.str());
  }

  // Place the images of the distinguished points from valuations alone: the
  // coordinates of (f : g : 1) with valuation above the minimum vanish.
  for (u32 i = 0; i < 3; ++i) {
    const i64 vf = div_f.mult_of(points[i]);
    const i64 vg = div_g.mult_of(points[i]);
    const i64 mu = std::min({vf, vg, i64{0}});
    const bool at_f = vf == mu, at_g = vg == mu, at_z = mu == 0;
    if (inner) {
      // The center must land on its vertex: the attached image coordinate is
      // the unique one of minimal valuation.
      const bool unique = (at_f + at_g + at_z) == 1;
      model.incidence[i] = unique && (i == 0 ? at_g : i == 1 ? at_f : at_z);
    } else {
      // The center must land on its side line: the attached image coordinate
      // vanishes against the others.
      model.incidence[i] = (i == 0) ? vg > mu : (i == 1) ? vf > mu : mu < 0;
    }
    if (at_f + at_g + at_z == 1) {
      const u32 coord = at_f ? 1u : at_g ? 0u : 2u;
      model.center_images[i] = image_vertex(C.k, coord);
    } else {
      model.center_images[i] = chart_eval(model.f, model.g, points[i]);
    }
    if (opts.check_prescriptions && !model.incidence[i])
      fail("the image of distinguished point " + std::to_string(i + 1) +
           " misses its prescribed image line");
    if (inner && opts.check_prescriptions &&
        !(model.center_images[i] && *model.center_images[i] == image_vertex(C.k, i)))
      fail("the image of distinguished point " + std::to_string(i + 1) +
           " is not the prescribed vertex");
  }

  // Map the sampled source points and collect the distinct images.
  const FieldCtx* sample_field = opts.sample_field ? opts.sample_field : C.k;
  std::map<ProjPoint, ProjPoint, PPointLess> first_source;
  std::vector<std::string> collision_examples;
  for (const ProjPoint& P : C.points_over(sample_field)) {
    const std::optional<ProjPoint> img = chart_eval(model.f, model.g, P);
    if (!img) {
      ++model.excluded;
      continue;
    }
    ++model.samples;
    auto [it, fresh] = first_source.emplace(*img, P);
    if (!fresh) {
      ++model.collisions;
      if (collision_examples.size() < 3)
        collision_examples.push_back(it->second.str() + " and " + P.str() + " both map to " +
                                     img->str());
    }
  }
  // Distinct source points may share an image only over a singular image
  // point; the number of such coincidences is bounded by the arithmetic
  // genus of a plane curve of the expected degree.
  const u64 d = model.expected_degree;
  const u64 allowance = d >= 2 ? (d - 1) * (d - 2) / 2 : 0;
  if (model.collisions > allowance) {
    std::string msg = "the map identifies " + std::to_string(model.collisions) +
                      " sampled point pairs but at most " + std::to_string(allowance) +
                      " can come from singular image points";
    for (const std::string& ex : collision_examples) msg += "; " + ex;
    fail(msg);
  }
  model.images.reserve(first_source.size());
  for (const auto& [img, src] : first_source) model.images.push_back(img);

  if (opts.interpolate) {
    model.interpolation = interpolate_curve(C.k, model.expected_degree, model.images);
    if (model.interpolation.status == InterpolationResult::Status::unique &&
        model.interpolation.squarefree) {
      const HomPoly& h = model.interpolation.descended ? *model.interpolation.over_base
                                                       : *model.interpolation.raw;
      model.image = PlaneCurve::from_poly(h);
    }
  }
  return model;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "unverified";
  }
}

CriterionReport check_inner_criterion(const PlaneCurve& C,
                                      const std::array<CriterionGroup, 3>& groups,
                                      const std::array<ProjPoint, 3>& points) {
  return check_criterion(C, groups, points, /*inner=*/true);
}

CriterionReport check_outer_criterion(const PlaneCurve& C,
                                      const std::array<CriterionGroup, 3>& groups,
                                      const std::array<ProjPoint, 3>& points) {
  return check_criterion(C, groups, points, /*inner=*/false);
}

PlaneModel build_inner_model(const PlaneCurve& C, const std::array<CriterionGroup, 3>& groups,
                             const std::array<ProjPoint, 3>& points, const ModelOptions& opts) {
  return build_model(C, groups, points, /*inner=*/true, opts);
}

PlaneModel build_outer_model(const PlaneCurve& C, const std::array<CriterionGroup, 3>& groups,
                             const std::array<ProjPoint, 3>& points, const ModelOptions& opts) {
  return build_model(C, groups, points, /*inner=*/false, opts);
}

ModelVerification verify_model_galois(const PlaneModel& model) {
  ModelVerification v;
  const size_t n = model.groups[0].size();
  auto note = [&v](const std::string& what) {
    if (v.detail.empty()) v.detail = what;
  };

  if (model.image) {
    v.degree = model.image->degree == model.expected_degree ? CheckStatus::pass
                                                            : CheckStatus::fail;
    if (v.degree == CheckStatus::fail) note("the fitted curve has the wrong degree");
    const PointKind expected = model.inner ? PointKind::inner : PointKind::outer;
    for (u32 i = 0; i < 3; ++i) {
      const ProjPoint vertex = image_vertex(model.image->k, i);
      bool linear_ok = false;
      try {
        GaloisPointReport rep = is_galois_point(*model.image, vertex);
        linear_ok = rep.galois && rep.kind == expected && rep.group.size() == n;
        v.vertex_reports[i] = std::move(rep);
      } catch (const std::invalid_argument&) {
        // On-curve singular vertex: no perspectivity route; the function-
        // field route below rejects it through the multiplicity check.
      }
      if (linear_ok) {
        v.linear_action[i] = true;
        v.vertex_galois[i] = CheckStatus::pass;
        continue;
      }

      // Function-field route (see the header comment on ModelVerification).
      const u64 deg = model.expected_degree;
      if (model.images.size() <= deg * deg) {
        v.vertex_galois[i] = CheckStatus::unverified;
        note("vertex " + std::to_string(i + 1) +
             " has no linear deck group, and the sample is too small to "
             "identify the fitted curve with the image");
        continue;
      }
      const u32 want_mult = model.inner ? 1 : 0;
      if (model.image->multiplicity_at(vertex) != want_mult) {
        v.vertex_galois[i] = CheckStatus::fail;
        note("vertex " + std::to_string(i + 1) +
             (model.inner ? " is not a smooth point of the fitted curve"
                          : " lies on the fitted curve"));
        continue;
      }
      const LinFormProduct gen = i == 0   ? model.f
                                 : i == 1 ? model.g
                                          : model.g * model.f.inverse();
      GeneratorCertificate cert =
          quotient_generator_check(model.source, model.groups[i], gen);
      const CheckStatus cs = certificate_status(cert.status);
      const std::string cert_detail = cert.detail;
      v.vertex_certificates[i] = std::move(cert);
      v.vertex_galois[i] = cs;
      if (cs != CheckStatus::pass)
        note("vertex " + std::to_string(i + 1) +
             " has no linear deck group and the function-field certificate "
             "did not verify: " + cert_detail);
    }
  } else {
    note("no image curve was fitted");
  }

  for (u32 i = 0; i < 2; ++i) {
    const LinFormProduct& gen = i == 0 ? model.f : model.g;
    const GeneratorCertificate cert =
        quotient_generator_check(model.source, model.groups[i], gen);
    v.source_invariance[i] = certificate_status(cert.status);
    if (v.source_invariance[i] != CheckStatus::pass)
      note("the generator for group " + std::to_string(i + 1) +
           " is not certified invariant: " + cert.detail);
  }
  {
    const LinFormProduct ratio = model.g * model.f.inverse();
    const Divisor D = ratio.divisor_on(model.source);
    v.source_invariance[2] = CheckStatus::pass;
    for (const ProjMatrix& M : model.groups[2]) {
      if (!(pushforward(D, M) == D)) {
        v.source_invariance[2] = CheckStatus::fail;
        note("the divisor of g/f moves under group 3");
        break;
      }
    }
  }

  for (u32 i = 0; i < 3; ++i) {
    if (model.inner) {
      if (!model.center_images[i]) {
        v.placement[i] = CheckStatus::unverified;
        note("the image of distinguished point " + std::to_string(i + 1) +
             " could not be evaluated");
      } else {
        const bool ok = *model.center_images[i] == image_vertex(model.source.k, i);
        v.placement[i] = ok ? CheckStatus::pass : CheckStatus::fail;
        if (!ok)
          note("distinguished point " + std::to_string(i + 1) +
               " does not map to its vertex");
      }
    } else {
      v.placement[i] = model.incidence[i] ? CheckStatus::pass : CheckStatus::fail;
      if (!model.incidence[i])
        note("the image of distinguished point " + std::to_string(i + 1) +
             " misses its image line");
    }
  }

  v.status = fold({v.degree, v.vertex_galois[0], v.vertex_galois[1], v.vertex_galois[2],
                   v.source_invariance[0], v.source_invariance[1], v.source_invariance[2],
                   v.placement[0], v.placement[1], v.placement[2]});
  return v;
}

OrbitConditionReport orbit_condition(const PlaneCurve& C,
                                     const std::array<ProjPoint, 3>& centers, u64 group_cap) {
  OrbitConditionReport rep;
  for (u32 i = 0; i < 3; ++i)
    require(centers[i].F == C.k, "centers must be given over the curve's base field");

  for (u32 i = 0; i < 3; ++i)
    for (u32 j = i + 1; j < 3; ++j)
      if (centers[i] == centers[j]) {
        rep.hypothesis_detail = "the centers are not pairwise distinct";
        return rep;
      }
  if (line_through(centers[0], centers[1]).contains(centers[2])) {
    rep.hypothesis_detail = "the centers are collinear";
    return rep;
  }
  for (u32 i = 0; i < 3; ++i) {
    try {
      rep.centers.push_back(is_galois_point(C, centers[i]));
    } catch (const std::invalid_argument&) {
      rep.hypothesis_detail =
          "center " + std::to_string(i + 1) + " is a singular point of the curve";
      return rep;
    }
    const GaloisPointReport& r = rep.centers.back();
    if (!r.galois || r.kind != PointKind::outer) {
      rep.hypothesis_detail =
          "center " + std::to_string(i + 1) + " is not an outer Galois point";
      return rep;
    }
  }
  rep.hypothesis = true;

  // Curve points on the three chords, over the exact splitting fields.
  std::set<ProjPoint, CanonPointLess> chords;
  for (u32 i = 0; i < 3; ++i)
    for (u32 j = i + 1; j < 3; ++j) {
      const Divisor cut = line_intersection_divisor(C, line_through(centers[i], centers[j]));
      for (const auto& [P, m] : cut.entries()) chords.insert(P);
    }
  rep.chord_points = chords.size();

  std::set<ProjMatrix, PMatLess> acting;
  for (const GaloisPointReport& r : rep.centers)
    acting.insert(r.group.begin(), r.group.end());

  for (const ProjPoint& Q : chords) {
    for (const ProjMatrix& M : acting) {
      const ProjPoint img = orbit_points({M}, Q).front();
      if (!chords.count(img)) {
        rep.escape = OrbitEscape{Q, M, img};
        return rep;
      }
    }
  }
  rep.holds = true;

  const std::vector<ProjMatrix> gens(acting.begin(), acting.end());
  try {
    rep.group_order = group_closure(gens, group_cap).size();
  } catch (const GroupCapExceeded&) {
    rep.group_capped = true;
  }

  // Frame of the three centers: column c of T is center c.
  std::array<FieldElem, 9> entries;
  for (u32 r = 0; r < 3; ++r)
    for (u32 c = 0; c < 3; ++c) entries[r * 3 + c] = centers[c].v[r];
  const ProjMatrix T = ProjMatrix::make(C.k, entries);
  const ProjMatrix Ti = T.inverse();
  rep.diagonal_frame = true;
  for (const ProjMatrix& M : acting) {
    const ProjMatrix D = Ti * M * T;
    for (u32 r = 0; r < 3 && rep.diagonal_frame; ++r)
      for (u32 c = 0; c < 3; ++c)
        if (r != c && !D.at(r, c).is_zero()) {
          rep.diagonal_frame = false;
          break;
        }
  }

  rep.groups_cyclic = true;
  for (const GaloisPointReport& r : rep.centers) {
    bool cyclic = false;
    for (const ProjMatrix& g : r.group)
      if (group_closure({g}, r.group.size()).size() == r.group.size()) {
        cyclic = true;
        break;
      }
    rep.groups_cyclic = rep.groups_cyclic && cyclic;
  }
  return rep;
}

namespace {

// Exact image of a source point under (f : g : 1), switching to a ratio
// chart at poles.  Chart indeterminacy (a zero and a pole form meeting at
// the point) is refused rather than resolved.
ProjPoint model_image_of(const PlaneModel& model, const ProjPoint& P) {
  using Kind = LinValue::Kind;
  const auto finite = [](const LinValue& v) {
    return v.kind == Kind::finite || v.kind == Kind::zero;
  };
  const LinValue u = model.f.value_at(P);
  const LinValue v = model.g.value_at(P);
  if (finite(u) && finite(v)) {
    const FieldCtx* E = u.value.field();
    return ProjPoint::make(u.value, v.value, E->one());
  }
  if (u.kind == Kind::pole) {
    const LinValue r = (model.g * model.f.inverse()).value_at(P);
    const LinValue w = model.f.inverse().value_at(P);
    if (finite(r) && finite(w)) {
      const FieldCtx* E = r.value.field();
      return ProjPoint::make(E->one(), r.value, w.value);
    }
  }
  if (v.kind == Kind::pole) {
    const LinValue r = (model.f * model.g.inverse()).value_at(P);
    const LinValue w = model.g.inverse().value_at(P);
    if (finite(r) && finite(w)) {
      const FieldCtx* E = r.value.field();
      return ProjPoint::make(r.value, E->one(), w.value);
    }
  }
  fail("no chart of the model map evaluates at " + P.str());
}

bool point_in(const std::vector<ProjPoint>& set, const ProjPoint& P) {
  for (const ProjPoint& Q : set)
    if (same_point(Q, P)) return true;
  return false;
}

void add_point(std::vector<ProjPoint>& set, const ProjPoint& P) {
  if (!point_in(set, P)) set.push_back(P);
}

}  // namespace

OrbitConditionReport orbit_condition(const PlaneModel& model,
                                     const ModelVerification& verification,
                                     u64 group_cap) {
  require(!model.inner,
          "the orbit condition applies to the outer model variant");
  OrbitConditionReport rep;
  for (u32 i = 0; i < 3; ++i)
    if (verification.vertex_reports[i])
      rep.centers.push_back(*verification.vertex_reports[i]);

  if (!model.image) {
    rep.hypothesis_detail = "no image curve was fitted";
    return rep;
  }
  for (u32 i = 0; i < 3; ++i)
    if (verification.vertex_galois[i] != CheckStatus::pass) {
      rep.hypothesis_detail = "vertex " + std::to_string(i + 1) +
                              " of the image triangle is not certified Galois";
      return rep;
    }
  rep.hypothesis = true;
  std::string linear, certified;
  for (u32 i = 0; i < 3; ++i)
    (verification.linear_action[i] ? linear : certified) +=
        " " + std::to_string(i + 1);
  rep.hypothesis_detail = "vertices certified through the source model:";
  if (!linear.empty())
    rep.hypothesis_detail += " linear perspectivities at" + linear;
  if (!linear.empty() && !certified.empty()) rep.hypothesis_detail += ",";
  if (!certified.empty())
    rep.hypothesis_detail += " function-field certificates at" + certified;

  // Chord cut of the fitted image: the three coordinate lines.
  const PlaneCurve& Y = *model.image;
  std::vector<ProjPoint> image_chords;
  for (u32 axis = 0; axis < 3; ++axis) {
    std::array<u64, 3> c{0, 0, 0};
    c[axis] = 1;
    const Divisor cut = line_intersection_divisor(
        Y, ProjLine::from_ints(Y.k, c[0], c[1], c[2]));
    for (const auto& [P, m] : cut.entries()) add_point(image_chords, P);
  }
  rep.chord_points = image_chords.size();

  // The same cut transported to the source: zero and pole supports of the
  // two coordinate functions.
  std::vector<ProjPoint> source_chords;
  const Divisor df = model.f.divisor_on(model.source);
  const Divisor dg = model.g.divisor_on(model.source);
  for (const auto& [P, m] : df.entries()) add_point(source_chords, P);
  for (const auto& [P, m] : dg.entries()) add_point(source_chords, P);

  // Cross-check the two descriptions before trusting either.
  std::vector<ProjPoint> covered;
  for (const ProjPoint& P : source_chords) {
    const ProjPoint img = model_image_of(model, P);
    if (!point_in(image_chords, img))
      fail("the image " + img.str() + " of the support point " + P.str() +
           " misses the chord cut of the fitted curve");
    add_point(covered, img);
  }
  for (const ProjPoint& U : image_chords)
    if (!point_in(covered, U))
      fail("the chord point " + U.str() +
           " of the fitted curve is not the image of any support point");

  std::set<ProjMatrix, PMatLess> acting;
  for (const auto& group : model.groups)
    acting.insert(group.begin(), group.end());

  for (const ProjPoint& Q : source_chords) {
    for (const ProjMatrix& M : acting) {
      const ProjPoint img = orbit_points({M}, Q).front();
      if (!point_in(source_chords, img)) {
        rep.escape = OrbitEscape{Q, M, img};
        return rep;
      }
    }
  }
  rep.holds = true;

  const std::vector<ProjMatrix> gens(acting.begin(), acting.end());
  try {
    rep.group_order = group_closure(gens, group_cap).size();
  } catch (const GroupCapExceeded&) {
    rep.group_capped = true;
  }

  std::array<FieldElem, 9> entries;
  for (u32 r = 0; r < 3; ++r)
    for (u32 c = 0; c < 3; ++c) entries[r * 3 + c] = model.centers[c].v[r];
  const ProjMatrix T = ProjMatrix::make(model.source.k, entries);
  const ProjMatrix Ti = T.inverse();
  rep.diagonal_frame = true;
  for (const ProjMatrix& M : acting) {
    const ProjMatrix D = Ti * M * T;
    for (u32 r = 0; r < 3 && rep.diagonal_frame; ++r)
      for (u32 c = 0; c < 3; ++c)
        if (r != c && !D.at(r, c).is_zero()) {
          rep.diagonal_frame = false;
          break;
        }
  }

  rep.groups_cyclic = true;
  for (const auto& group : model.groups) {
    bool cyclic = false;
    for (const ProjMatrix& g : group)
      if (group_closure({g}, group.size()).size() == group.size()) {
        cyclic = true;
        break;
      }
    rep.groups_cyclic = rep.groups_cyclic && cyclic;
  }
  return rep;
}

}  // namespace gplane
