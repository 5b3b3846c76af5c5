#include "gplane/galois.hpp"

#include <algorithm>

#include "gplane/check.hpp"

namespace gplane {

namespace {

// Up to `cap` base-rational curve points used to reject candidates cheaply
// before the exact substitution check.
std::vector<ProjPoint> prefilter_sample(const PlaneCurve& C, size_t cap = 10) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& Q : C.points_over(C.k)) {
    out.push_back(Q);
    if (out.size() >= cap) break;
  }
  return out;
}

bool passes_prefilter(const PlaneCurve& C, const ProjMatrix& M,
                      const std::vector<ProjPoint>& sample) {
  const HomPoly& F = C.F;
  for (const ProjPoint& Q : sample) {
    if (!F.eval_point(M.apply(Q)).is_zero()) return false;
  }
  return true;
}

bool preserves_curve(const PlaneCurve& C, const ProjMatrix& M,
                     const std::vector<ProjPoint>& sample) {
  return passes_prefilter(C, M, sample) && proportional(C.F.compose(M), C.F);
}

}  // namespace

std::vector<ProjMatrix> decomposition_group(const PlaneCurve& C, const ProjPoint& P) {
  require(P.F == C.k, "decomposition group is taken over the curve base field");
  std::vector<ProjMatrix> out = {ProjMatrix::identity(C.k)};
  auto sample = prefilter_sample(C);
  for_each_perspectivity(P, [&](const ProjMatrix& M) {
    if (preserves_curve(C, M, sample)) out.push_back(M);
    return true;
  });
  std::sort(out.begin(), out.end(), PMatLess{});
  return out;
}

namespace {

// Rank of a 3x3 matrix is at most 1 iff every 2x2 minor vanishes.
bool rank_at_most_one(const std::array<FieldElem, 9>& n) {
  for (u32 r1 = 0; r1 < 3; ++r1)
    for (u32 r2 = r1 + 1; r2 < 3; ++r2)
      for (u32 c1 = 0; c1 < 3; ++c1)
        for (u32 c2 = c1 + 1; c2 < 3; ++c2)
          if (!(n[r1 * 3 + c1] * n[r2 * 3 + c2] - n[r1 * 3 + c2] * n[r2 * 3 + c1])
                   .is_zero())
            return false;
  return true;
}

}  // namespace

std::optional<CharacterTable> perspectivity_character(
    const std::vector<ProjMatrix>& group, const ProjPoint& center) {
  if (group.empty()) return std::nullopt;
  const FieldCtx* k = group[0].F;
  require(center.F == k, "character frame must live over the group field");
  if (k->order() > (u64(1) << 16)) return std::nullopt;  // axis search too large
  CharacterTable tab;
  bool axis_set = false;
  for (const ProjMatrix& M : group) {
    if (M.is_identity()) {
      tab.values.emplace_back(M, k->one());
      continue;
    }
    // center eigenvalue of this representative: M v = lambda v
    std::array<FieldElem, 3> img;
    for (u32 r = 0; r < 3; ++r)
      img[r] = M.at(r, 0) * center.v[0] + M.at(r, 1) * center.v[1] +
               M.at(r, 2) * center.v[2];
    u32 pivot = 0;
    while (pivot < 3 && center.v[pivot].is_zero()) ++pivot;
    check(pivot < 3, "projective point has a nonzero coordinate");
    FieldElem lambda = img[pivot] * center.v[pivot].inverse();
    for (u32 r = 0; r < 3; ++r)
      if (!(img[r] - lambda * center.v[r]).is_zero()) return std::nullopt;

    // axis eigenvalue: the c with rank(M - cI) = 1; its kernel is the line
    // of fixed points, read off any nonzero row of M - cI.
    bool found = false;
    for (u64 ci = 1; ci < k->order() && !found; ++ci) {
      FieldElem c = k->from_index(ci);
      std::array<FieldElem, 9> n = M.m;
      for (u32 d = 0; d < 3; ++d) n[d * 3 + d] = n[d * 3 + d] - c;
      bool zero = true;
      for (const FieldElem& e : n) zero = zero && e.is_zero();
      if (zero || !rank_at_most_one(n)) continue;
      for (u32 r = 0; r < 3 && !found; ++r) {
        if (n[r * 3].is_zero() && n[r * 3 + 1].is_zero() && n[r * 3 + 2].is_zero())
          continue;
        ProjLine axis = ProjLine::make(n[r * 3], n[r * 3 + 1], n[r * 3 + 2]);
        FieldElem a = lambda * c.inverse();
        if ((a - k->one()).is_zero()) return std::nullopt;  // unipotent element
        if (axis.contains(center)) return std::nullopt;
        if (axis_set && axis != tab.axis) return std::nullopt;
        tab.axis = axis;
        axis_set = true;
        tab.values.emplace_back(M, a);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!axis_set) return std::nullopt;  // trivial group: nothing to report
  return tab;
}

GaloisPointReport is_galois_point(const PlaneCurve& C, const ProjPoint& P) {
  require(P.F == C.k, "galois-point classification is over the curve base field");
  GaloisPointReport rep;
  rep.point = P;
  rep.multiplicity = C.multiplicity_at(P);
  require(rep.multiplicity <= 1,
          "projection center must be off the curve or a smooth point of it");
  rep.kind = (rep.multiplicity == 0) ? PointKind::outer : PointKind::inner;
  rep.projection_degree = C.degree - rep.multiplicity;
  check(rep.projection_degree >= 1, "curve degree is at least one");
  rep.group = decomposition_group(C, P);
  rep.galois = (rep.group.size() == rep.projection_degree);
  rep.order_divides_degree = (rep.projection_degree % rep.group.size() == 0);
  rep.character = perspectivity_character(rep.group, P);
  return rep;
}

ScanResult scan_galois_points(const PlaneCurve& C,
                              const std::vector<ProjPoint>& candidates) {
  ScanResult res;
  for (const ProjPoint& P : candidates) {
    ++res.total_points;
    u32 m = C.multiplicity_at(P);
    if (m > 0) ++res.on_curve;
    if (m >= 2) {
      ++res.skipped_singular;
      continue;
    }
    GaloisPointReport rep = is_galois_point(C, P);
    if (rep.galois) {
      if (rep.kind == PointKind::inner)
        ++res.inner_galois;
      else
        ++res.outer_galois;
    }
    res.reports.push_back(std::move(rep));
  }
  return res;
}

ScanResult scan_galois_points(const PlaneCurve& C) {
  return scan_galois_points(C, all_points(C.k));
}

Divisor projection_fiber(const PlaneCurve& C, const ProjPoint& center,
                         const ProjLine& L) {
  {
    const FieldCtx* E = FieldCtx::compositum(center.F, L.F);
    require(embed_line(L, E).contains(embed_point(center, E)),
            "fiber line must pass through the projection center");
  }
  Divisor cut = line_intersection_divisor(C, L);
  u32 m = C.multiplicity_at(center);
  if (m > 0) cut = cut - Divisor::single(center, static_cast<i64>(m));
  check(cut.is_effective(), "fiber divisor must be effective");
  check(cut.degree() == static_cast<i64>(C.degree - m),
        "fiber degree must equal the projection degree");
  return cut;
}

Divisor group_image_divisor(const std::vector<ProjMatrix>& group, const ProjPoint& P) {
  require(!group.empty(), "group must be nonempty");
  const FieldCtx* E = (P.F == group[0].F)
                          ? P.F
                          : FieldCtx::compositum(P.F, group[0].F);
  ProjPoint PE = (P.F == E) ? P : embed_point(P, E);
  Divisor out;
  for (const ProjMatrix& M : group) {
    const ProjMatrix ME = (M.F == E) ? M : embed_matrix(M, E);
    out.add_point(ME.apply(PE), 1);
  }
  return out;
}

std::vector<ProjPoint> orbit_points(const std::vector<ProjMatrix>& group,
                                    const ProjPoint& P) {
  Divisor D = group_image_divisor(group, P);
  std::vector<ProjPoint> out;
  for (const auto& [Q, m] : D.entries()) {
    (void)m;
    out.push_back(Q);
  }
  return out;
}

std::vector<ProjMatrix> automorphisms_mapping(const PlaneCurve& C,
                                              const ProjPoint& src1,
                                              const ProjPoint& dst1,
                                              const ProjPoint& src2,
                                              const ProjPoint& dst2) {
  const FieldCtx* k = C.k;
  require(src1.F == k && dst1.F == k && src2.F == k && dst2.F == k,
          "constraint points must be over the curve base field");
  require(src1 != src2, "source points must be distinct");
  // Change of basis R sending e1 to src1 and e3 to src2, middle column a
  // deterministic completion to an invertible matrix.
  ProjMatrix R = ProjMatrix::identity(k);
  {
    bool built = false;
    for (u32 widx = 0; widx < 3 && !built; ++widx) {
      std::array<FieldElem, 9> m;
      for (u32 r = 0; r < 3; ++r) {
        m[r * 3 + 0] = src1.v[r];
        m[r * 3 + 1] = (r == widx) ? k->one() : k->zero();
        m[r * 3 + 2] = src2.v[r];
      }
      FieldElem det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                      m[1] * (m[3] * m[8] - m[5] * m[6]) +
                      m[2] * (m[3] * m[7] - m[4] * m[6]);
      if (det.is_zero()) continue;
      R = ProjMatrix::make(k, m);
      built = true;
    }
    check(built, "failed to complete two independent points to a basis");
  }
  ProjMatrix Rinv = R.inverse();

  auto sample = prefilter_sample(C);
  std::vector<ProjMatrix> out;
  u64 q = k->order();
  // Candidates: first column exactly dst1, third column beta * dst2, middle
  // column free.  Every projective class satisfying the point constraints
  // has exactly one representative of this shape.
  for (u64 beta = 1; beta < q; ++beta) {
    FieldElem b = k->from_index(beta);
    for (u64 ci = 1; ci < q * q * q; ++ci) {
      std::array<FieldElem, 3> c2 = {k->from_index(ci % q),
                                     k->from_index((ci / q) % q),
                                     k->from_index(ci / (q * q))};
      std::array<FieldElem, 9> m;
      for (u32 r = 0; r < 3; ++r) {
        m[r * 3 + 0] = dst1.v[r];
        m[r * 3 + 1] = c2[r];
        m[r * 3 + 2] = b * dst2.v[r];
      }
      FieldElem det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                      m[1] * (m[3] * m[8] - m[5] * m[6]) +
                      m[2] * (m[3] * m[7] - m[4] * m[6]);
      if (det.is_zero()) continue;
      ProjMatrix M = ProjMatrix::make(k, m) * Rinv;
      if (!preserves_curve(C, M, sample)) continue;
      check(M.apply(src1) == dst1 && M.apply(src2) == dst2,
            "candidate violates its own constraints");
      out.push_back(M);
    }
  }
  std::sort(out.begin(), out.end(), PMatLess{});
  return out;
}

GeneratorCertificate quotient_generator_check(const PlaneCurve& C,
                                              const std::vector<ProjMatrix>& group,
                                              const LinFormProduct& f,
                                              const std::vector<ProjPoint>& safe_pool) {
  GeneratorCertificate cert;
  cert.group_order = group.size();
  require(!group.empty(), "group must be nonempty");
  bool has_identity = false;
  for (const ProjMatrix& M : group) has_identity = has_identity || M.is_identity();
  require(has_identity, "group must contain the identity");

  Divisor div = f.divisor_on(C);
  u64 poles = 0;
  for (const auto& [P, m] : div.entries()) {
    if (m < 0) poles += static_cast<u64>(-m);
  }
  cert.pole_degree = poles;
  if (poles != group.size()) {
    cert.status = GeneratorCertificate::Status::failed;
    cert.detail = "pole degree " + std::to_string(poles) +
                  " differs from group order " + std::to_string(group.size());
    return cert;
  }
  if (poles == 0) {
    cert.status = GeneratorCertificate::Status::failed;
    cert.detail = "candidate generator is constant on the curve";
    return cert;
  }

  for (const ProjMatrix& M : group) {
    if (pushforward(div, M) != div) {
      cert.status = GeneratorCertificate::Status::failed;
      cert.detail = "divisor moves under a group element";
      return cert;
    }
  }

  // Same divisor under every element means f o sigma = c * f; pin c = 1 by
  // one exact value at a point where f is finite and nonzero under the whole
  // orbit.
  for (const ProjPoint& Q : safe_pool) {
    if (!C.contains(Q)) continue;
    LinValue base = f.value_at(Q);
    if (base.kind != LinValue::Kind::finite || base.value.is_zero()) continue;
    bool usable = true;
    bool all_equal = true;
    for (const ProjMatrix& M : group) {
      const FieldCtx* E = FieldCtx::compositum(Q.F, M.F);
      ProjPoint img = embed_matrix(M, E).apply(embed_point(Q, E));
      LinValue v = f.value_at(img);
      if (v.kind != LinValue::Kind::finite || v.value.is_zero()) {
        usable = false;
        break;
      }
      all_equal = all_equal && same_element(v.value, base.value);
    }
    if (!usable) continue;
    if (!all_equal) {
      cert.status = GeneratorCertificate::Status::failed;
      cert.detail = "function value moves under a group element";
      return cert;
    }
    cert.status = GeneratorCertificate::Status::verified;
    return cert;
  }
  cert.status = GeneratorCertificate::Status::unverified;
  cert.detail = "no safe evaluation point in the pool";
  return cert;
}

GeneratorCertificate quotient_generator_check(const PlaneCurve& C,
                                              const std::vector<ProjMatrix>& group,
                                              const LinFormProduct& f) {
  return quotient_generator_check(C, group, f, C.points_over(C.k));
}

}  // namespace gplane
