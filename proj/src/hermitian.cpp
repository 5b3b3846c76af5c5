#include "gplane/hermitian.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gplane/check.hpp"
#include "gplane/galois.hpp"

namespace gplane {

namespace {

struct PrimePower {
  u64 p = 0;
  u32 e = 0;
};

PrimePower factor_prime_power(u64 q) {
  require(q >= 2, "q must be at least 2");
  u64 p = q;
  for (u64 f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  u64 t = q;
  u32 e = 0;
  while (t % p == 0) {
    t /= p;
    ++e;
  }
  require(t == 1, "q must be a prime power");
  return {p, e};
}

void validate_pair(u64 q, u64 s) {
  require(s >= 1, "s must be at least 1");
  require((q - 1) % s == 0, "s must divide q - 1");
}

// Raw row-major 3x3 product over one field, without projective normalization.
std::array<FieldElem, 9> matmul_raw(const std::array<FieldElem, 9>& a,
                                    const std::array<FieldElem, 9>& b) {
  std::array<FieldElem, 9> out;
  for (u32 r = 0; r < 3; ++r) {
    for (u32 c = 0; c < 3; ++c) {
      FieldElem acc = a[r * 3] * b[c];
      acc += a[r * 3 + 1] * b[3 + c];
      acc += a[r * 3 + 2] * b[6 + c];
      out[r * 3 + c] = acc;
    }
  }
  return out;
}

std::vector<ProjMatrix> conjugate_group(const std::vector<ProjMatrix>& G,
                                        const ProjMatrix& A) {
  const ProjMatrix Ai = A.inverse();
  std::vector<ProjMatrix> out;
  out.reserve(G.size());
  for (const ProjMatrix& M : G) out.push_back(A * M * Ai);
  std::sort(out.begin(), out.end(), PMatLess{});
  return out;
}

}  // namespace

bool hermitian_power_identity(u64 q, u64 s) {
  const PrimePower pp = factor_prime_power(q);
  validate_pair(q, s);
  const u64 m = (q - 1) / s;
  const FieldCtx* k = FieldCtx::get(pp.p, 2 * pp.e);
  const FieldElem zero = k->zero();
  const FieldElem one = k->one();
  for (u64 idx = 1; idx < k->order(); ++idx) {
    const FieldElem a = k->from_index(idx);
    const FieldElem am = a.pow(m);
    std::array<FieldElem, 9> M;
    M.fill(zero);
    M[0] = am.pow(q + 1);
    M[4] = am;
    M[8] = one;
    std::array<FieldElem, 9> P;
    P.fill(zero);
    P[0] = P[4] = P[8] = one;
    for (u64 t = 0; t < s; ++t) P = matmul_raw(P, M);
    if (!(P[0].is_one() && P[4] == a.pow(q - 1) && P[8].is_one())) return false;
    for (u32 i : {1u, 2u, 3u, 5u, 6u, 7u}) {
      if (!P[i].is_zero()) return false;
    }
  }
  return true;
}

HermitianScenario hermitian_scenario(u64 q, u64 s, u64 seed, u32 ext_bound) {
  const PrimePower pp = factor_prime_power(q);
  validate_pair(q, s);
  require(ext_bound >= 1, "ext_bound must be at least 1");
  const u64 m = (q - 1) / s;
  const u64 d = s * (q + 1);
  const ScenarioParams params{pp.p, q, s, m, d, seed};

  const FieldCtx* k = FieldCtx::get(pp.p, 2 * pp.e);
  PlaneCurve curve = PlaneCurve::hermitian(k, q);

  const bool power_ok = hermitian_power_identity(q, s);
  check(power_ok, "the scaling power identity failed over GF(q^2)");

  // The diagonal group: closure of diag(b^(q+1), b, 1) with b = gamma^m,
  // gamma a primitive element of GF(q^2).
  const FieldElem b = k->compatible_generator().pow(m);
  const ProjMatrix gen3 =
      ProjMatrix::diagonal(b.pow(q + 1), b, k->one());
  std::vector<ProjMatrix> G3 = group_closure({gen3}, d);
  if (G3.size() != d) {
    fail("the diagonal group has order " + std::to_string(G3.size()) +
         " but the parameters demand " + std::to_string(d));
  }

  const ProjPoint Q1 = ProjPoint::from_ints(k, 1, 0, 0);
  const ProjPoint Q2 = ProjPoint::from_ints(k, 0, 0, 1);
  std::vector<ProjPoint> off_line;
  for (const ProjPoint& P : curve.points_over(k)) {
    if (!P.v[1].is_zero()) off_line.push_back(P);
  }
  check(!off_line.empty(), "no rational curve point lies off the line Y = 0");
  const ProjPoint Q3 = off_line[seed % off_line.size()];

  // Transport the diagonal group (which fixes Q1 and Q2) so that the
  // conjugates fix {Q2, Q3} and {Q1, Q3} respectively.
  const std::vector<ProjMatrix> to_g1 =
      automorphisms_mapping(curve, Q2, Q2, Q1, Q3);
  check(!to_g1.empty(),
        "no curve automorphism fixes (0:0:1) and carries (1:0:0) to the "
        "third point");
  const ProjMatrix psi = to_g1.front();
  const std::vector<ProjMatrix> to_g2 =
      automorphisms_mapping(curve, Q1, Q1, Q2, Q3);
  check(!to_g2.empty(),
        "no curve automorphism fixes (1:0:0) and carries (0:0:1) to the "
        "third point");
  const ProjMatrix phi = to_g2.front();

  const ProjLine line_x = ProjLine::from_ints(k, 1, 0, 0);
  const ProjLine line_z = ProjLine::from_ints(k, 0, 0, 1);
  const LinFormProduct xs = LinFormProduct::from_terms(
      k, {{line_x, static_cast<i64>(s)}, {line_z, -static_cast<i64>(s)}});
  const LinFormProduct f = xs.pullback(psi.inverse());
  const LinFormProduct g = xs.inverse().pullback(phi.inverse());

  std::array<CriterionGroup, 3> groups{
      CriterionGroup{conjugate_group(G3, psi), f},
      CriterionGroup{conjugate_group(G3, phi), g},
      CriterionGroup{std::move(G3), xs}};
  const std::array<ProjPoint, 3> points{Q1, Q2, Q3};

  CriterionReport criterion = check_outer_criterion(curve, groups, points);
  if (criterion.verdict != CheckStatus::pass) {
    fail("the transported groups do not satisfy the outer criterion "
         "(verdict: " +
         std::string(to_string(criterion.verdict)) + ")");
  }

  // Smallest extension whose point set yields strictly more than d^2 images,
  // so the fitted degree-d curve is pinned down by far more points than
  // coefficients.
  const u64 need = d * d;
  const FieldCtx* sample = nullptr;
  std::optional<PlaneModel> model;
  for (u32 j = 1; j <= ext_bound && !model; ++j) {
    u64 order = 1;
    bool too_big = false;
    for (u32 t = 0; t < 2 * pp.e * j && !too_big; ++t) {
      order *= pp.p;
      if (order > (1ull << 20)) too_big = true;
    }
    if (too_big) break;
    const FieldCtx* cand = FieldCtx::get(pp.p, 2 * pp.e * j);
    if (curve.points_over(cand).size() <= need) continue;
    ModelOptions opts;
    opts.sample_field = cand;
    PlaneModel attempt = build_outer_model(curve, groups, points, opts);
    if (attempt.images.size() > need) {
      sample = cand;
      model.emplace(std::move(attempt));
    }
  }
  if (!model) {
    fail("no extension of GF(" + std::to_string(k->order()) +
         ") within degree factor " + std::to_string(ext_bound) +
         " yields more than " + std::to_string(need) + " image points");
  }

  ModelVerification verification = verify_model_galois(*model);

  return HermitianScenario{params,
                           std::move(curve),
                           points,
                           std::move(groups),
                           psi,
                           phi,
                           power_ok,
                           sample,
                           std::move(criterion),
                           std::move(*model),
                           std::move(verification)};
}

}  // namespace gplane
