#include <algorithm>
#include <vector>

#include "doctest.h"
#include "gplane/galois.hpp"

using namespace gplane;

namespace {

// F with each variable replaced by the corresponding row form of M, expanded
// by plain polynomial multiplication.  Independent of HomPoly::compose.
HomPoly subst_by_products(const HomPoly& F, const std::array<FieldElem, 9>& m) {
  const FieldCtx* k = F.field();
  std::array<HomPoly, 3> rows;
  for (u32 r = 0; r < 3; ++r) {
    rows[r] = HomPoly(k, 1);
    rows[r].set_coeff(1, 0, 0, m[r * 3 + 0]);
    rows[r].set_coeff(0, 1, 0, m[r * 3 + 1]);
    rows[r].set_coeff(0, 0, 1, m[r * 3 + 2]);
  }
  HomPoly acc(k, F.degree());
  F.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& coef) {
    HomPoly term(k, 0);
    term.set_coeff(0, 0, 0, coef);
    for (u32 i = 0; i < a; ++i) term = term * rows[0];
    for (u32 i = 0; i < b; ++i) term = term * rows[1];
    for (u32 i = 0; i < c; ++i) term = term * rows[2];
    acc = acc + term;
  });
  return acc;
}

FieldElem det3(const std::array<FieldElem, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// u and w proportional as covectors (cross-product test, no division).
bool covectors_proportional(const std::array<FieldElem, 3>& u,
                            const std::array<FieldElem, 3>& w) {
  for (u32 i = 0; i < 3; ++i)
    for (u32 j = i + 1; j < 3; ++j)
      if (!(u[i] * w[j] - u[j] * w[i]).is_zero()) return false;
  return true;
}

// Every matrix class over k that maps each line through P to itself and
// maps C to itself, found by scanning all q^9 raw matrices.  The expansion
// check uses subst_by_products, so nothing here shares code with
// decomposition_group beyond the basic field arithmetic.
std::vector<ProjMatrix> brute_deck_group(const PlaneCurve& C, const ProjPoint& P) {
  const FieldCtx* k = C.k;
  u64 q = k->order();

  std::vector<std::array<FieldElem, 3>> pencil;
  for (u64 wi = 1; wi < q * q * q; ++wi) {
    std::array<FieldElem, 3> w = {k->from_index(wi % q), k->from_index((wi / q) % q),
                                  k->from_index(wi / (q * q))};
    FieldElem dot = w[0] * P.v[0] + w[1] * P.v[1] + w[2] * P.v[2];
    if (dot.is_zero()) pencil.push_back(w);
  }

  std::vector<ProjMatrix> out;
  u64 total = 1;
  for (int i = 0; i < 9; ++i) total *= q;
  for (u64 code = 0; code < total; ++code) {
    std::array<FieldElem, 9> m;
    u64 rest = code;
    for (u32 i = 0; i < 9; ++i) {
      m[i] = k->from_index(rest % q);
      rest /= q;
    }
    if (det3(m).is_zero()) continue;
    bool stab = true;
    for (const auto& w : pencil) {
      std::array<FieldElem, 3> u;
      for (u32 j = 0; j < 3; ++j)
        u[j] = w[0] * m[0 * 3 + j] + w[1] * m[1 * 3 + j] + w[2] * m[2 * 3 + j];
      if (!covectors_proportional(u, w)) {
        stab = false;
        break;
      }
    }
    if (!stab) continue;
    if (!proportional(subst_by_products(C.F, m), C.F)) continue;
    out.push_back(ProjMatrix::make(k, m));
  }
  std::sort(out.begin(), out.end(), PMatLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool preserves(const PlaneCurve& C, const ProjMatrix& M) {
  return proportional(C.F.compose(M), C.F);
}

ProjPoint first_point_off_line(const PlaneCurve& C, u32 coord) {
  for (const ProjPoint& Q : C.points_over(C.k))
    if (!Q.v[coord].is_zero()) return Q;
  FAIL("no curve point off the requested coordinate line");
  return ProjPoint();
}

std::vector<ProjLine> lines_through(const FieldCtx* k, const ProjPoint& P) {
  std::vector<ProjLine> out;
  u64 q = k->order();
  for (u64 wi = 1; wi < q * q * q; ++wi) {
    std::array<FieldElem, 3> w = {k->from_index(wi % q), k->from_index((wi / q) % q),
                                  k->from_index(wi / (q * q))};
    FieldElem dot = w[0] * P.v[0] + w[1] * P.v[1] + w[2] * P.v[2];
    if (!dot.is_zero()) continue;
    ProjLine L = ProjLine::make(w[0], w[1], w[2]);
    bool seen = false;
    for (const ProjLine& e : out) seen = seen || e == L;
    if (!seen) out.push_back(L);
  }
  return out;
}

LinFormProduct coord_ratio(const FieldCtx* k, u32 num, u32 den) {
  auto unit = [&](u32 i) {
    return ProjLine::make(i == 0 ? k->one() : k->zero(), i == 1 ? k->one() : k->zero(),
                          i == 2 ? k->one() : k->zero());
  };
  return LinFormProduct::from_terms(k, {{unit(num), 1}, {unit(den), -1}});
}

}  // namespace

TEST_CASE("decomposition group matches a brute-force scan of all matrices") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  PlaneCurve C = PlaneCurve::hermitian(F4, 2);

  ProjPoint inner = ProjPoint::from_ints(F4, 1, 0, 0);
  REQUIRE(C.contains(inner));
  auto gi = decomposition_group(C, inner);
  CHECK(gi == brute_deck_group(C, inner));
  CHECK(gi.size() == 2);

  ProjPoint outer = ProjPoint::from_ints(F4, 0, 1, 0);
  REQUIRE(!C.contains(outer));
  auto go = decomposition_group(C, outer);
  CHECK(go == brute_deck_group(C, outer));
  CHECK(go.size() == 3);

  for (const auto& g : {gi, go}) {
    bool has_id = false;
    for (const ProjMatrix& M : g) {
      has_id = has_id || M.is_identity();
      CHECK(preserves(C, M));
    }
    CHECK(has_id);
  }
}

TEST_CASE("every plane point is a Galois point for a Hermitian curve") {
  struct Case {
    u64 p, n;
    u64 q;
    u32 plane, on_curve, inner, outer;
  };
  // Plane size q^4 + q^2 + 1 over GF(q^2); the curve has q^3 + 1 rational
  // points; inner groups have order q, outer groups order q + 1.
  for (Case cs : {Case{2, 2, 2, 21, 9, 9, 12}, Case{3, 2, 3, 91, 28, 28, 63}}) {
    const FieldCtx* k = FieldCtx::get(cs.p, cs.n);
    PlaneCurve C = PlaneCurve::hermitian(k, cs.q);
    ScanResult res = scan_galois_points(C);
    CHECK(res.total_points == cs.plane);
    CHECK(res.on_curve == cs.on_curve);
    CHECK(res.skipped_singular == 0);
    CHECK(res.inner_galois == cs.inner);
    CHECK(res.outer_galois == cs.outer);
    CHECK(res.reports.size() == cs.plane);
    for (const GaloisPointReport& rep : res.reports) {
      CHECK(rep.galois);
      CHECK(rep.order_divides_degree);
      CHECK(rep.group.size() == rep.projection_degree);
      if (rep.kind == PointKind::inner) {
        CHECK(rep.multiplicity == 1);
        CHECK(rep.projection_degree == cs.q);
      } else {
        CHECK(rep.kind == PointKind::outer);
        CHECK(rep.projection_degree == cs.q + 1);
      }
      // Inner groups here consist of unipotent elements (order-p maps), so
      // no scaling character exists; outer groups are cyclic of order q+1,
      // prime to p, and diagonalize with the pencil-invariant axis.
      CHECK(rep.character.has_value() == (rep.kind == PointKind::outer));
      if (rep.character) {
        CHECK(rep.character->values.size() == rep.group.size());
        for (const auto& [M, a] : rep.character->values)
          CHECK(M.is_identity() == (a - k->one()).is_zero());
      }
    }
  }

  // Explicit empty candidate list: empty census.
  PlaneCurve C2 = PlaneCurve::hermitian(FieldCtx::get(2, 2), 2);
  ScanResult empty = scan_galois_points(C2, {});
  CHECK(empty.total_points == 0);
  CHECK(empty.reports.empty());
}

TEST_CASE("singular projection centers are rejected, not classified") {
  const FieldCtx* F7 = FieldCtx::get(7, 1);
  HomPoly F(F7, 3);
  F.set_coeff(3, 0, 0, F7->one());
  F.set_coeff(2, 0, 1, F7->one());
  F.set_coeff(0, 2, 1, F7->from_int(6));
  PlaneCurve nodal = PlaneCurve::from_poly(F);  // X^3 + X^2 Z - Y^2 Z, node at (0:0:1)
  ProjPoint node = ProjPoint::from_ints(F7, 0, 0, 1);
  REQUIRE(nodal.multiplicity_at(node) == 2);
  CHECK_THROWS_AS(is_galois_point(nodal, node), std::invalid_argument);

  ScanResult res = scan_galois_points(nodal);
  CHECK(res.total_points == 57);
  CHECK(res.skipped_singular == 1);
  CHECK(res.reports.size() == 56);
}

TEST_CASE("Fermat quartic vertices carry diagonal deck groups") {
  const FieldCtx* F13 = FieldCtx::get(13, 1);
  PlaneCurve C = PlaneCurve::fermat(F13, 4);

  // A perspectivity with center (0:0:1) preserving X^4 + Y^4 + Z^4 sends
  // (x, y, z) to (x, y, w1 x + w2 y + u z); expanding forces w1 = w2 = 0 and
  // u^4 = 1, so the group is exactly the fourth roots of unity acting on Z.
  // Mod 13 those roots are 1, 5, 12, 8.
  std::vector<ProjMatrix> expected;
  for (u64 t : {1, 5, 12, 8})
    expected.push_back(ProjMatrix::from_ints(F13, {1, 0, 0, 0, 1, 0, 0, 0, t}));
  std::sort(expected.begin(), expected.end(), PMatLess{});

  ProjPoint vertex = ProjPoint::from_ints(F13, 0, 0, 1);
  GaloisPointReport rep = is_galois_point(C, vertex);
  CHECK(rep.kind == PointKind::outer);
  CHECK(rep.projection_degree == 4);
  CHECK(rep.group == expected);
  CHECK(rep.galois);

  // Scaling character: axis Z = 0, a(diag(1,1,t)) = t, multiplicative and
  // injective.
  REQUIRE(rep.character.has_value());
  CHECK(rep.character->axis == ProjLine::from_ints(F13, 0, 0, 1));
  CHECK(rep.character->values.size() == 4);
  for (const auto& [M, a] : rep.character->values) {
    CHECK((a - M.at(2, 2) * M.at(0, 0).inverse()).is_zero());
    CHECK((a.pow(4) - F13->one()).is_zero());
  }
  // Injective: the four character values are pairwise distinct.
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      CHECK(!(rep.character->values[i].second - rep.character->values[j].second)
                 .is_zero());
  auto char_of = [&](const ProjMatrix& M) {
    for (const auto& [N, a] : rep.character->values)
      if (N == M) return a;
    FAIL("element missing from character table");
    return F13->zero();
  };
  for (const ProjMatrix& M : rep.group)
    for (const ProjMatrix& N : rep.group)
      CHECK((char_of(M * N) - char_of(M) * char_of(N)).is_zero());

  // The other two coordinate vertices behave the same way by symmetry.
  CHECK(is_galois_point(C, ProjPoint::from_ints(F13, 1, 0, 0)).galois);
  CHECK(is_galois_point(C, ProjPoint::from_ints(F13, 0, 1, 0)).galois);

  // A generic outer point has a trivial deck group.
  ProjPoint generic = ProjPoint::from_ints(F13, 1, 1, 1);
  REQUIRE(!C.contains(generic));
  GaloisPointReport grep = is_galois_point(C, generic);
  CHECK(grep.group.size() == 1);
  CHECK(!grep.galois);
  CHECK(!grep.character.has_value());

  // Perturbing the curve by one mixed monomial kills the vertex symmetry:
  // the deck group at (0:0:1) collapses to the identity.
  HomPoly P = C.F;
  P.set_coeff(2, 1, 1, F13->one());
  PlaneCurve bent = PlaneCurve::from_poly(P);
  CHECK(decomposition_group(bent, vertex).size() == 1);
}

TEST_CASE("projection fibers have constant degree and partition the curve") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  PlaneCurve C = PlaneCurve::hermitian(F4, 2);

  for (u32 coord : {0u, 2u}) {
    // center (1:0:0) is on the curve, (0:1:0) is not
    ProjPoint center = (coord == 0) ? ProjPoint::from_ints(F4, 1, 0, 0)
                                    : ProjPoint::from_ints(F4, 0, 1, 0);
    u32 m = C.multiplicity_at(center);
    u32 pdeg = C.degree - m;
    auto pencil = lines_through(F4, center);
    CHECK(pencil.size() == 5);

    Divisor seen;
    for (const ProjLine& L : pencil) {
      Divisor fib = projection_fiber(C, center, L);
      CHECK(fib.is_effective());
      CHECK(fib.degree() == static_cast<i64>(pdeg));
      for (const auto& [Q, mult] : fib.entries()) {
        CHECK(mult > 0);
        CHECK(C.contains(Q));
        const FieldCtx* E = FieldCtx::compositum(L.F, Q.F);
        CHECK(embed_line(L, E).contains(embed_point(Q, E)));
        if (!same_point(Q, center)) {
          // a non-center point lies on exactly one pencil line
          CHECK(seen.mult_of(Q) == 0);
        }
      }
      seen = seen + fib;
    }
    CHECK(seen.degree() == static_cast<i64>(5 * pdeg));
  }

  // The tangent line Z = 0 at (1:0:0) meets the curve only there, so the
  // fiber through it is twice the center.
  ProjPoint q1 = ProjPoint::from_ints(F4, 1, 0, 0);
  ProjLine tangent = ProjLine::from_ints(F4, 0, 0, 1);
  CHECK(projection_fiber(C, q1, tangent) == Divisor::single(q1, 2));

  // The line X = 0 through the outer center (0:1:0) is tangent at (0:0:1):
  // total ramification, fiber three times one point.
  ProjPoint q2 = ProjPoint::from_ints(F4, 0, 0, 1);
  ProjLine x0 = ProjLine::from_ints(F4, 1, 0, 0);
  CHECK(projection_fiber(C, ProjPoint::from_ints(F4, 0, 1, 0), x0) ==
        Divisor::single(q2, 3));

  // A line missing the center is rejected.
  CHECK_THROWS_AS(projection_fiber(C, q1, ProjLine::from_ints(F4, 1, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("group image divisors merge coincident images") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  FieldElem w = F4->gen();
  ProjMatrix A = ProjMatrix::make(
      F4, {F4->one(), F4->zero(), F4->zero(), F4->zero(), w, F4->zero(), F4->zero(),
           F4->zero(), F4->one()});
  std::vector<ProjMatrix> G = group_closure({A}, 16);
  REQUIRE(G.size() == 3);

  ProjPoint generic = ProjPoint::from_ints(F4, 1, 1, 1);
  Divisor dg = group_image_divisor(G, generic);
  CHECK(dg.degree() == 3);
  CHECK(dg.support_size() == 3);
  CHECK(orbit_points(G, generic).size() == 3);

  ProjPoint fixed = ProjPoint::from_ints(F4, 1, 0, 0);
  Divisor df = group_image_divisor(G, fixed);
  CHECK(df == Divisor::single(fixed, 3));
  CHECK(orbit_points(G, fixed).size() == 1);

  // A point over an extension field goes through the compositum.
  const FieldCtx* F16 = FieldCtx::get(2, 4);
  ProjPoint up = embed_point(generic, F16);
  CHECK(group_image_divisor(G, up) == dg);
}

TEST_CASE("constrained automorphism search") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  PlaneCurve C = PlaneCurve::hermitian(F4, 2);
  ProjPoint q1 = ProjPoint::from_ints(F4, 1, 0, 0);
  ProjPoint q2 = ProjPoint::from_ints(F4, 0, 0, 1);
  ProjPoint q3 = first_point_off_line(C, 1);
  REQUIRE(C.contains(q3));

  // Stabilizer of the ordered pair (q1, q2): the linear automorphism group
  // acts 2-transitively on the 9 rational points and has order 216, so the
  // stabilizer has order 3; the three diagonal maps scaling Y by cube roots
  // of unity realize it.
  auto stab = automorphisms_mapping(C, q1, q1, q2, q2);
  std::vector<ProjMatrix> diagonals;
  for (u64 b : {1, 2, 3}) {
    FieldElem be = F4->from_index(b);
    diagonals.push_back(ProjMatrix::make(
        F4, {F4->one(), F4->zero(), F4->zero(), F4->zero(), be, F4->zero(),
             F4->zero(), F4->zero(), F4->one()}));
  }
  std::sort(diagonals.begin(), diagonals.end(), PMatLess{});
  CHECK(stab == diagonals);

  // Maps fixing q2 and carrying q1 to q3 form a coset of that stabilizer.
  auto coset = automorphisms_mapping(C, q2, q2, q1, q3);
  CHECK(coset.size() == 3);
  for (const ProjMatrix& M : coset) {
    CHECK(M.apply(q2) == q2);
    CHECK(M.apply(q1) == q3);
    CHECK(preserves(C, M));
  }

  // No automorphism moves a curve point off the curve.
  ProjPoint off = ProjPoint::from_ints(F4, 0, 1, 0);
  REQUIRE(!C.contains(off));
  CHECK(automorphisms_mapping(C, q2, q2, q1, off).empty());
}

TEST_CASE("quotient generator certificates") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  PlaneCurve C = PlaneCurve::hermitian(F4, 2);
  FieldElem w = F4->gen();
  std::vector<ProjMatrix> G3 = group_closure(
      {ProjMatrix::make(F4, {F4->one(), F4->zero(), F4->zero(), F4->zero(), w,
                             F4->zero(), F4->zero(), F4->zero(), F4->one()})},
      16);
  REQUIRE(G3.size() == 3);

  // x = X/Z has divisor 3(0:0:1) - 3(1:0:0), is fixed by the diagonal
  // group, and its pole degree matches the group order.
  LinFormProduct x = coord_ratio(F4, 0, 2);
  GeneratorCertificate pos = quotient_generator_check(C, G3, x);
  CHECK(pos.status == GeneratorCertificate::Status::verified);
  CHECK(pos.pole_degree == 3);
  CHECK(pos.group_order == 3);

  // The scaling of Y is a central collineation with center (0:1:0), so the
  // deck group of the projection from that outer point is this same group.
  CHECK(decomposition_group(C, ProjPoint::from_ints(F4, 0, 1, 0)) == G3);

  // Pole degree 3 does not match an inner deck group of order 2.
  auto inner = decomposition_group(C, ProjPoint::from_ints(F4, 1, 0, 0));
  REQUIRE(inner.size() == 2);
  GeneratorCertificate mism = quotient_generator_check(C, inner, x);
  CHECK(mism.status == GeneratorCertificate::Status::failed);
  CHECK(mism.pole_degree == 3);
  CHECK(mism.group_order == 2);

  // On the Fermat cubic, scaling X preserves div(X/Z) but multiplies the
  // function by a cube root of unity: the value test must catch it.
  PlaneCurve Fer = PlaneCurve::fermat(F4, 3);
  std::vector<ProjMatrix> GX = group_closure(
      {ProjMatrix::make(F4, {w, F4->zero(), F4->zero(), F4->zero(), F4->one(),
                             F4->zero(), F4->zero(), F4->zero(), F4->one()})},
      16);
  REQUIRE(GX.size() == 3);
  LinFormProduct xf = coord_ratio(F4, 0, 2);
  GeneratorCertificate moved = quotient_generator_check(Fer, GX, xf);
  CHECK(moved.status == GeneratorCertificate::Status::failed);
  CHECK(moved.pole_degree == 3);
  CHECK(moved.detail.find("value") != std::string::npos);

  // An empty pool cannot pin the proportionality constant.
  GeneratorCertificate open = quotient_generator_check(C, G3, x, {});
  CHECK(open.status == GeneratorCertificate::Status::unverified);

  // Groups must contain the identity.
  ProjMatrix nonid = G3[0].is_identity() ? G3[1] : G3[0];
  CHECK_THROWS_AS(quotient_generator_check(C, {nonid}, x), std::invalid_argument);
}

namespace {

std::array<FieldElem, 9> matmul_raw(const std::array<FieldElem, 9>& a,
                                    const std::array<FieldElem, 9>& b) {
  std::array<FieldElem, 9> c;
  for (u32 i = 0; i < 3; ++i)
    for (u32 j = 0; j < 3; ++j) {
      FieldElem s = a[i * 3] * b[j];
      for (u32 t = 1; t < 3; ++t) s = s + a[i * 3 + t] * b[t * 3 + j];
      c[i * 3 + j] = s;
    }
  return c;
}

}  // namespace

TEST_CASE("pencil-line stabilizers over GF(9) are exactly the perspectivity family") {
  // Any map fixing every line through P fixes P itself (two pencil lines
  // meet only at P), so it is enough to scan the stabilizer of P.  That
  // stabilizer is parametrized, after moving P to (1:0:0), by matrices
  // [[1, b, c], [0, d, e], [0, f, g]] with dg - ef nonzero, one
  // representative per projective class.
  const FieldCtx* F9 = FieldCtx::get(3, 2);
  u64 q = F9->order();
  ProjPoint P = ProjPoint::make(F9->one(), F9->gen(), F9->gen() + F9->one());

  std::array<FieldElem, 9> T{};
  {
    // invertible completion with first column P, as in a frame change
    ProjMatrix Tm = ProjMatrix::make(
        F9, {P.v[0], F9->zero(), F9->zero(), P.v[1], F9->one(), F9->zero(), P.v[2],
             F9->zero(), F9->one()});
    T = Tm.m;
    REQUIRE(!Tm.det().is_zero());
  }
  std::array<FieldElem, 9> Tinv = ProjMatrix::make(F9, T).inverse().m;

  std::vector<std::array<FieldElem, 3>> pencil;
  for (u64 wi = 1; wi < q * q * q; ++wi) {
    std::array<FieldElem, 3> w = {F9->from_index(wi % q), F9->from_index((wi / q) % q),
                                  F9->from_index(wi / (q * q))};
    if ((w[0] * P.v[0] + w[1] * P.v[1] + w[2] * P.v[2]).is_zero()) pencil.push_back(w);
  }
  REQUIRE(pencil.size() == (q * q - 1));  // q + 1 lines, q - 1 scalars each

  std::vector<ProjMatrix> stabilizers;
  for (u64 code = 0; code < q * q * q * q * q * q; ++code) {
    u64 rest = code;
    FieldElem b = F9->from_index(rest % q);
    rest /= q;
    FieldElem c = F9->from_index(rest % q);
    rest /= q;
    FieldElem d = F9->from_index(rest % q);
    rest /= q;
    FieldElem e = F9->from_index(rest % q);
    rest /= q;
    FieldElem f = F9->from_index(rest % q);
    rest /= q;
    FieldElem g = F9->from_index(rest % q);
    if ((d * g - e * f).is_zero()) continue;
    std::array<FieldElem, 9> n = {F9->one(), b, c, F9->zero(), d, e,
                                  F9->zero(), f, g};
    std::array<FieldElem, 9> m = matmul_raw(matmul_raw(T, n), Tinv);
    bool stab = true;
    for (const auto& w : pencil) {
      std::array<FieldElem, 3> u;
      for (u32 j = 0; j < 3; ++j)
        u[j] = w[0] * m[0 * 3 + j] + w[1] * m[1 * 3 + j] + w[2] * m[2 * 3 + j];
      if (!covectors_proportional(u, w)) {
        stab = false;
        break;
      }
    }
    if (stab) stabilizers.push_back(ProjMatrix::make(F9, m));
  }
  std::sort(stabilizers.begin(), stabilizers.end(), PMatLess{});
  stabilizers.erase(std::unique(stabilizers.begin(), stabilizers.end()),
                    stabilizers.end());

  std::vector<ProjMatrix> family = {ProjMatrix::identity(F9)};
  for_each_perspectivity(P, [&](const ProjMatrix& M) {
    family.push_back(M);
    return true;
  });
  std::sort(family.begin(), family.end(), PMatLess{});
  CHECK(family.size() == q * q * q - q * q);  // q^3 - q^2 - 1 plus identity
  CHECK(stabilizers == family);
}

TEST_CASE("decomposition groups transform covariantly under conjugation") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  PlaneCurve C = PlaneCurve::fermat(F4, 3);
  ProjPoint center = ProjPoint::from_ints(F4, 0, 0, 1);
  auto base_group = decomposition_group(C, center);
  REQUIRE(base_group.size() == 3);

  // Deterministic sweep over invertible matrices with small entry codes.
  u32 tried = 0;
  for (u64 code = 0; code < 6000 && tried < 40; ++code) {
    std::array<FieldElem, 9> m;
    u64 rest = code * 2654435761u;
    for (u32 i = 0; i < 9; ++i) {
      m[i] = F4->from_index(rest % 4);
      rest /= 4;
    }
    FieldElem det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                    m[1] * (m[3] * m[8] - m[5] * m[6]) +
                    m[2] * (m[3] * m[7] - m[4] * m[6]);
    if (det.is_zero()) continue;
    ++tried;
    ProjMatrix M = ProjMatrix::make(F4, m);
    PlaneCurve moved = PlaneCurve::from_poly(C.F.compose(M.inverse()));
    auto got = decomposition_group(moved, M.apply(center));
    std::vector<ProjMatrix> want;
    for (const ProjMatrix& S : base_group) want.push_back(M * S * M.inverse());
    std::sort(want.begin(), want.end(), PMatLess{});
    CHECK(got == want);
  }
  CHECK(tried == 40);
}
