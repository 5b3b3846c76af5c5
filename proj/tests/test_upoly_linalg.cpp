#include <random>
#include <vector>

#include "doctest.h"
#include "gplane/linalg.hpp"
#include "gplane/upoly.hpp"

using namespace gplane;

namespace {

UPoly random_poly(const FieldCtx* F, std::mt19937_64& rng, int maxdeg) {
  int deg = static_cast<int>(rng() % (maxdeg + 1));
  std::vector<FieldElem> c;
  for (int i = 0; i <= deg; ++i) c.push_back(F->from_index(rng() % F->order()));
  return UPoly(F, std::move(c));
}

}  // namespace

TEST_CASE("divrem reconstructs the dividend") {
  for (auto [p, n] : std::vector<std::pair<u64, u32>>{{3, 2}, {2, 4}, {13, 1}}) {
    const FieldCtx* F = FieldCtx::get(p, n, 0);
    std::mt19937_64 rng(101);
    int done = 0;
    while (done < 200) {
      UPoly a = random_poly(F, rng, 9);
      UPoly b = random_poly(F, rng, 5);
      if (b.is_zero()) continue;
      auto [q, r] = divrem(a, b);
      CHECK(a == (q * b + r));
      CHECK(r.degree() < b.degree());
      ++done;
    }
  }
}

TEST_CASE("gcd divides both inputs and catches common factors") {
  const FieldCtx* F = FieldCtx::get(3, 2, 0);
  std::mt19937_64 rng(103);
  int done = 0;
  while (done < 150) {
    UPoly f = random_poly(F, rng, 5);
    UPoly g = random_poly(F, rng, 5);
    UPoly h = random_poly(F, rng, 3);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    UPoly d = gcd(f * h, g * h);
    CHECK(d.is_monic());
    // h divides the gcd
    CHECK(divrem(d, h.monic()).second.is_zero());
    // gcd divides both products
    CHECK(divrem(f * h, d).second.is_zero());
    CHECK(divrem(g * h, d).second.is_zero());
    ++done;
  }
  UPoly f = random_poly(F, rng, 4);
  if (!f.is_zero()) CHECK(gcd(f, UPoly::zero(F)) == f.monic());
}

TEST_CASE("powmod agrees with naive power") {
  const FieldCtx* F = FieldCtx::get(2, 4, 0);
  std::mt19937_64 rng(107);
  for (int t = 0; t < 40; ++t) {
    UPoly b = random_poly(F, rng, 4);
    UPoly m = random_poly(F, rng, 5);
    if (m.degree() < 1) continue;
    UPoly naive = UPoly::constant(F->one());
    for (u64 e = 0; e <= 12; ++e) {
      CHECK(powmod(b, e, m) == divrem(naive, m).second);
      naive = naive * b;
    }
  }
}

TEST_CASE("roots with multiplicity: constructed factorizations") {
  const FieldCtx* F9 = FieldCtx::get(3, 2, 0);
  FieldElem g = F9->compatible_generator();
  // oracle: the generator is not a square (brute scan)
  bool square = false;
  for (u64 i = 0; i < 9; ++i)
    if (F9->from_index(i) * F9->from_index(i) == g) square = true;
  REQUIRE_FALSE(square);
  UPoly irred2 = UPoly::monomial(F9, 2, F9->one()) - UPoly::constant(g);  // x^2 - g
  FieldElem r1 = F9->from_index(4), r2 = F9->from_index(7);
  UPoly f = UPoly::linear_root(r1) * UPoly::linear_root(r1) * UPoly::linear_root(r2) * irred2;
  auto roots = roots_with_multiplicity(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].first == r1);
  CHECK(roots[0].second == 2);
  CHECK(roots[1].first == r2);
  CHECK(roots[1].second == 1);

  // multiplicity divisible by the characteristic (derivative vanishes)
  UPoly cube = UPoly::linear_root(r2) * UPoly::linear_root(r2) * UPoly::linear_root(r2);
  auto roots3 = roots_with_multiplicity(cube);
  REQUIRE(roots3.size() == 1);
  CHECK(roots3[0].first == r2);
  CHECK(roots3[0].second == 3);

  // rootless polynomial
  CHECK(roots_with_multiplicity(irred2).empty());
}

TEST_CASE("roots in large fields exercise the splitting path") {
  // GF(2^12): odd-characteristic path is skipped, trace splitting is used
  const FieldCtx* F = FieldCtx::get(2, 12, 0);
  std::vector<FieldElem> picked;
  for (u64 idx : {5ull, 77ull, 1030ull, 2048ull, 4000ull}) picked.push_back(F->from_index(idx));
  UPoly f = UPoly::constant(F->one());
  for (const FieldElem& a : picked) f = f * UPoly::linear_root(a);
  auto roots = roots_with_multiplicity(f);
  REQUIRE(roots.size() == picked.size());
  std::sort(picked.begin(), picked.end(), FieldElemLess{});
  for (size_t i = 0; i < picked.size(); ++i) {
    CHECK(roots[i].first == picked[i]);
    CHECK(roots[i].second == 1);
  }
  // GF(13^4): odd-characteristic quadratic-residue splitting
  const FieldCtx* F13_4 = FieldCtx::get(13, 4, 0);
  std::vector<FieldElem> pk;
  for (u64 idx : {2ull, 1000ull, 28000ull}) pk.push_back(F13_4->from_index(idx));
  UPoly f2 = UPoly::constant(F13_4->one());
  for (const FieldElem& a : pk) f2 = f2 * UPoly::linear_root(a);
  // add a repeated factor
  f2 = f2 * UPoly::linear_root(pk[0]);
  auto roots2 = roots_with_multiplicity(f2);
  REQUIRE(roots2.size() == 3);
  u32 total = 0;
  for (auto& [r, m] : roots2) {
    total += m;
    CHECK(f2.eval(r).is_zero());
  }
  CHECK(total == 4);
}

TEST_CASE("radical collapses multiplicities, including characteristic powers") {
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  FieldElem a = F4->from_index(2), b = F4->from_index(3);
  UPoly la = UPoly::linear_root(a), lb = UPoly::linear_root(b);
  UPoly f = la * la * la * la * lb * lb;  // (x-a)^4 (x-b)^2: derivative vanishes
  CHECK(f.derivative().is_zero());
  CHECK(radical(f) == (la * lb));
  UPoly g = la * la * lb;  // mixed multiplicities
  CHECK(radical(g) == (la * lb));
  CHECK(radical(la) == la);
}

TEST_CASE("irreducible degree profile and splitting degree") {
  const FieldCtx* F9 = FieldCtx::get(3, 2, 0);
  // find a rootless cubic x^3 + x + c by brute scan (rootless cubic => irreducible)
  UPoly cubic(F9);
  for (u64 ci = 0; ci < 9; ++ci) {
    FieldElem c = F9->from_index(ci);
    UPoly cand = UPoly::monomial(F9, 3, F9->one()) + UPoly::monomial(F9, 1, F9->one()) +
                 UPoly::constant(c);
    bool rootless = true;
    for (u64 i = 0; i < 9 && rootless; ++i)
      if (cand.eval(F9->from_index(i)).is_zero()) rootless = false;
    if (rootless) {
      cubic = cand;
      break;
    }
  }
  REQUIRE(cubic.degree() == 3);
  FieldElem g = F9->compatible_generator();
  UPoly irred2 = UPoly::monomial(F9, 2, F9->one()) - UPoly::constant(g);
  UPoly lin = UPoly::linear_root(F9->from_index(5));
  UPoly f = cubic * irred2 * lin * lin;
  auto prof = irreducible_degree_profile(f);
  REQUIRE(prof.size() == 3);
  CHECK(prof[0] == std::pair<u32, u32>{1, 1});
  CHECK(prof[1] == std::pair<u32, u32>{2, 1});
  CHECK(prof[2] == std::pair<u32, u32>{3, 1});
  CHECK(splitting_extension_degree(f) == 6);
  CHECK(splitting_extension_degree(lin) == 1);
  // Frobenius power: x^3 - t is a perfect cube in characteristic 3
  UPoly frob = UPoly::monomial(F9, 3, F9->one()) - UPoly::constant(g);
  auto prof2 = irreducible_degree_profile(frob);
  REQUIRE(prof2.size() == 1);
  CHECK(prof2[0] == std::pair<u32, u32>{1, 1});
  auto r = roots_with_multiplicity(frob);
  REQUIRE(r.size() == 1);
  CHECK(r[0].second == 3);
}

TEST_CASE("online rref: rank, span membership, nullspace") {
  const FieldCtx* F = FieldCtx::get(13, 1, 0);
  auto row = [&](std::initializer_list<u64> vals) {
    Row r;
    for (u64 v : vals) r.push_back(F->from_int(v));
    return r;
  };
  OnlineRref rr(F, 4);
  CHECK(rr.offer(row({1, 2, 3, 4})));
  CHECK(rr.offer(row({0, 1, 1, 1})));
  CHECK_FALSE(rr.offer(row({1, 3, 4, 5})));  // sum of the first two
  CHECK(rr.rank() == 2);
  CHECK(rr.in_span(row({2, 4, 6, 8})));
  CHECK_FALSE(rr.in_span(row({0, 0, 0, 1})));
  auto ns = rr.nullspace();
  REQUIRE(ns.size() == 2);
  for (const Row& v : ns) {
    // check v against both offered rows
    for (const Row& a : {row({1, 2, 3, 4}), row({0, 1, 1, 1})}) {
      FieldElem dot = F->zero();
      for (size_t i = 0; i < 4; ++i) dot += a[i] * v[i];
      CHECK(dot.is_zero());
    }
  }
}

TEST_CASE("rank is order-independent and nullspace annihilates all rows") {
  const FieldCtx* F = FieldCtx::get(3, 2, 0);
  std::mt19937_64 rng(211);
  for (int t = 0; t < 30; ++t) {
    u32 ncols = 5;
    std::vector<Row> rows;
    for (int i = 0; i < 7; ++i) {
      Row r;
      for (u32 j = 0; j < ncols; ++j) r.push_back(F->from_index(rng() % 9));
      rows.push_back(r);
    }
    u32 rk = rank_of(F, rows, ncols);
    std::vector<Row> shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(rank_of(F, shuffled, ncols) == rk);
    auto ns = nullspace_of(F, rows, ncols);
    CHECK(ns.size() == ncols - rk);
    for (const Row& v : ns) {
      for (const Row& a : rows) {
        FieldElem dot = F->zero();
        for (u32 j = 0; j < ncols; ++j) dot += a[j] * v[j];
        CHECK(dot.is_zero());
      }
    }
  }
}

TEST_CASE("solve_linear finds solutions exactly when consistent") {
  const FieldCtx* F = FieldCtx::get(2, 2, 0);
  std::mt19937_64 rng(223);
  int solvable = 0, unsolvable = 0;
  for (int t = 0; t < 120; ++t) {
    u32 nrows = 4, ncols = 3;
    std::vector<Row> A;
    for (u32 i = 0; i < nrows; ++i) {
      Row r;
      for (u32 j = 0; j < ncols; ++j) r.push_back(F->from_index(rng() % 4));
      A.push_back(r);
    }
    Row b;
    for (u32 i = 0; i < nrows; ++i) b.push_back(F->from_index(rng() % 4));
    auto x = solve_linear(F, A, b);
    if (x) {
      ++solvable;
      for (u32 i = 0; i < nrows; ++i) {
        FieldElem dot = F->zero();
        for (u32 j = 0; j < ncols; ++j) dot += A[i][j] * (*x)[j];
        CHECK(dot == b[i]);
      }
    } else {
      ++unsolvable;
      // verify inconsistency: b is not in the column span, i.e. the rank grows
      std::vector<Row> cols_aug, cols;
      for (u32 j = 0; j < ncols; ++j) {
        Row col;
        for (u32 i = 0; i < nrows; ++i) col.push_back(A[i][j]);
        cols.push_back(col);
        cols_aug.push_back(col);
      }
      cols_aug.push_back(b);
      CHECK(rank_of(F, cols_aug, nrows) == rank_of(F, cols, nrows) + 1);
    }
  }
  CHECK(solvable > 0);
  CHECK(unsolvable > 0);
}
