#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gplane/field.hpp"

using namespace gplane;

namespace {

// independent oracle: does the monic polynomial (little-endian coeffs, mod p)
// have a root in GF(p)?  brute scan, no library code involved.
bool has_prime_root(const std::vector<u64>& f, u64 p) {
  for (u64 x = 0; x < p; ++x) {
    u64 acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// independent oracle: multiplicative order via repeated multiplication
u64 brute_order(const FieldElem& x) {
  FieldElem cur = x;
  u64 ord = 1;
  while (!cur.is_one()) {
    cur = cur * x;
    ++ord;
  }
  return ord;
}

}  // namespace

TEST_CASE("modulus search is deterministic and irreducible") {
  // GF(4), seed 0: candidates x^2, x^2+1, x^2+x are reducible over GF(2);
  // the first hit is x^2+x+1.
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  CHECK(F4->modulus == std::vector<u64>{1, 1, 1});
  CHECK_FALSE(has_prime_root(F4->modulus, 2));

  // GF(9), seed 0: x^2 is reducible, x^2+1 has no root mod 3 and (being a
  // quadratic) is therefore irreducible.
  const FieldCtx* F9 = FieldCtx::get(3, 2, 0);
  CHECK(F9->modulus == std::vector<u64>{1, 0, 1});
  CHECK_FALSE(has_prime_root(F9->modulus, 3));

  // seed rotation: GF(9) with seed 2 starts the scan at x^2+2 and lands on
  // x^2+x+2 (checked by hand over GF(3)); still no prime root.
  const FieldCtx* F9b = FieldCtx::get(3, 2, 2);
  CHECK(F9b->modulus == std::vector<u64>{2, 1, 1});
  CHECK_FALSE(has_prime_root(F9b->modulus, 3));

  // interning
  CHECK(FieldCtx::get(2, 2, 0) == F4);
  CHECK(F9 != F9b);

  // quadratics and cubics are irreducible iff rootless: spot-check a few
  // searched moduli against the brute oracle
  for (auto [p, n] : std::vector<std::pair<u64, u32>>{{2, 3}, {3, 3}, {5, 2}, {13, 2}, {13, 3}}) {
    const FieldCtx* F = FieldCtx::get(p, n, 0);
    REQUIRE(F->modulus.size() == n + 1);
    CHECK(F->modulus[n] == 1);
    CHECK_FALSE(has_prime_root(F->modulus, p));
  }
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(FieldCtx::get(4, 2, 0), std::invalid_argument);   // 4 not prime
  CHECK_THROWS_AS(FieldCtx::get(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx::get(2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx::get(2, 64, 0), std::overflow_error);    // 2^64 overflows
  CHECK_THROWS_AS(FieldCtx::get(3, 41, 0), std::overflow_error);
  CHECK(FieldCtx::get(2, 63, 0)->order() == (1ull << 63));
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, n] : std::vector<std::pair<u64, u32>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {13, 1}}) {
    const FieldCtx* F = FieldCtx::get(p, n, 0);
    u64 q = F->order();
    // characteristic
    FieldElem s = F->zero();
    for (u64 i = 0; i < p; ++i) s += F->one();
    CHECK(s.is_zero());
    for (u64 i = 0; i < q; ++i) {
      FieldElem a = F->from_index(i);
      CHECK(F->from_index(a.index()) == a);
      CHECK(a.index() == i);
      CHECK((a + F->zero()) == a);
      CHECK((a * F->one()) == a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      for (u64 j = 0; j < q; ++j) {
        FieldElem b = F->from_index(j);
        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        // Frobenius is additive
        CHECK((a + b).pow(p) == (a.pow(p) + b.pow(p)));
      }
    }
    // associativity and distributivity on a deterministic sample
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      FieldElem a = F->from_index(rng() % q);
      FieldElem b = F->from_index(rng() % q);
      FieldElem c = F->from_index(rng() % q);
      CHECK(((a + b) + c) == (a + (b + c)));
      CHECK(((a * b) * c) == (a * (b * c)));
      CHECK((a * (b + c)) == (a * b + a * c));
    }
  }
}

TEST_CASE("pow matches repeated multiplication and frobenius is pow(p^k)") {
  for (auto [p, n] : std::vector<std::pair<u64, u32>>{{3, 2}, {2, 4}, {13, 2}}) {
    const FieldCtx* F = FieldCtx::get(p, n, 0);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      FieldElem a = F->from_index(rng() % F->order());
      FieldElem acc = F->one();
      for (u64 e = 0; e <= 24; ++e) {
        CHECK(a.pow(e) == acc);
        acc = acc * a;
      }
      u64 pk = 1;
      for (u32 k = 0; k < n; ++k) {
        CHECK(a.frobenius(k) == a.pow(pk));
        pk *= p;
      }
      if (!a.is_zero()) {
        CHECK(a.pow_signed(-3) == a.inverse().pow(3));
        CHECK((a.pow_signed(-5) * a.pow(5)).is_one());
      }
    }
  }
}

TEST_CASE("inverses across a mid-size prime field and GF(169)") {
  const FieldCtx* F169 = FieldCtx::get(13, 2, 0);
  for (u64 i = 1; i < F169->order(); ++i) {
    FieldElem a = F169->from_index(i);
    CHECK((a * a.inverse()).is_one());
  }
  // large prime field: arithmetic stays exact near 2^61
  const FieldCtx* Fp = FieldCtx::get((1ull << 61) - 1, 1, 0);
  FieldElem m1 = -Fp->one();
  CHECK((m1 * m1).is_one());
  FieldElem half = Fp->from_int(2).inverse();
  CHECK(half == Fp->from_int(((1ull << 61) - 1 + 1) / 2));
  CHECK((half * Fp->from_int(2)).is_one());
}

TEST_CASE("compatible generator is primitive (brute order oracle)") {
  // GF(16): order must be exactly 15; GF(9): exactly 8
  CHECK(brute_order(FieldCtx::get(2, 4, 0)->compatible_generator()) == 15);
  CHECK(brute_order(FieldCtx::get(3, 2, 0)->compatible_generator()) == 8);
  // GF(3^6): check with pow against the factorization 728 = 2^3 * 7 * 13
  const FieldCtx* F729 = FieldCtx::get(3, 6, 0);
  const FieldElem& g = F729->compatible_generator();
  CHECK(g.pow(728).is_one());
  for (u64 r : {2ull, 7ull, 13ull}) CHECK_FALSE(g.pow(728 / r).is_one());
  CHECK(F729->generator_minpoly().size() == 7);
}

TEST_CASE("roots of unity: frozen small-field values") {
  // GF(13): least primitive root mod 13 is 2 (brute-checkable), and the
  // canonical generator of a prime field is exactly that element.
  const FieldCtx* F13 = FieldCtx::get(13, 1, 0);
  CHECK(F13->compatible_generator() == F13->from_int(2));
  CHECK(F13->root_of_unity(4) == F13->from_int(8));    // 2^3
  CHECK(F13->root_of_unity(3) == F13->from_int(3));    // 2^4 = 16 = 3
  CHECK(F13->root_of_unity(12) == F13->from_int(2));
  CHECK(brute_order(F13->root_of_unity(4)) == 4);
  CHECK_THROWS_AS(F13->root_of_unity(5), std::invalid_argument);
  // orders are exact in extension fields too
  const FieldCtx* F16 = FieldCtx::get(2, 4, 0);
  for (u64 r : {1ull, 3ull, 5ull, 15ull}) CHECK(brute_order(F16->root_of_unity(r)) == (r == 1 ? 1 : r));
}

TEST_CASE("embeddings are injective homomorphisms fixing the prime field") {
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  const FieldCtx* F16 = FieldCtx::get(2, 4, 0);
  const FieldCtx* F64 = FieldCtx::get(2, 6, 0);
  for (const FieldCtx* big : {F16, F64}) {
    std::set<u64> images;
    for (u64 i = 0; i < 4; ++i) {
      FieldElem a = F4->from_index(i);
      images.insert(embed(a, big).index());
      for (u64 j = 0; j < 4; ++j) {
        FieldElem b = F4->from_index(j);
        CHECK(embed(a + b, big) == (embed(a, big) + embed(b, big)));
        CHECK(embed(a * b, big) == (embed(a, big) * embed(b, big)));
      }
    }
    CHECK(images.size() == 4);
    CHECK(embed(F4->one(), big) == big->one());
    CHECK(embed(F4->zero(), big) == big->zero());
  }
  const FieldCtx* F9 = FieldCtx::get(3, 2, 0);
  const FieldCtx* F81 = FieldCtx::get(3, 4, 0);
  for (u64 i = 0; i < 9; ++i) {
    FieldElem a = F9->from_index(i);
    for (u64 j = 0; j < 9; ++j) {
      FieldElem b = F9->from_index(j);
      CHECK(embed(a * b, F81) == (embed(a, F81) * embed(b, F81)));
      CHECK(embed(a + b, F81) == (embed(a, F81) + embed(b, F81)));
    }
    CHECK(embed(a.frobenius(), F81) == embed(a, F81).pow(3));
  }
  CHECK_THROWS_AS(embed(F9->one(), FieldCtx::get(3, 3, 0)), std::invalid_argument);
}

TEST_CASE("embedding lattice commutes (tower vs direct)") {
  const FieldCtx* F2 = FieldCtx::get(2, 1, 0);
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  const FieldCtx* F16 = FieldCtx::get(2, 4, 0);
  const FieldCtx* F256 = FieldCtx::get(2, 8, 0);
  for (u64 i = 0; i < 4; ++i) {
    FieldElem a = F4->from_index(i);
    CHECK(embed(embed(a, F16), F256) == embed(a, F256));
  }
  for (u64 i = 0; i < 2; ++i) {
    FieldElem a = F2->from_index(i);
    CHECK(embed(embed(a, F4), F256) == embed(a, F256));
    CHECK(embed(embed(a, F16), F256) == embed(a, F256));
  }
  const FieldCtx* F9 = FieldCtx::get(3, 2, 0);
  const FieldCtx* F81 = FieldCtx::get(3, 4, 0);
  const FieldCtx* F3_8 = FieldCtx::get(3, 8, 0);
  for (u64 i = 0; i < 9; ++i) {
    FieldElem a = F9->from_index(i);
    CHECK(embed(embed(a, F81), F3_8) == embed(a, F3_8));
  }
  // roots of unity are coherent along the lattice
  CHECK(embed(F4->root_of_unity(3), F16) == F16->root_of_unity(3));
  CHECK(embed(F9->root_of_unity(8), F81) == F81->root_of_unity(8));
}

TEST_CASE("descent inverts embedding and detects non-members") {
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  const FieldCtx* F64 = FieldCtx::get(2, 6, 0);
  u32 members = 0;
  for (u64 i = 0; i < 64; ++i) {
    FieldElem x = F64->from_index(i);
    auto d = try_descend(x, F4);
    if (d) {
      ++members;
      CHECK(embed(*d, F64) == x);
    }
  }
  CHECK(members == 4);  // exactly the copy of GF(4) inside GF(64)
  for (u64 i = 0; i < 4; ++i) {
    FieldElem a = F4->from_index(i);
    auto back = try_descend(embed(a, F64), F4);
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
}

TEST_CASE("cross-field comparison via gcd descent") {
  const FieldCtx* F4 = FieldCtx::get(2, 2, 0);
  const FieldCtx* F16 = FieldCtx::get(2, 4, 0);
  const FieldCtx* F64 = FieldCtx::get(2, 6, 0);
  for (u64 i = 0; i < 4; ++i) {
    FieldElem a = F4->from_index(i);
    CHECK(same_element(embed(a, F16), embed(a, F64)));
    CHECK(same_element(embed(a, F16), a));
  }
  // gcd(4, 6) = 2: a generator of GF(16) is not in GF(64) at all
  FieldElem gen16 = F16->compatible_generator();
  FieldElem gen64 = F64->compatible_generator();
  CHECK_FALSE(same_element(gen16, gen64));
  // different seeds are different lattices
  const FieldCtx* F16s = FieldCtx::get(2, 4, 99);
  CHECK_THROWS_AS(same_element(F16->one(), F16s->one()), std::invalid_argument);
  CHECK_FALSE(is_subfield(F16s, F64));

  CHECK(FieldCtx::compositum(F16, F64) == FieldCtx::get(2, 12, 0));
}

TEST_CASE("scalar factorization and primality") {
  CHECK(factor_u64(1).empty());
  CHECK(factor_u64(12) == std::vector<std::pair<u64, u32>>{{2, 2}, {3, 1}});
  CHECK(factor_u64(728) == std::vector<std::pair<u64, u32>>{{2, 3}, {7, 1}, {13, 1}});
  // recomposition + small-trial primality oracle on assorted values
  std::mt19937_64 rng(23);
  std::vector<u64> samples = {2, 3, 4, 97, 561, 41041, (1ull << 32) - 1, 14348906ull,
                              powmod_u64(3, 15, ~0ull) - 1};
  u64 big = 1000000007ull * 998244353ull;
  samples.push_back(big);
  for (int t = 0; t < 30; ++t) samples.push_back(rng() % 100000000 + 2);
  for (u64 v : samples) {
    auto f = factor_u64(v);
    u128 prod = 1;
    for (auto [q, k] : f) {
      for (u32 i = 0; i < k; ++i) prod *= q;
      for (u64 d = 2; d * d <= q && d < 1000; ++d) CHECK(q % d != 0);
    }
    CHECK(prod == v);
  }
  auto fb = factor_u64(big);
  CHECK(fb == std::vector<std::pair<u64, u32>>{{998244353ull, 1}, {1000000007ull, 1}});
  // Miller-Rabin against brute division
  for (u64 v = 0; v < 2000; ++v) {
    bool brute = v >= 2;
    for (u64 d = 2; d * d <= v; ++d)
      if (v % d == 0) {
        brute = false;
        break;
      }
    CHECK(is_prime_u64(v) == brute);
  }
  CHECK(is_prime_u64((1ull << 31) - 1));
  CHECK_FALSE(is_prime_u64((1ull << 32) - 1));
}
