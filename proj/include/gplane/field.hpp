#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace gplane {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct FieldCtx;

// An element of a finite field GF(p^n).  Stored as the coefficient vector of
// a polynomial in the field generator g (a root of the context's modulus):
// value = c[0] + c[1]*g + ... + c[n-1]*g^(n-1), each c[i] in [0, p).
//
// Elements carry a pointer to their context; contexts are interned, so two
// elements live in the same field exactly when their pointers are equal.
class FieldElem {
 public:
  using Coeffs = boost::container::small_vector<u64, 8>;

  FieldElem() = default;
  FieldElem(const FieldCtx* F, Coeffs c) : F_(F), c_(std::move(c)) {}

  const FieldCtx* field() const { return F_; }
  const Coeffs& coeffs() const { return c_; }
  bool valid() const { return F_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the prime subfield GF(p).
  bool in_prime_field() const;
  // Value in [0, p) when in_prime_field(); throws otherwise.
  u64 prime_value() const;

  // Canonical enumeration index: sum c[i] * p^i, in [0, p^n).
  u64 index() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem inverse() const;
  FieldElem pow(u64 e) const;
  FieldElem pow_signed(i64 e) const;
  // x -> x^(p^k), the k-fold arithmetic Frobenius.
  FieldElem frobenius(u32 k = 1) const;

  std::string str() const;

 private:
  const FieldCtx* F_ = nullptr;
  Coeffs c_;
};

// Strict total order on elements of one field (by enumeration index).
struct FieldElemLess {
  bool operator()(const FieldElem& a, const FieldElem& b) const;
};

// A finite field GF(p^n), p prime, with p^n representable in 64 bits.
// Contexts are interned by (p, n, seed) and live for the whole process;
// the seed rotates the deterministic modulus search so distinct seeds give
// distinct (isomorphic) presentations.  Not thread-safe.
struct FieldCtx {
  u64 p = 0;
  u32 n = 1;
  u64 seed = 0;
  // Monic irreducible modulus of degree n over GF(p), little-endian
  // coefficients, size n+1, modulus[n] == 1.  For n == 1 it is {0, 1} and
  // is never consulted.
  std::vector<u64> modulus;

  u64 order() const { return order_; }
  u64 units() const { return order_ - 1; }

  FieldElem zero() const;
  FieldElem one() const;
  // The field generator g (class of x modulo the modulus); for n == 1 this
  // is the element 1.
  FieldElem gen() const;
  FieldElem from_int(u64 v) const;  // v mod p, as a prime-field element
  FieldElem from_coeffs(const std::vector<u64>& c) const;
  FieldElem from_index(u64 idx) const;

  // A primitive element chosen so that the family over all degrees (same p,
  // same seed) is norm-compatible; embeddings send compatible generators to
  // powers of compatible generators, which makes the embedding lattice
  // commute.  Computed lazily and cached.
  const FieldElem& compatible_generator() const;
  // Minimal polynomial over GF(p) of the compatible generator; monic of
  // degree n, little-endian coefficients in [0, p).
  const std::vector<u64>& generator_minpoly() const;
  // Canonical r-th root of unity (requires r | units()); coherent across
  // embeddings of the same lattice.
  FieldElem root_of_unity(u64 r) const;
  // Prime factorization of p^n - 1, sorted by prime.  Cached.
  const std::vector<std::pair<u64, u32>>& factored_units() const;

  static const FieldCtx* get(u64 p, u32 n, u64 seed = 0);
  // Smallest common overfield GF(p^lcm(a.n, b.n)); requires same p and seed.
  static const FieldCtx* compositum(const FieldCtx* a, const FieldCtx* b);

  // --- internals (exposed for the implementation; do not poke) ---
  u64 order_ = 0;
  // x^(n+j) mod modulus for j = 0..n-2, each row of length n.
  std::vector<std::vector<u64>> redrow_;
  mutable std::vector<u64> frob_matrix_;  // n x n row-major, lazily built
  mutable std::optional<FieldElem> gamma_;
  mutable std::vector<u64> gamma_minpoly_;
  mutable std::vector<std::pair<u64, u32>> factored_units_;

  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem frob_apply(const FieldElem& a) const;
};

// True when `sub` is a subfield of `sup` in the same lattice (same p, same
// seed, sub->n divides sup->n).
bool is_subfield(const FieldCtx* sub, const FieldCtx* sup);

// Canonical embedding along the compatible-generator lattice.  Requires
// is_subfield(x.field(), target); embeddings compose: embedding via any
// intermediate field gives the same map.
FieldElem embed(const FieldElem& x, const FieldCtx* target);

// Inverse of embed on its image: the representative of x in `target` if x
// lies in the canonical copy of `target` inside x.field(), else nullopt.
std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtx* target);

// Semantic equality across fields of one lattice: do a and b embed to the
// same element of a common overfield?  (Decided via descent to the gcd
// subfield; no large compositum is built.)
bool same_element(const FieldElem& a, const FieldElem& b);

// ---- scalar number theory helpers used across the library ----
u64 gcd_u64(u64 a, u64 b);
// lcm that throws on 64-bit overflow.
u64 lcm_u64_checked(u64 a, u64 b);
u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);
bool is_prime_u64(u64 v);
// Full factorization, sorted by prime (Miller-Rabin + Pollard-Brent).
std::vector<std::pair<u64, u32>> factor_u64(u64 v);

}  // namespace gplane
