#include "gplane/field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "gplane/check.hpp"
#include "gplane/upoly.hpp"

namespace gplane {

// ---------------------------------------------------------------------------
// scalar number theory
// ---------------------------------------------------------------------------

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64_checked(u64 a, u64 b) {
  check(a != 0 && b != 0, "lcm of zero");
  u64 g = gcd_u64(a, b);
  u128 l = static_cast<u128>(a / g) * b;
  if (l > ~static_cast<u64>(0)) throw std::overflow_error("lcm overflows 64 bits");
  return static_cast<u64>(l);
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  check(m != 0, "powmod modulus zero");
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 v) {
  if (v < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (v % q == 0) return v == q;
  }
  u64 d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, v);
      if (x == v - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

u64 pollard_brent(u64 v) {
  // v is composite, odd, not a prime power of a tiny prime; returns a
  // nontrivial factor.  Deterministic: fixed start points, increasing c.
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    auto f = [&](u64 t) { return (mulmod_u64(t, t, v) + c) % v; };
    y = f(x);
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = f(y);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor; try next c
      d = gcd_u64(diff, v);
    }
    if (d != 1 && d != v) return d;
  }
}

void factor_rec(u64 v, std::vector<u64>& out) {
  if (v == 1) return;
  if (is_prime_u64(v)) {
    out.push_back(v);
    return;
  }
  u64 d = pollard_brent(v);
  factor_rec(d, out);
  factor_rec(v / d, out);
}

}  // namespace

std::vector<std::pair<u64, u32>> factor_u64(u64 v) {
  check(v >= 1, "factor_u64 of zero");
  std::vector<u64> primes;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull,
                67ull, 71ull, 73ull, 79ull, 83ull, 89ull, 97ull}) {
    while (v % q == 0) {
      primes.push_back(q);
      v /= q;
    }
  }
  factor_rec(v, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, u32>> out;
  for (u64 q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.push_back({q, 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// raw polynomials over GF(p) (little-endian u64 coefficient vectors)
// only used for contexts with n >= 2, hence p < 2^32 and products fit u64
// ---------------------------------------------------------------------------

namespace {

using PVec = std::vector<u64>;

void pnorm(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const PVec& a) { return static_cast<int>(a.size()) - 1; }

u64 modinv_prime(u64 a, u64 p) {
  check(a % p != 0, "inverse of zero mod p");
  return powmod_u64(a % p, p - 2, p);
}

PVec pmul(const PVec& a, const PVec& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
  }
  PVec out(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<u64>(acc[i] % p);
  pnorm(out);
  return out;
}

// a mod b (b nonzero); in-place remainder
PVec pmod(PVec a, const PVec& b, u64 p) {
  check(!b.empty(), "pmod by zero");
  u64 binv = modinv_prime(b.back(), p);
  while (pdeg(a) >= pdeg(b)) {
    u64 c = mulmod_u64(a.back(), binv, p);
    size_t shift = a.size() - b.size();
    if (c != 0) {
      for (size_t i = 0; i < b.size(); ++i) {
        u64 sub = mulmod_u64(c, b[i], p);
        u64& t = a[shift + i];
        t = (t + p - sub) % p;
      }
    }
    a.pop_back();
    pnorm(a);
  }
  return a;
}

PVec pgcd(PVec a, PVec b, u64 p) {
  pnorm(a);
  pnorm(b);
  while (!b.empty()) {
    PVec r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    u64 inv = modinv_prime(a.back(), p);
    for (u64& c : a) c = mulmod_u64(c, inv, p);
  }
  return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& f, u64 p) {
  return pmod(pmul(a, b, p), f, p);
}

PVec ppowmod(PVec base, u64 e, const PVec& f, u64 p) {
  PVec r = {1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool is_irreducible_modp(const PVec& f, u64 p) {
  int n = pdeg(f);
  check(n >= 2 && f.back() == 1, "irreducibility test expects monic deg >= 2");
  PVec cur = ppowmod({0, 1}, p, f, p);  // x^p mod f
  for (int k = 1; k <= n / 2; ++k) {
    if (k > 1) cur = ppowmod(cur, p, f, p);  // x^(p^k) mod f
    PVec diff = cur;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    pnorm(diff);
    PVec g = pgcd(f, diff, p);
    if (pdeg(g) != 0) return false;
  }
  return true;
}

// extended euclid: returns s with s*a == gcd (mod f); requires gcd constant
PVec pinv_mod(const PVec& a, const PVec& f, u64 p) {
  PVec r0 = f, r1 = pmod(a, f, p);
  PVec s0 = {}, s1 = {1};
  check(!r1.empty(), "inverse of zero element");
  while (!r1.empty()) {
    // q = r0 / r1
    PVec q;
    {
      PVec rem = r0;
      u64 linv = modinv_prime(r1.back(), p);
      q.assign(std::max<size_t>(1, rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1), 0);
      while (pdeg(rem) >= pdeg(r1)) {
        u64 c = mulmod_u64(rem.back(), linv, p);
        size_t shift = rem.size() - r1.size();
        q[shift] = c;
        for (size_t i = 0; i < r1.size(); ++i) {
          u64 sub = mulmod_u64(c, r1[i], p);
          u64& t = rem[shift + i];
          t = (t + p - sub) % p;
        }
        rem.pop_back();
        pnorm(rem);
      }
      pnorm(q);
      r0 = std::move(r1);
      r1 = std::move(rem);
    }
    // (s0, s1) = (s1, s0 - q*s1)
    PVec qs = pmul(q, s1, p);
    PVec s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
    pnorm(s2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  check(pdeg(r0) == 0, "pinv_mod: inputs not coprime");
  u64 scale = modinv_prime(r0[0], p);
  for (u64& c : s0) c = mulmod_u64(c, scale, p);
  return pmod(std::move(s0), f, p);
}

// dense m x m matrix inverse mod p; returns empty on singular
std::vector<u64> mat_inv_modp(const std::vector<u64>& A, u32 m, u64 p) {
  std::vector<u64> a = A;
  std::vector<u64> inv(static_cast<size_t>(m) * m, 0);
  for (u32 i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1;
  for (u32 col = 0; col < m; ++col) {
    u32 piv = m;
    for (u32 r = col; r < m; ++r) {
      if (a[static_cast<size_t>(r) * m + col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv == m) return {};
    for (u32 j = 0; j < m; ++j) {
      std::swap(a[static_cast<size_t>(col) * m + j], a[static_cast<size_t>(piv) * m + j]);
      std::swap(inv[static_cast<size_t>(col) * m + j], inv[static_cast<size_t>(piv) * m + j]);
    }
    u64 d = modinv_prime(a[static_cast<size_t>(col) * m + col], p);
    for (u32 j = 0; j < m; ++j) {
      a[static_cast<size_t>(col) * m + j] = mulmod_u64(a[static_cast<size_t>(col) * m + j], d, p);
      inv[static_cast<size_t>(col) * m + j] = mulmod_u64(inv[static_cast<size_t>(col) * m + j], d, p);
    }
    for (u32 r = 0; r < m; ++r) {
      if (r == col) continue;
      u64 c = a[static_cast<size_t>(r) * m + col];
      if (c == 0) continue;
      for (u32 j = 0; j < m; ++j) {
        u64 sub = mulmod_u64(c, a[static_cast<size_t>(col) * m + j], p);
        u64& t = a[static_cast<size_t>(r) * m + j];
        t = (t + p - sub) % p;
        u64 sub2 = mulmod_u64(c, inv[static_cast<size_t>(col) * m + j], p);
        u64& t2 = inv[static_cast<size_t>(r) * m + j];
        t2 = (t2 + p - sub2) % p;
      }
    }
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElem
// ---------------------------------------------------------------------------

bool FieldElem::is_zero() const {
  check(F_ != nullptr, "null element");
  for (u64 v : c_)
    if (v) return false;
  return true;
}

bool FieldElem::is_one() const {
  check(F_ != nullptr, "null element");
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

bool FieldElem::in_prime_field() const {
  check(F_ != nullptr, "null element");
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

u64 FieldElem::prime_value() const {
  check(in_prime_field(), "element not in prime field");
  return c_[0];
}

u64 FieldElem::index() const {
  check(F_ != nullptr, "null element");
  u64 acc = 0, pw = 1;
  for (u32 i = 0; i < F_->n; ++i) {
    acc += c_[i] * pw;
    if (i + 1 < F_->n) pw *= F_->p;
  }
  return acc;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check(F_ != nullptr && F_ == o.F_, "field mismatch in +");
  Coeffs out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    u64 s = c_[i] + o.c_[i];
    out[i] = s >= F_->p ? s - F_->p : s;
  }
  return FieldElem(F_, std::move(out));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check(F_ != nullptr && F_ == o.F_, "field mismatch in -");
  Coeffs out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    u64 s = c_[i] + F_->p - o.c_[i];
    out[i] = s >= F_->p ? s - F_->p : s;
  }
  return FieldElem(F_, std::move(out));
}

FieldElem FieldElem::operator-() const {
  check(F_ != nullptr, "null element");
  Coeffs out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] == 0 ? 0 : F_->p - c_[i];
  return FieldElem(F_, std::move(out));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check(F_ != nullptr && F_ == o.F_, "field mismatch in *");
  return F_->mul(*this, o);
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  check(F_ != nullptr && F_ == o.F_, "field mismatch in ==");
  return c_ == o.c_;
}

FieldElem FieldElem::inverse() const {
  check(F_ != nullptr, "null element");
  return F_->inv(*this);
}

FieldElem FieldElem::pow(u64 e) const {
  check(F_ != nullptr, "null element");
  FieldElem r = F_->one();
  FieldElem b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FieldElem FieldElem::pow_signed(i64 e) const {
  if (e >= 0) return pow(static_cast<u64>(e));
  u64 mag = static_cast<u64>(-(e + 1)) + 1;
  return inverse().pow(mag);
}

FieldElem FieldElem::frobenius(u32 k) const {
  check(F_ != nullptr, "null element");
  k %= F_->n;
  FieldElem r = *this;
  for (u32 i = 0; i < k; ++i) r = F_->frob_apply(r);
  return r;
}

std::string FieldElem::str() const {
  if (!F_) return "<null>";
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i];
  }
  os << "]@" << F_->p;
  if (F_->n > 1) os << "^" << F_->n;
  return os.str();
}

bool FieldElemLess::operator()(const FieldElem& a, const FieldElem& b) const {
  check(a.field() != nullptr && a.field() == b.field(), "field mismatch in order");
  return a.index() < b.index();
}

// ---------------------------------------------------------------------------
// FieldCtx basic operations
// ---------------------------------------------------------------------------

FieldElem FieldCtx::zero() const { return FieldElem(this, FieldElem::Coeffs(n, 0)); }

FieldElem FieldCtx::one() const {
  FieldElem::Coeffs c(n, 0);
  c[0] = 1;
  return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::gen() const {
  if (n == 1) return one();
  FieldElem::Coeffs c(n, 0);
  c[1] = 1;
  return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::from_int(u64 v) const {
  FieldElem::Coeffs c(n, 0);
  c[0] = v % p;
  return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::from_coeffs(const std::vector<u64>& v) const {
  require(v.size() <= n, "coefficient vector longer than field degree");
  FieldElem::Coeffs c(n, 0);
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i] % p;
  return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::from_index(u64 idx) const {
  check(idx < order_, "element index out of range");
  FieldElem::Coeffs c(n, 0);
  for (u32 i = 0; i < n; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return FieldElem(this, std::move(c));
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  if (n == 1)
    return FieldElem(this, {mulmod_u64(a.coeffs()[0], b.coeffs()[0], p)});
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::array<u128, 127> acc{};
  u32 plen = 2 * n - 1;
  for (u32 i = 0; i < n; ++i) {
    if (ac[i] == 0) continue;
    for (u32 j = 0; j < n; ++j) acc[i + j] += ac[i] * bc[j];
  }
  // fold degrees n..2n-2 down via precomputed reduction rows
  for (u32 idx = plen; idx-- > n;) {
    u64 c = static_cast<u64>(acc[idx] % p);
    if (c == 0) continue;
    const auto& row = redrow_[idx - n];
    for (u32 t = 0; t < n; ++t) acc[t] += static_cast<u128>(c) * row[t];
  }
  FieldElem::Coeffs out(n);
  for (u32 t = 0; t < n; ++t) out[t] = static_cast<u64>(acc[t] % p);
  return FieldElem(this, std::move(out));
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  check(!a.is_zero(), "inverse of zero");
  if (n == 1) return FieldElem(this, {powmod_u64(a.coeffs()[0], p - 2, p)});
  PVec av(a.coeffs().begin(), a.coeffs().end());
  pnorm(av);
  PVec iv = pinv_mod(av, modulus, p);
  FieldElem::Coeffs out(n, 0);
  for (size_t i = 0; i < iv.size(); ++i) out[i] = iv[i];
  return FieldElem(this, std::move(out));
}

FieldElem FieldCtx::frob_apply(const FieldElem& a) const {
  if (n == 1) return a;
  if (frob_matrix_.empty()) {
    // row i = coefficients of (g^p)^i
    FieldElem gp = gen().pow(p);
    frob_matrix_.assign(static_cast<size_t>(n) * n, 0);
    FieldElem cur = one();
    for (u32 i = 0; i < n; ++i) {
      for (u32 j = 0; j < n; ++j) frob_matrix_[static_cast<size_t>(i) * n + j] = cur.coeffs()[j];
      if (i + 1 < n) cur = cur * gp;
    }
  }
  std::array<u128, 64> acc{};
  const auto& ac = a.coeffs();
  for (u32 i = 0; i < n; ++i) {
    if (ac[i] == 0) continue;
    const u64* row = &frob_matrix_[static_cast<size_t>(i) * n];
    for (u32 j = 0; j < n; ++j) acc[j] += static_cast<u128>(ac[i]) * row[j];
  }
  FieldElem::Coeffs out(n);
  for (u32 j = 0; j < n; ++j) out[j] = static_cast<u64>(acc[j] % p);
  return FieldElem(this, std::move(out));
}

const std::vector<std::pair<u64, u32>>& FieldCtx::factored_units() const {
  if (factored_units_.empty() && units() > 1) factored_units_ = factor_u64(units());
  return factored_units_;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

namespace {

std::map<std::tuple<u64, u32, u64>, std::unique_ptr<FieldCtx>>& registry() {
  static std::map<std::tuple<u64, u32, u64>, std::unique_ptr<FieldCtx>> r;
  return r;
}

}  // namespace

const FieldCtx* FieldCtx::get(u64 p, u32 n, u64 seed) {
  require(n >= 1, "field degree must be >= 1");
  require(p >= 2 && is_prime_u64(p), "field characteristic must be prime");
  u128 ord = 1;
  for (u32 i = 0; i < n; ++i) {
    ord *= p;
    if (ord > ~static_cast<u64>(0))
      throw std::overflow_error("field order p^n does not fit in 64 bits");
  }
  auto key = std::make_tuple(p, n, seed);
  auto& reg = registry();
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();

  auto ctx = std::make_unique<FieldCtx>();
  ctx->p = p;
  ctx->n = n;
  ctx->seed = seed;
  ctx->order_ = static_cast<u64>(ord);
  if (n == 1) {
    ctx->modulus = {0, 1};
  } else {
    u64 total = ctx->order_;
    bool found = false;
    for (u64 t = 0; t < total && t < 20000000ull; ++t) {
      u64 v = static_cast<u64>((static_cast<u128>(seed % total) + t) % total);
      PVec f(n + 1, 0);
      f[n] = 1;
      for (u32 i = 0; i < n; ++i) {
        f[i] = v % p;
        v /= p;
      }
      if (is_irreducible_modp(f, p)) {
        ctx->modulus = f;
        found = true;
        break;
      }
    }
    check(found, "no irreducible modulus found");
    // reduction rows x^(n+j) mod modulus
    ctx->redrow_.resize(n - 1);
    PVec row0(n, 0);
    for (u32 i = 0; i < n; ++i) row0[i] = (p - ctx->modulus[i] % p) % p;
    ctx->redrow_[0] = row0;
    for (u32 j = 1; j + 1 < n; ++j) {
      const PVec& prev = ctx->redrow_[j - 1];
      PVec row(n, 0);
      u64 top = prev[n - 1];
      for (u32 i = n - 1; i >= 1; --i) row[i] = prev[i - 1];
      row[0] = 0;
      if (top) {
        for (u32 i = 0; i < n; ++i)
          row[i] = (row[i] + mulmod_u64(top, row0[i], p)) % p;
      }
      ctx->redrow_[j] = row;
    }
  }
  const FieldCtx* out = ctx.get();
  reg.emplace(key, std::move(ctx));
  return out;
}

const FieldCtx* FieldCtx::compositum(const FieldCtx* a, const FieldCtx* b) {
  require(a && b && a->p == b->p && a->seed == b->seed,
          "compositum requires fields of one lattice");
  return get(a->p, static_cast<u32>(lcm_u64_checked(a->n, b->n)), a->seed);
}

bool is_subfield(const FieldCtx* sub, const FieldCtx* sup) {
  return sub && sup && sub->p == sup->p && sub->seed == sup->seed &&
         sup->n % sub->n == 0;
}

// ---------------------------------------------------------------------------
// compatible generator (norm-compatible primitive element lattice)
// ---------------------------------------------------------------------------

namespace {

bool is_primitive(const FieldElem& x, const FieldCtx* F) {
  if (x.is_zero()) return false;
  u64 N = F->units();
  if (N == 1) return true;
  for (const auto& [q, _] : F->factored_units()) {
    if (x.pow(N / q).is_one()) return false;
  }
  return true;
}

// inverse of a mod m for coprime a, m (extended euclid)
u64 inv_mod_u64(u64 a, u64 m) {
  i64 t0 = 0, t1 = 1;
  i64 r0 = static_cast<i64>(m), r1 = static_cast<i64>(a % m);
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  check(r0 == 1, "inv_mod_u64: arguments not coprime");
  i64 mm = static_cast<i64>(m);
  return static_cast<u64>((t0 % mm + mm) % mm);
}

// baby-step giant-step in the cyclic group <g> of prime order q
u64 bsgs_prime(const FieldElem& g, const FieldElem& h, u64 q) {
  if (h.is_one()) return 0;
  u64 m = 1;
  while (m * m < q) ++m;
  std::unordered_map<u64, u64> table;
  table.reserve(m * 2);
  FieldElem cur = g.field()->one();
  for (u64 j = 0; j < m; ++j) {
    table.emplace(cur.index(), j);
    cur = cur * g;
  }
  FieldElem giant = g.pow((q - m % q) % q);  // g^{-m}
  FieldElem y = h;
  for (u64 i = 0; i <= m; ++i) {
    auto it = table.find(y.index());
    if (it != table.end()) return (i * m + it->second) % q;
    y = y * giant;
  }
  fail("bsgs: target not in subgroup");
}

// discrete log of target base `base`, where base has exact order `ord`
u64 dlog_cyclic(const FieldElem& base, const FieldElem& target, u64 ord) {
  auto fac = factor_u64(ord);
  u64 x = 0, xmod = 1;
  for (const auto& [q, k] : fac) {
    u64 qk = 1;
    for (u32 i = 0; i < k; ++i) qk *= q;
    FieldElem b = base.pow(ord / qk);  // order qk
    FieldElem t = target.pow(ord / qk);
    FieldElem gq = b.pow(qk / q);  // order q
    FieldElem binv = b.inverse();
    u64 y = 0, qi = 1;
    for (u32 i = 0; i < k; ++i) {
      FieldElem h = (t * binv.pow(y)).pow(qk / (qi * q));
      u64 d = bsgs_prime(gq, h, q);
      y += d * qi;
      qi *= q;
    }
    if (xmod == 1) {
      x = y % qk;
      xmod = qk;
    } else {
      // CRT with coprime moduli xmod and qk
      u64 diff = (y % qk + qk - x % qk) % qk;
      u64 t2 = mulmod_u64(diff, inv_mod_u64(xmod % qk, qk), qk);
      x = x + xmod * t2;
      xmod *= qk;
    }
  }
  check(base.pow(x) == target, "dlog verification failed");
  return x;
}

struct CrtClass {
  u64 r, m;  // the residue class r mod m; empty when m == 0
};

// merge x ≡ a.r (a.m) with x ≡ r2 (m2); returns m == 0 when inconsistent
CrtClass crt_merge(CrtClass a, u64 r2, u64 m2) {
  u64 g = gcd_u64(a.m, m2);
  u64 d = (r2 % g + g - a.r % g) % g;
  if (d != 0) return {0, 0};
  u64 l = lcm_u64_checked(a.m, m2);
  // t ≡ (r2 - a.r)/g * inv(a.m/g) (mod m2/g)
  u64 m2g = m2 / g;
  if (m2g == 1) return {a.r % l, l};
  u64 diff = (r2 % m2 + m2 - a.r % m2) % m2;
  u64 diffg = diff / g;
  u64 amg = (a.m / g) % m2g;
  u64 t = mulmod_u64(diffg % m2g, inv_mod_u64(amg, m2g), m2g);
  u64 x = static_cast<u64>((static_cast<u128>(a.m) * t + a.r) % l);
  return {x, l};
}

std::vector<u64> minpoly_over_prime(const FieldElem& x) {
  const FieldCtx* F = x.field();
  std::vector<FieldElem> conj;
  FieldElem y = x;
  do {
    conj.push_back(y);
    y = y.frobenius();
  } while (!(y == x));
  check(F->n % conj.size() == 0, "conjugate orbit size must divide n");
  std::vector<FieldElem> poly = {F->one()};
  for (const FieldElem& r : conj) {
    std::vector<FieldElem> next(poly.size() + 1, F->zero());
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * r;
    }
    poly = std::move(next);
  }
  std::vector<u64> out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    check(poly[i].in_prime_field(), "minpoly coefficient outside prime field");
    out[i] = poly[i].prime_value();
  }
  return out;
}

}  // namespace

const FieldElem& FieldCtx::compatible_generator() const {
  if (gamma_.has_value()) return *gamma_;
  u64 N = units();
  // least primitive element
  FieldElem theta = zero();
  for (u64 idx = 1; idx < order_; ++idx) {
    FieldElem x = from_index(idx);
    if (is_primitive(x, this)) {
      theta = x;
      break;
    }
  }
  check(!theta.is_zero(), "no primitive element found");

  if (n == 1) {
    gamma_ = theta;
    gamma_minpoly_ = {(p - theta.coeffs()[0] % p) % p, 1};
    return *gamma_;
  }

  // norm conditions toward each maximal proper subfield
  struct Cond {
    u64 mod;
    std::vector<u64> residues;
  };
  std::vector<Cond> conds;
  std::vector<u32> prime_divisors;
  {
    u32 m = n;
    for (u32 q = 2; q <= m; ++q) {
      if (m % q == 0) {
        prime_divisors.push_back(q);
        while (m % q == 0) m /= q;
      }
    }
  }
  for (u32 ell : prime_divisors) {
    u32 d = n / ell;
    const FieldCtx* sub = FieldCtx::get(p, d, seed);
    sub->compatible_generator();  // force
    const std::vector<u64>& Pd = sub->gamma_minpoly_;
    UPoly f = UPoly::from_prime_coeffs(this, Pd);
    auto roots = roots_with_multiplicity(f);
    check(roots.size() == d, "subfield minpoly must split with distinct roots");
    const FieldElem& xi = roots[0].first;
    u64 Nd = sub->units();
    FieldElem theta_d = theta.pow(N / Nd);
    u64 c = dlog_cyclic(theta_d, xi, Nd);
    Cond cond;
    cond.mod = Nd;
    u64 r = c % Nd;
    for (u32 i = 0; i < d; ++i) {
      cond.residues.push_back(r);
      r = mulmod_u64(r, p % Nd, Nd);
    }
    std::sort(cond.residues.begin(), cond.residues.end());
    cond.residues.erase(std::unique(cond.residues.begin(), cond.residues.end()),
                        cond.residues.end());
    conds.push_back(std::move(cond));
  }

  // enumerate residue combinations, CRT-merge, take the least unit exponent
  u64 best = 0;
  bool have_best = false;
  std::vector<size_t> pick(conds.size(), 0);
  while (true) {
    CrtClass cls{0, 1};
    bool ok = true;
    for (size_t i = 0; i < conds.size(); ++i) {
      cls = crt_merge(cls, conds[i].residues[pick[i]], conds[i].mod);
      if (cls.m == 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (u64 j = 0; j < 200000; ++j) {
        u128 e = static_cast<u128>(cls.r) + static_cast<u128>(j) * cls.m;
        if (e > N) break;
        u64 e64 = static_cast<u64>(e);
        if (e64 >= 1 && gcd_u64(e64, N) == 1) {
          if (!have_best || e64 < best) {
            best = e64;
            have_best = true;
          }
          break;
        }
      }
    }
    // next combination
    size_t i = 0;
    for (; i < conds.size(); ++i) {
      if (++pick[i] < conds[i].residues.size()) break;
      pick[i] = 0;
    }
    if (i == conds.size()) break;
  }
  check(have_best, "no compatible generator exponent found");
  FieldElem gamma = theta.pow(best);
  check(is_primitive(gamma, this), "compatible generator must be primitive");
  // verify the norm conditions against the cached subfield minpolys
  for (u32 ell : prime_divisors) {
    u32 d = n / ell;
    const FieldCtx* sub = FieldCtx::get(p, d, seed);
    u64 Nd = sub->units();
    check(minpoly_over_prime(gamma.pow(N / Nd)) == sub->gamma_minpoly_,
          "norm compatibility violated");
  }
  gamma_minpoly_ = minpoly_over_prime(gamma);
  check(gamma_minpoly_.size() == static_cast<size_t>(n) + 1,
        "compatible generator must have full degree");
  gamma_ = gamma;
  return *gamma_;
}

const std::vector<u64>& FieldCtx::generator_minpoly() const {
  compatible_generator();
  return gamma_minpoly_;
}

FieldElem FieldCtx::root_of_unity(u64 r) const {
  require(r >= 1 && units() % r == 0, "order must divide p^n - 1");
  return compatible_generator().pow(units() / r);
}

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

namespace {

struct EmbedData {
  u32 m = 0, n = 0;
  u64 p = 0;
  std::vector<u64> E;     // m x n: row i = coords of image of g_src^i
  std::vector<u64> R;     // rref of E, m x n
  std::vector<u32> rpiv;  // pivot columns of R
  std::vector<u64> T;     // m x m with R = T * E
};

std::map<std::pair<const FieldCtx*, const FieldCtx*>, EmbedData>& embed_cache() {
  static std::map<std::pair<const FieldCtx*, const FieldCtx*>, EmbedData> c;
  return c;
}

const EmbedData& get_embed(const FieldCtx* src, const FieldCtx* dst) {
  auto key = std::make_pair(src, dst);
  auto& cache = embed_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  u32 m = src->n, n = dst->n;
  u64 p = src->p;
  EmbedData ed;
  ed.m = m;
  ed.n = n;
  ed.p = p;

  // image of the source field generator under the canonical embedding
  FieldElem img_g = dst->zero();
  if (m == 1) {
    img_g = dst->one();
  } else {
    const FieldElem& gs = src->compatible_generator();
    const FieldElem& gd = dst->compatible_generator();
    FieldElem delta = gd.pow(dst->units() / src->units());
    // express g_src in the power basis of gamma_src
    std::vector<u64> B(static_cast<size_t>(m) * m, 0);
    FieldElem cur = src->one();
    for (u32 i = 0; i < m; ++i) {
      for (u32 j = 0; j < m; ++j) B[static_cast<size_t>(i) * m + j] = cur.coeffs()[j];
      if (i + 1 < m) cur = cur * gs;
    }
    std::vector<u64> Binv = mat_inv_modp(B, m, p);
    check(!Binv.empty(), "gamma powers must form a basis");
    // g_src has coefficient vector e_1, so its coords in the gamma power
    // basis are x = e_1 * Binv, i.e. row 1 of Binv.
    std::vector<u64> x(m, 0);
    for (u32 j = 0; j < m; ++j) x[j] = Binv[static_cast<size_t>(1) * m + j];
    FieldElem dpow = dst->one();
    for (u32 i = 0; i < m; ++i) {
      if (x[i]) img_g = img_g + dpow * dst->from_int(x[i]);
      if (i + 1 < m) dpow = dpow * delta;
    }
    // sanity: img_g must be a root of the source modulus
    FieldElem acc = dst->zero();
    FieldElem gp = dst->one();
    for (u32 i = 0; i <= m; ++i) {
      if (src->modulus[i]) acc = acc + gp * dst->from_int(src->modulus[i]);
      if (i < m) gp = gp * img_g;
    }
    check(acc.is_zero(), "embedding image is not a modulus root");
  }

  ed.E.assign(static_cast<size_t>(m) * n, 0);
  FieldElem cur = dst->one();
  for (u32 i = 0; i < m; ++i) {
    for (u32 j = 0; j < n; ++j) ed.E[static_cast<size_t>(i) * n + j] = cur.coeffs()[j];
    if (i + 1 < m) cur = cur * img_g;
  }

  // rref of E with transform, for descents
  ed.R = ed.E;
  ed.T.assign(static_cast<size_t>(m) * m, 0);
  for (u32 i = 0; i < m; ++i) ed.T[static_cast<size_t>(i) * m + i] = 1;
  u32 r = 0;
  for (u32 col = 0; col < n && r < m; ++col) {
    u32 piv = m;
    for (u32 i = r; i < m; ++i) {
      if (ed.R[static_cast<size_t>(i) * n + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == m) continue;
    for (u32 j = 0; j < n; ++j)
      std::swap(ed.R[static_cast<size_t>(r) * n + j], ed.R[static_cast<size_t>(piv) * n + j]);
    for (u32 j = 0; j < m; ++j)
      std::swap(ed.T[static_cast<size_t>(r) * m + j], ed.T[static_cast<size_t>(piv) * m + j]);
    u64 d = modinv_prime(ed.R[static_cast<size_t>(r) * n + col], p);
    for (u32 j = 0; j < n; ++j)
      ed.R[static_cast<size_t>(r) * n + j] = mulmod_u64(ed.R[static_cast<size_t>(r) * n + j], d, p);
    for (u32 j = 0; j < m; ++j)
      ed.T[static_cast<size_t>(r) * m + j] = mulmod_u64(ed.T[static_cast<size_t>(r) * m + j], d, p);
    for (u32 i = 0; i < m; ++i) {
      if (i == r) continue;
      u64 c = ed.R[static_cast<size_t>(i) * n + col];
      if (!c) continue;
      for (u32 j = 0; j < n; ++j) {
        u64 sub = mulmod_u64(c, ed.R[static_cast<size_t>(r) * n + j], p);
        u64& t = ed.R[static_cast<size_t>(i) * n + j];
        t = (t + p - sub) % p;
      }
      for (u32 j = 0; j < m; ++j) {
        u64 sub = mulmod_u64(c, ed.T[static_cast<size_t>(r) * m + j], p);
        u64& t = ed.T[static_cast<size_t>(i) * m + j];
        t = (t + p - sub) % p;
      }
    }
    ed.rpiv.push_back(col);
    ++r;
  }
  check(r == m, "embedding matrix must have full rank");
  return cache.emplace(key, std::move(ed)).first->second;
}

}  // namespace

FieldElem embed(const FieldElem& x, const FieldCtx* target) {
  const FieldCtx* src = x.field();
  check(src != nullptr, "embed of null element");
  if (src == target) return x;
  require(is_subfield(src, target), "embed requires a subfield of the same lattice");
  const EmbedData& ed = get_embed(src, target);
  std::array<u128, 64> acc{};
  const auto& c = x.coeffs();
  for (u32 i = 0; i < ed.m; ++i) {
    if (c[i] == 0) continue;
    const u64* row = &ed.E[static_cast<size_t>(i) * ed.n];
    for (u32 j = 0; j < ed.n; ++j) acc[j] += static_cast<u128>(c[i]) * row[j];
  }
  FieldElem::Coeffs out(ed.n);
  for (u32 j = 0; j < ed.n; ++j) out[j] = static_cast<u64>(acc[j] % ed.p);
  return FieldElem(target, std::move(out));
}

std::optional<FieldElem> try_descend(const FieldElem& x, const FieldCtx* target) {
  const FieldCtx* src = x.field();
  check(src != nullptr, "descend of null element");
  if (src == target) return x;
  require(is_subfield(target, src), "descend requires a superfield of the same lattice");
  const EmbedData& ed = get_embed(target, src);  // maps target -> src
  u64 p = ed.p;
  std::vector<u64> y(x.coeffs().begin(), x.coeffs().end());
  std::vector<u64> combo(ed.m, 0);
  for (u32 i = 0; i < ed.m; ++i) {
    u64 c = y[ed.rpiv[i]];
    if (c == 0) continue;
    for (u32 j = 0; j < ed.n; ++j) {
      u64 sub = mulmod_u64(c, ed.R[static_cast<size_t>(i) * ed.n + j], p);
      y[j] = (y[j] + p - sub) % p;
    }
    for (u32 j = 0; j < ed.m; ++j) {
      u64 add = mulmod_u64(c, ed.T[static_cast<size_t>(i) * ed.m + j], p);
      combo[j] = (combo[j] + add) % p;
    }
  }
  for (u64 v : y)
    if (v != 0) return std::nullopt;
  FieldElem::Coeffs out(ed.m);
  for (u32 j = 0; j < ed.m; ++j) out[j] = combo[j];
  FieldElem res(target, std::move(out));
  check(embed(res, src) == x, "descend verification failed");
  return res;
}

bool same_element(const FieldElem& a, const FieldElem& b) {
  check(a.field() != nullptr && b.field() != nullptr, "null element compare");
  if (a.field() == b.field()) return a == b;
  require(a.field()->p == b.field()->p && a.field()->seed == b.field()->seed,
          "elements from different lattices are incomparable");
  u32 g = static_cast<u32>(gcd_u64(a.field()->n, b.field()->n));
  const FieldCtx* gf = FieldCtx::get(a.field()->p, g, a.field()->seed);
  auto da = try_descend(a, gf);
  if (!da) return false;
  auto db = try_descend(b, gf);
  if (!db) return false;
  return *da == *db;
}

}  // namespace gplane
