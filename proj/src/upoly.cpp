#include "gplane/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "gplane/check.hpp"

namespace gplane {

UPoly::UPoly(const FieldCtx* F, std::vector<FieldElem> c) : F_(F), c_(std::move(c)) {
  for (const FieldElem& e : c_) check(e.field() == F_, "coefficient field mismatch");
  normalize();
}

void UPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::constant(const FieldElem& a) {
  check(a.field() != nullptr, "constant of null element");
  return UPoly(a.field(), {a});
}

UPoly UPoly::monomial(const FieldCtx* F, u32 deg, const FieldElem& coef) {
  check(coef.field() == F, "coefficient field mismatch");
  std::vector<FieldElem> c(deg + 1, F->zero());
  c[deg] = coef;
  return UPoly(F, std::move(c));
}

UPoly UPoly::linear_root(const FieldElem& r) {
  const FieldCtx* F = r.field();
  return UPoly(F, {-r, F->one()});
}

UPoly UPoly::from_prime_coeffs(const FieldCtx* F, const std::vector<u64>& c) {
  std::vector<FieldElem> out;
  out.reserve(c.size());
  for (u64 v : c) out.push_back(F->from_int(v));
  return UPoly(F, std::move(out));
}

FieldElem UPoly::coeff(u32 i) const {
  if (i >= c_.size()) return F_->zero();
  return c_[i];
}

FieldElem UPoly::lead() const {
  check(!c_.empty(), "lead of zero polynomial");
  return c_.back();
}

bool UPoly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

FieldElem UPoly::eval(const FieldElem& x) const {
  check(x.field() == F_, "eval field mismatch");
  FieldElem acc = F_->zero();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly UPoly::operator+(const UPoly& o) const {
  check(F_ == o.F_, "field mismatch in +");
  std::vector<FieldElem> out(std::max(c_.size(), o.c_.size()), F_->zero());
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return UPoly(F_, std::move(out));
}

UPoly UPoly::operator-(const UPoly& o) const {
  check(F_ == o.F_, "field mismatch in -");
  std::vector<FieldElem> out(std::max(c_.size(), o.c_.size()), F_->zero());
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
  return UPoly(F_, std::move(out));
}

UPoly UPoly::operator*(const UPoly& o) const {
  check(F_ == o.F_, "field mismatch in *");
  if (c_.empty() || o.c_.empty()) return UPoly(F_);
  std::vector<FieldElem> out(c_.size() + o.c_.size() - 1, F_->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(F_, std::move(out));
}

UPoly UPoly::scaled(const FieldElem& s) const {
  std::vector<FieldElem> out = c_;
  for (FieldElem& e : out) e *= s;
  return UPoly(F_, std::move(out));
}

bool UPoly::operator==(const UPoly& o) const {
  check(F_ == o.F_, "field mismatch in ==");
  return c_ == o.c_;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly(F_);
  std::vector<FieldElem> out;
  out.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * F_->from_int(i % F_->p));
  return UPoly(F_, std::move(out));
}

UPoly UPoly::monic() const {
  check(!c_.empty(), "monic of zero polynomial");
  if (is_monic()) return *this;
  return scaled(c_.back().inverse());
}

std::string UPoly::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].str();
  }
  os << "]";
  return os.str();
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
  check(a.field() == b.field(), "field mismatch in divrem");
  check(!b.is_zero(), "division by zero polynomial");
  const FieldCtx* F = a.field();
  if (a.degree() < b.degree()) return {UPoly(F), a};
  FieldElem linv = b.lead().inverse();
  std::vector<FieldElem> rem(a.coeffs());
  std::vector<FieldElem> quot(a.degree() - b.degree() + 1, F->zero());
  for (size_t top = rem.size(); top-- > static_cast<size_t>(b.degree());) {
    if (rem[top].is_zero()) continue;
    FieldElem c = rem[top] * linv;
    size_t shift = top - b.degree();
    quot[shift] = c;
    for (int i = 0; i <= b.degree(); ++i) rem[shift + i] -= c * b.coeffs()[i];
  }
  return {UPoly(F, std::move(quot)), UPoly(F, std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  check(a.field() == b.field(), "field mismatch in gcd");
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.monic();
}

UPoly powmod(const UPoly& base, u64 e, const UPoly& m) {
  check(m.degree() >= 1, "powmod modulus must have degree >= 1");
  const FieldCtx* F = base.field();
  UPoly r = UPoly::constant(F->one());
  r = divrem(r, m).second;
  UPoly b = divrem(base, m).second;
  while (e) {
    if (e & 1) r = divrem(r * b, m).second;
    b = divrem(b * b, m).second;
    e >>= 1;
  }
  return r;
}

namespace {

// p-th root of f when f'(x) == 0, i.e. f = h(x^p); returns h
UPoly pth_root(const UPoly& f) {
  const FieldCtx* F = f.field();
  u64 p = F->p;
  std::vector<FieldElem> out;
  for (u32 j = 0; static_cast<int>(j * p) <= f.degree(); ++j) {
    FieldElem c = f.coeff(j * p);
    out.push_back(c.frobenius(F->n - 1));  // p-th root in GF(p^n)
  }
  return UPoly(F, std::move(out));
}

// splits a monic polynomial with >= 2 distinct roots, all in the base field
void split_into_roots(const UPoly& h, std::vector<FieldElem>& out) {
  const FieldCtx* F = h.field();
  if (h.degree() == 1) {
    out.push_back(-h.coeff(0));
    return;
  }
  u64 q = F->order();
  UPoly x = UPoly::monomial(F, 1, F->one());
  UPoly g(F);
  if (F->p != 2) {
    for (u64 t = 0;; ++t) {
      check(t < q, "splitting sequence exhausted");
      FieldElem c = F->from_index(t);
      UPoly base = x + UPoly::constant(c);
      UPoly w = powmod(base, (q - 1) / 2, h) - UPoly::constant(F->one());
      g = gcd(w, h);
      if (g.degree() > 0 && g.degree() < h.degree()) break;
    }
  } else {
    for (u64 t = 1;; ++t) {
      check(t < q, "splitting sequence exhausted");
      FieldElem c = F->from_index(t);
      UPoly u = divrem(x.scaled(c), h).second;
      UPoly acc = u;
      for (u32 i = 1; i < F->n; ++i) {
        u = divrem(u * u, h).second;
        acc = acc + u;
      }
      g = gcd(acc, h);
      if (g.degree() > 0 && g.degree() < h.degree()) break;
    }
  }
  UPoly rest = divrem(h, g).first;
  split_into_roots(g.monic(), out);
  split_into_roots(rest.monic(), out);
}

}  // namespace

std::vector<std::pair<FieldElem, u32>> roots_with_multiplicity(const UPoly& f) {
  check(!f.is_zero(), "roots of zero polynomial");
  const FieldCtx* F = f.field();
  std::vector<std::pair<FieldElem, u32>> out;
  if (f.degree() == 0) return out;
  u64 q = F->order();
  // product of (x - r) over the distinct roots in F
  UPoly x = UPoly::monomial(F, 1, F->one());
  UPoly xq = powmod(x, q, f);
  UPoly r = gcd(xq - x, f);
  if (r.degree() == 0) return out;

  std::vector<FieldElem> roots;
  if (q <= 1024) {
    for (u64 idx = 0; idx < q; ++idx) {
      FieldElem e = F->from_index(idx);
      if (r.eval(e).is_zero()) roots.push_back(e);
    }
    check(static_cast<int>(roots.size()) == r.degree(), "root scan incomplete");
  } else {
    split_into_roots(r, roots);
    check(static_cast<int>(roots.size()) == r.degree(), "root splitting incomplete");
  }
  std::sort(roots.begin(), roots.end(), FieldElemLess{});

  for (const FieldElem& a : roots) {
    UPoly lin = UPoly::linear_root(a);
    u32 mult = 0;
    UPoly cur = f;
    while (true) {
      auto [quo, rem] = divrem(cur, lin);
      if (!rem.is_zero()) break;
      ++mult;
      cur = quo;
      if (cur.degree() < 1) break;
    }
    check(mult >= 1, "claimed root has multiplicity zero");
    out.push_back({a, mult});
  }
  return out;
}

UPoly radical(const UPoly& f) {
  check(!f.is_zero(), "radical of zero polynomial");
  const FieldCtx* F = f.field();
  if (f.degree() == 0) return UPoly::constant(F->one());
  UPoly fm = f.monic();
  UPoly fp = fm.derivative();
  if (fp.is_zero()) return radical(pth_root(fm));
  UPoly g = gcd(fm, fp);
  if (g.degree() == 0) return fm;
  UPoly s = divrem(fm, g).first;  // distinct factors with multiplicity not divisible by p
  UPoly w = g;
  while (true) {
    UPoly d = gcd(w, s);
    if (d.degree() == 0) break;
    w = divrem(w, d).first;
  }
  // w now carries exactly the factors whose multiplicity is divisible by p
  return s * radical(w);
}

std::vector<std::pair<u32, u32>> irreducible_degree_profile(const UPoly& f) {
  check(!f.is_zero(), "profile of zero polynomial");
  const FieldCtx* F = f.field();
  std::vector<std::pair<u32, u32>> out;
  UPoly r = radical(f);
  if (r.degree() <= 0) return out;
  u64 q = F->order();
  UPoly x = UPoly::monomial(F, 1, F->one());
  UPoly h = divrem(x, r).second;
  u32 k = 1;
  while (r.degree() >= 1) {
    if (static_cast<int>(2 * k) > r.degree()) {
      out.push_back({static_cast<u32>(r.degree()), 1});
      break;
    }
    h = powmod(h, q, r);
    UPoly g = gcd(h - divrem(x, r).second, r);
    if (g.degree() > 0) {
      check(g.degree() % k == 0, "distinct-degree block size mismatch");
      out.push_back({k, static_cast<u32>(g.degree()) / k});
      auto [quo, rem] = divrem(r, g);
      check(rem.is_zero(), "distinct-degree division must be exact");
      r = quo;
      if (r.degree() == 0) break;
      h = divrem(h, r).second;
    }
    ++k;
  }
  return out;
}

u32 splitting_extension_degree(const UPoly& f) {
  auto prof = irreducible_degree_profile(f);
  u64 l = 1;
  for (const auto& [d, _] : prof) l = lcm_u64_checked(l, d);
  return static_cast<u32>(l);
}

}  // namespace gplane
