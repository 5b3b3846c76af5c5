#include "gplane/divisor.hpp"

#include <sstream>

#include "gplane/check.hpp"
#include "gplane/upoly.hpp"

namespace gplane {

ProjPoint canonical_point(const ProjPoint& P) {
  const FieldCtx* F = P.F;
  if (F->n == 1) return P;
  for (u32 d = 1; d < F->n; ++d) {
    if (F->n % d != 0) continue;
    const FieldCtx* S = FieldCtx::get(F->p, d, F->seed);
    auto x = try_descend(P.v[0], S);
    if (!x) continue;
    auto y = try_descend(P.v[1], S);
    if (!y) continue;
    auto z = try_descend(P.v[2], S);
    if (!z) continue;
    return ProjPoint::make(*x, *y, *z);
  }
  return P;
}

bool CanonPointLess::operator()(const ProjPoint& a, const ProjPoint& b) const {
  if (a.F->p != b.F->p) return a.F->p < b.F->p;
  if (a.F->order() != b.F->order()) return a.F->order() < b.F->order();
  for (u32 i = 0; i < 3; ++i) {
    u64 ia = a.v[i].index(), ib = b.v[i].index();
    if (ia != ib) return ia < ib;
  }
  return false;
}

Divisor Divisor::single(const ProjPoint& P, i64 mult) {
  Divisor D;
  D.add_point(P, mult);
  return D;
}

bool Divisor::operator==(const Divisor& o) const {
  // Keys are canonical, so equal geometric points share one field context;
  // entries over different contexts are simply different points and must
  // not be fed to the throwing ProjPoint comparison.
  if (m_.size() != o.m_.size()) return false;
  auto b = o.m_.begin();
  for (auto a = m_.begin(); a != m_.end(); ++a, ++b)
    if (a->second != b->second || a->first.F != b->first.F || !(a->first == b->first))
      return false;
  return true;
}

void Divisor::add_point(const ProjPoint& P, i64 mult) {
  if (mult == 0) return;
  ProjPoint c = canonical_point(P);
  auto it = m_.find(c);
  if (it == m_.end()) {
    m_.emplace(c, mult);
    return;
  }
  it->second += mult;
  if (it->second == 0) m_.erase(it);
}

i64 Divisor::mult_of(const ProjPoint& P) const {
  auto it = m_.find(canonical_point(P));
  return it == m_.end() ? 0 : it->second;
}

i64 Divisor::degree() const {
  i64 acc = 0;
  for (const auto& [P, m] : m_) acc += m;
  return acc;
}

bool Divisor::is_effective() const {
  for (const auto& [P, m] : m_)
    if (m < 0) return false;
  return true;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor out = *this;
  for (const auto& [P, m] : o.m_) {
    auto it = out.m_.find(P);
    if (it == out.m_.end()) {
      out.m_.emplace(P, m);
    } else {
      it->second += m;
      if (it->second == 0) out.m_.erase(it);
    }
  }
  return out;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + o.scaled(-1); }

Divisor Divisor::scaled(i64 s) const {
  Divisor out;
  if (s == 0) return out;
  for (const auto& [P, m] : m_) out.m_.emplace(P, m * s);
  return out;
}

std::string Divisor::str() const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [P, m] : m_) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << P.str() << "[GF(" << P.F->order() << ")]";
  }
  return os.str();
}

Divisor line_intersection_divisor(const PlaneCurve& C, const ProjLine& Lin) {
  ProjLine L = Lin;
  if (!is_subfield(C.k, L.F))
    L = embed_line(L, FieldCtx::compositum(C.k, L.F));
  const FieldCtx* K = L.F;
  const HomPoly& G = C.poly_over(K);
  u32 d = C.degree;

  // Deterministic parametrization s*A + t*B of the line: kernel basis of the
  // covector, pivot at the first nonzero coordinate.
  u32 piv = 3;
  for (u32 i = 0; i < 3; ++i) {
    if (!L.v[i].is_zero()) {
      piv = i;
      break;
    }
  }
  check(piv < 3, "line with zero covector");
  std::array<std::array<FieldElem, 3>, 2> basis;
  u32 row = 0;
  for (u32 j = 0; j < 3; ++j) {
    if (j == piv) continue;
    std::array<FieldElem, 3> v = {K->zero(), K->zero(), K->zero()};
    v[j] = K->one();
    v[piv] = -L.v[j];
    basis[row++] = v;
  }
  const auto& A = basis[0];
  const auto& B = basis[1];

  // Restriction r(t) = F(A + t*B), a univariate of degree <= d; the degree
  // drop is the multiplicity of the second basis point (t = infinity).
  std::vector<std::vector<UPoly>> pw(3);
  for (u32 i = 0; i < 3; ++i) {
    pw[i].resize(d + 1);
    pw[i][0] = UPoly::constant(K->one());
    UPoly lin(K, {A[i], B[i]});
    for (u32 e = 1; e <= d; ++e) pw[i][e] = pw[i][e - 1] * lin;
  }
  UPoly r = UPoly::zero(K);
  G.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    r = r + (pw[0][a] * pw[1][b] * pw[2][c]).scaled(v);
  });
  require(!r.is_zero(), "line is a component of the curve");

  Divisor out;
  u32 degr = static_cast<u32>(r.degree());
  check(degr <= d, "restricted form exceeds the curve degree");
  if (degr < d) {
    out.add_point(ProjPoint::make(B[0], B[1], B[2]),
                  static_cast<i64>(d - degr));
  }
  if (degr > 0) {
    u32 e = splitting_extension_degree(r);
    const FieldCtx* E = K;
    if (e > 1) {
      try {
        E = FieldCtx::get(K->p, K->n * e, K->seed);
      } catch (const std::overflow_error&) {
        throw SplittingError("intersection points of line " + L.str() +
                             " need a degree-" + std::to_string(e) +
                             " extension of GF(" + std::to_string(K->order()) +
                             "), which exceeds the element type");
      }
    }
    std::vector<FieldElem> re;
    re.reserve(degr + 1);
    for (u32 i = 0; i <= degr; ++i) re.push_back(embed(r.coeff(i), E));
    UPoly rE(E, re);
    std::array<FieldElem, 3> AE, BE;
    for (u32 i = 0; i < 3; ++i) {
      AE[i] = embed(A[i], E);
      BE[i] = embed(B[i], E);
    }
    u64 total = 0;
    for (const auto& [t0, mult] : roots_with_multiplicity(rE)) {
      out.add_point(ProjPoint::make(AE[0] + t0 * BE[0], AE[1] + t0 * BE[1],
                                    AE[2] + t0 * BE[2]),
                    static_cast<i64>(mult));
      total += mult;
    }
    check(total == degr, "restricted form did not split in its splitting field");
  }
  check(out.degree() == static_cast<i64>(d), "line cut has wrong total degree");
  return out;
}

Divisor pushforward(const Divisor& D, const ProjMatrix& M) {
  Divisor out;
  std::map<const FieldCtx*, ProjMatrix> cache;
  for (const auto& [P, m] : D.entries()) {
    const FieldCtx* E =
        (P.F == M.F) ? P.F : FieldCtx::compositum(P.F, M.F);
    auto it = cache.find(E);
    if (it == cache.end()) it = cache.emplace(E, embed_matrix(M, E)).first;
    ProjPoint PE = (P.F == E) ? P : embed_point(P, E);
    out.add_point(it->second.apply(PE), m);
  }
  return out;
}

}  // namespace gplane
