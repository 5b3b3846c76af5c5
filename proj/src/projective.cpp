#include "gplane/projective.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "gplane/check.hpp"

namespace gplane {

namespace {

template <size_t N>
void normalize_rep(std::array<FieldElem, N>& v) {
  for (size_t i = 0; i < N; ++i) {
    if (!v[i].is_zero()) {
      if (!v[i].is_one()) {
        FieldElem inv = v[i].inverse();
        for (size_t j = i; j < N; ++j) v[j] *= inv;
      }
      return;
    }
  }
  fail("cannot normalize the zero tuple");
}

template <size_t N>
std::array<u64, N> index_key(const std::array<FieldElem, N>& v) {
  std::array<u64, N> k;
  for (size_t i = 0; i < N; ++i) k[i] = v[i].index();
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// points and lines
// ---------------------------------------------------------------------------

ProjPoint ProjPoint::make(const FieldElem& x, const FieldElem& y, const FieldElem& z) {
  const FieldCtx* F = x.field();
  check(F != nullptr && y.field() == F && z.field() == F, "point coordinate field mismatch");
  ProjPoint P;
  P.F = F;
  P.v = {x, y, z};
  normalize_rep(P.v);
  return P;
}

ProjPoint ProjPoint::from_ints(const FieldCtx* F, u64 x, u64 y, u64 z) {
  return make(F->from_int(x), F->from_int(y), F->from_int(z));
}

bool ProjPoint::operator==(const ProjPoint& o) const {
  check(F != nullptr && F == o.F, "point field mismatch");
  return v == o.v;
}

std::string ProjPoint::str() const {
  std::ostringstream os;
  os << "(" << v[0].str() << " : " << v[1].str() << " : " << v[2].str() << ")";
  return os.str();
}

bool PPointLess::operator()(const ProjPoint& a, const ProjPoint& b) const {
  check(a.F != nullptr && a.F == b.F, "point field mismatch in order");
  return index_key(a.v) < index_key(b.v);
}

ProjLine ProjLine::make(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  const FieldCtx* F = a.field();
  check(F != nullptr && b.field() == F && c.field() == F, "line coordinate field mismatch");
  ProjLine L;
  L.F = F;
  L.v = {a, b, c};
  normalize_rep(L.v);
  return L;
}

ProjLine ProjLine::from_ints(const FieldCtx* F, u64 a, u64 b, u64 c) {
  return make(F->from_int(a), F->from_int(b), F->from_int(c));
}

FieldElem ProjLine::eval(const ProjPoint& P) const {
  check(F == P.F, "line/point field mismatch");
  return v[0] * P.v[0] + v[1] * P.v[1] + v[2] * P.v[2];
}

bool ProjLine::operator==(const ProjLine& o) const {
  check(F != nullptr && F == o.F, "line field mismatch");
  return v == o.v;
}

std::string ProjLine::str() const {
  std::ostringstream os;
  os << "[" << v[0].str() << " : " << v[1].str() << " : " << v[2].str() << "]";
  return os.str();
}

bool PLineLess::operator()(const ProjLine& a, const ProjLine& b) const {
  check(a.F != nullptr && a.F == b.F, "line field mismatch in order");
  return index_key(a.v) < index_key(b.v);
}

ProjLine line_through(const ProjPoint& P, const ProjPoint& Q) {
  check(P.F == Q.F, "line_through field mismatch");
  require(!(P == Q), "line_through requires distinct points");
  const auto& a = P.v;
  const auto& b = Q.v;
  return ProjLine::make(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0]);
}

ProjPoint intersect_lines(const ProjLine& L1, const ProjLine& L2) {
  check(L1.F == L2.F, "intersect field mismatch");
  require(!(L1 == L2), "intersect requires distinct lines");
  const auto& a = L1.v;
  const auto& b = L2.v;
  return ProjPoint::make(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                         a[0] * b[1] - a[1] * b[0]);
}

std::vector<ProjPoint> all_points(const FieldCtx* F) {
  std::vector<ProjPoint> out;
  u64 q = F->order();
  out.reserve(q * q + q + 1);
  for (u64 y = 0; y < q; ++y)
    for (u64 z = 0; z < q; ++z)
      out.push_back(ProjPoint::make(F->one(), F->from_index(y), F->from_index(z)));
  for (u64 z = 0; z < q; ++z)
    out.push_back(ProjPoint::make(F->zero(), F->one(), F->from_index(z)));
  out.push_back(ProjPoint::make(F->zero(), F->zero(), F->one()));
  std::sort(out.begin(), out.end(), PPointLess{});
  return out;
}

std::vector<ProjLine> all_lines(const FieldCtx* F) {
  std::vector<ProjLine> out;
  u64 q = F->order();
  out.reserve(q * q + q + 1);
  for (u64 y = 0; y < q; ++y)
    for (u64 z = 0; z < q; ++z)
      out.push_back(ProjLine::make(F->one(), F->from_index(y), F->from_index(z)));
  for (u64 z = 0; z < q; ++z)
    out.push_back(ProjLine::make(F->zero(), F->one(), F->from_index(z)));
  out.push_back(ProjLine::make(F->zero(), F->zero(), F->one()));
  std::sort(out.begin(), out.end(), PLineLess{});
  return out;
}

std::vector<ProjLine> lines_through(const ProjPoint& P) {
  std::vector<ProjLine> out;
  for (const ProjLine& L : all_lines(P.F))
    if (L.contains(P)) out.push_back(L);
  check(out.size() == P.F->order() + 1, "pencil must have q + 1 lines");
  return out;
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

ProjMatrix ProjMatrix::identity(const FieldCtx* F) {
  std::array<FieldElem, 9> e = {F->one(),  F->zero(), F->zero(), F->zero(), F->one(),
                                F->zero(), F->zero(), F->zero(), F->one()};
  return make(F, e);
}

ProjMatrix ProjMatrix::make(const FieldCtx* F, const std::array<FieldElem, 9>& entries) {
  ProjMatrix M;
  M.F = F;
  M.m = entries;
  for (const FieldElem& e : M.m) check(e.field() == F, "matrix entry field mismatch");
  require(!M.det().is_zero(), "projective map must be invertible");
  normalize_rep(M.m);
  return M;
}

ProjMatrix ProjMatrix::from_ints(const FieldCtx* F, const std::array<u64, 9>& entries) {
  std::array<FieldElem, 9> e;
  for (size_t i = 0; i < 9; ++i) e[i] = F->from_int(entries[i]);
  return make(F, e);
}

ProjMatrix ProjMatrix::diagonal(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  const FieldCtx* F = a.field();
  std::array<FieldElem, 9> e = {a,          F->zero(), F->zero(), F->zero(), b,
                                F->zero(), F->zero(), F->zero(), c};
  return make(F, e);
}

FieldElem ProjMatrix::det() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  check(F == o.F, "matrix field mismatch in *");
  std::array<FieldElem, 9> out;
  for (u32 r = 0; r < 3; ++r)
    for (u32 c = 0; c < 3; ++c)
      out[r * 3 + c] =
          m[r * 3] * o.m[c] + m[r * 3 + 1] * o.m[3 + c] + m[r * 3 + 2] * o.m[6 + c];
  return make(F, out);
}

ProjMatrix ProjMatrix::inverse() const {
  // adjugate: a scalar multiple of the inverse, which is all we need
  std::array<FieldElem, 9> a;
  a[0] = m[4] * m[8] - m[5] * m[7];
  a[1] = m[2] * m[7] - m[1] * m[8];
  a[2] = m[1] * m[5] - m[2] * m[4];
  a[3] = m[5] * m[6] - m[3] * m[8];
  a[4] = m[0] * m[8] - m[2] * m[6];
  a[5] = m[2] * m[3] - m[0] * m[5];
  a[6] = m[3] * m[7] - m[4] * m[6];
  a[7] = m[1] * m[6] - m[0] * m[7];
  a[8] = m[0] * m[4] - m[1] * m[3];
  return make(F, a);
}

ProjMatrix ProjMatrix::transpose() const {
  std::array<FieldElem, 9> t;
  for (u32 r = 0; r < 3; ++r)
    for (u32 c = 0; c < 3; ++c) t[c * 3 + r] = m[r * 3 + c];
  return make(F, t);
}

ProjPoint ProjMatrix::apply(const ProjPoint& P) const {
  check(F == P.F, "matrix/point field mismatch");
  std::array<FieldElem, 3> u;
  for (u32 r = 0; r < 3; ++r)
    u[r] = m[r * 3] * P.v[0] + m[r * 3 + 1] * P.v[1] + m[r * 3 + 2] * P.v[2];
  return ProjPoint::make(u[0], u[1], u[2]);
}

ProjLine ProjMatrix::apply_line(const ProjLine& L) const {
  check(F == L.F, "matrix/line field mismatch");
  ProjMatrix inv = inverse();
  std::array<FieldElem, 3> u;
  for (u32 c = 0; c < 3; ++c)
    u[c] = L.v[0] * inv.m[c] + L.v[1] * inv.m[3 + c] + L.v[2] * inv.m[6 + c];
  return ProjLine::make(u[0], u[1], u[2]);
}

bool ProjMatrix::is_identity() const {
  for (u32 r = 0; r < 3; ++r)
    for (u32 c = 0; c < 3; ++c) {
      if (r == c && !m[r * 3 + c].is_one()) return false;
      if (r != c && !m[r * 3 + c].is_zero()) return false;
    }
  return true;
}

bool ProjMatrix::operator==(const ProjMatrix& o) const {
  check(F != nullptr && F == o.F, "matrix field mismatch in ==");
  return m == o.m;
}

std::string ProjMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (u32 r = 0; r < 3; ++r) {
    if (r) os << "; ";
    for (u32 c = 0; c < 3; ++c) {
      if (c) os << " ";
      os << m[r * 3 + c].str();
    }
  }
  os << "]";
  return os.str();
}

bool PMatLess::operator()(const ProjMatrix& a, const ProjMatrix& b) const {
  check(a.F != nullptr && a.F == b.F, "matrix field mismatch in order");
  return index_key(a.m) < index_key(b.m);
}

// ---------------------------------------------------------------------------
// embeddings and cross-field comparison
// ---------------------------------------------------------------------------

ProjPoint embed_point(const ProjPoint& P, const FieldCtx* target) {
  return ProjPoint::make(embed(P.v[0], target), embed(P.v[1], target), embed(P.v[2], target));
}

ProjLine embed_line(const ProjLine& L, const FieldCtx* target) {
  return ProjLine::make(embed(L.v[0], target), embed(L.v[1], target), embed(L.v[2], target));
}

ProjMatrix embed_matrix(const ProjMatrix& M, const FieldCtx* target) {
  std::array<FieldElem, 9> e;
  for (size_t i = 0; i < 9; ++i) e[i] = embed(M.m[i], target);
  return ProjMatrix::make(target, e);
}

bool same_point(const ProjPoint& a, const ProjPoint& b) {
  // canonical representatives embed to canonical representatives, so the
  // coordinates can be compared one by one across the lattice
  for (u32 i = 0; i < 3; ++i)
    if (!same_element(a.v[i], b.v[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// groups and perspectivities
// ---------------------------------------------------------------------------

std::vector<ProjMatrix> group_closure(const std::vector<ProjMatrix>& gens, u64 cap) {
  require(!gens.empty(), "group_closure needs at least one generator");
  const FieldCtx* F = gens[0].F;
  for (const ProjMatrix& g : gens) check(g.F == F, "generator field mismatch");
  std::map<std::array<u64, 9>, ProjMatrix> seen;
  std::deque<ProjMatrix> todo;
  ProjMatrix id = ProjMatrix::identity(F);
  seen.emplace(index_key(id.m), id);
  todo.push_back(id);
  for (const ProjMatrix& g : gens) {
    auto key = index_key(g.m);
    if (seen.emplace(key, g).second) todo.push_back(g);
  }
  while (!todo.empty()) {
    ProjMatrix cur = todo.front();
    todo.pop_front();
    for (const ProjMatrix& g : gens) {
      ProjMatrix nxt = cur * g;
      auto key = index_key(nxt.m);
      if (seen.emplace(key, nxt).second) {
        if (seen.size() > cap)
          throw GroupCapExceeded("group closure exceeded cap of " + std::to_string(cap));
        todo.push_back(nxt);
      }
    }
  }
  std::vector<ProjMatrix> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

std::vector<ProjPoint> orbit_of(const std::vector<ProjMatrix>& group, const ProjPoint& P) {
  std::set<ProjPoint, PPointLess> seen;
  for (const ProjMatrix& g : group) seen.insert(g.apply(P));
  return std::vector<ProjPoint>(seen.begin(), seen.end());
}

void for_each_perspectivity(const ProjPoint& center,
                            const std::function<bool(const ProjMatrix&)>& fn) {
  const FieldCtx* F = center.F;
  u64 q = F->order();
  require(q <= (1ull << 20), "perspectivity enumeration needs a small base field");
  const auto& v = center.v;
  for (u64 wi = 1; wi < q * q * q; ++wi) {
    u64 t = wi;
    FieldElem w0 = F->from_index(t % q);
    t /= q;
    FieldElem w1 = F->from_index(t % q);
    t /= q;
    FieldElem w2 = F->from_index(t % q);
    FieldElem s = F->one() + w0 * v[0] + w1 * v[1] + w2 * v[2];
    if (s.is_zero()) continue;  // would be singular
    std::array<FieldElem, 9> e;
    std::array<FieldElem, 3> w = {w0, w1, w2};
    for (u32 r = 0; r < 3; ++r)
      for (u32 c = 0; c < 3; ++c) {
        e[r * 3 + c] = v[r] * w[c];
        if (r == c) e[r * 3 + c] += F->one();
      }
    if (!fn(ProjMatrix::make(F, e))) return;
  }
}

}  // namespace gplane
