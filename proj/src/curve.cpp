#include "gplane/curve.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <utility>

#include "gplane/check.hpp"
#include "gplane/linalg.hpp"
#include "gplane/upoly.hpp"

namespace gplane {

namespace {

// Yields every point of the plane over F without materializing the full
// list: chart (1:y:z) by index, then (0:1:z), then (0:0:1).  Stops when fn
// returns false.
void for_each_plane_point(const FieldCtx* F,
                          const std::function<bool(const ProjPoint&)>& fn) {
  u64 q = F->order();
  for (u64 yi = 0; yi < q; ++yi) {
    FieldElem y = F->from_index(yi);
    for (u64 zi = 0; zi < q; ++zi) {
      if (!fn(ProjPoint::make(F->one(), y, F->from_index(zi)))) return;
    }
  }
  for (u64 zi = 0; zi < q; ++zi) {
    if (!fn(ProjPoint::make(F->zero(), F->one(), F->from_index(zi)))) return;
  }
  fn(ProjPoint::make(F->zero(), F->zero(), F->one()));
}

// Values of all degree-d monomials at P's stored representative, in HomPoly
// storage order.
Row monomial_row(u32 d, const ProjPoint& P) {
  const FieldCtx* F = P.F;
  std::vector<FieldElem> px(d + 1, F->one()), py(d + 1, F->one()), pz(d + 1, F->one());
  for (u32 i = 1; i <= d; ++i) {
    px[i] = px[i - 1] * P.v[0];
    py[i] = py[i - 1] * P.v[1];
    pz[i] = pz[i - 1] * P.v[2];
  }
  Row row;
  row.reserve(HomPoly::term_count(d));
  for (u32 t = 0; t <= d; ++t) {
    u32 a = d - t;
    for (u32 bo = 0; bo <= t; ++bo) {
      u32 b = t - bo;
      row.push_back(px[a] * py[b] * pz[d - a - b]);
    }
  }
  return row;
}

// Gauss-Jordan inverse of a square matrix given as rows.
std::vector<Row> invert_square(const FieldCtx* F, std::vector<Row> A) {
  u32 n = static_cast<u32>(A.size());
  std::vector<Row> inv(n, Row(n, F->zero()));
  for (u32 i = 0; i < n; ++i) inv[i][i] = F->one();
  for (u32 col = 0; col < n; ++col) {
    u32 piv = n;
    for (u32 r = col; r < n; ++r) {
      if (!A[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    check(piv < n, "matrix inversion hit a singular matrix");
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    FieldElem s = A[col][col].inverse();
    for (u32 c = 0; c < n; ++c) {
      A[col][c] = A[col][c] * s;
      inv[col][c] = inv[col][c] * s;
    }
    for (u32 r = 0; r < n; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      FieldElem f = A[r][col];
      for (u32 c = 0; c < n; ++c) {
        A[r][c] = A[r][c] - f * A[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

// Evaluation frame for exact substitution: term_count(d) plane points whose
// degree-d monomial matrix is invertible, plus that inverse.  Built over the
// smallest lattice extension with at least d elements (degree-d forms cannot
// vanish on all of P^2(F) when d <= |F|, so the greedy scan below reaches
// full rank).
struct Frame {
  const FieldCtx* E = nullptr;
  std::vector<ProjPoint> pts;
  std::vector<Row> Ainv;
};

const Frame& frame_for(const FieldCtx* K, u32 d) {
  static std::map<std::pair<const FieldCtx*, u32>, std::unique_ptr<Frame>> cache;
  auto key = std::make_pair(K, d);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  u32 N = HomPoly::term_count(d);
  for (u32 e = 1; e <= 16; ++e) {
    const FieldCtx* E = nullptr;
    try {
      E = (e == 1) ? K : FieldCtx::get(K->p, K->n * e, K->seed);
    } catch (const std::overflow_error&) {
      break;
    }
    if (E->order() < d) continue;
    auto fr = std::make_unique<Frame>();
    fr->E = E;
    OnlineRref rref(E, N);
    for_each_plane_point(E, [&](const ProjPoint& P) {
      if (rref.offer(monomial_row(d, P))) fr->pts.push_back(P);
      return rref.rank() < N;
    });
    check(rref.rank() == N, "monomial evaluation frame failed to reach full rank");
    std::vector<Row> A;
    A.reserve(N);
    for (const ProjPoint& P : fr->pts) A.push_back(monomial_row(d, P));
    fr->Ainv = invert_square(E, A);
    const Frame& ref = *fr;
    cache.emplace(key, std::move(fr));
    return ref;
  }
  fail("no evaluation frame available for this degree");
}

}  // namespace

// ---------------------------------------------------------------------------
// HomPoly

HomPoly::HomPoly(const FieldCtx* F, u32 d)
    : F_(F), d_(d), c_(term_count(d), F->zero()) {
  check(F != nullptr, "homogeneous polynomial needs a field context");
}

u32 HomPoly::index_of(u32 d, u32 a, u32 b) {
  check(a + b <= d, "monomial exponents exceed the degree");
  u32 t = d - a;
  return t * (t + 1) / 2 + (t - b);
}

bool HomPoly::is_zero() const {
  for (const FieldElem& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

FieldElem HomPoly::coeff(u32 a, u32 b, u32 c) const {
  check(a + b + c == d_, "monomial degree mismatch");
  return c_[index_of(d_, a, b)];
}

void HomPoly::set_coeff(u32 a, u32 b, u32 c, const FieldElem& v) {
  check(a + b + c == d_, "monomial degree mismatch");
  check(v.field() == F_, "coefficient from a different field");
  c_[index_of(d_, a, b)] = v;
}

void HomPoly::for_each_term(
    const std::function<void(u32, u32, u32, const FieldElem&)>& fn) const {
  u32 idx = 0;
  for (u32 t = 0; t <= d_; ++t) {
    u32 a = d_ - t;
    for (u32 bo = 0; bo <= t; ++bo, ++idx) {
      if (c_[idx].is_zero()) continue;
      u32 b = t - bo;
      fn(a, b, d_ - a - b, c_[idx]);
    }
  }
}

FieldElem HomPoly::eval(const FieldElem& x, const FieldElem& y,
                        const FieldElem& z) const {
  check(x.field() == F_ && y.field() == F_ && z.field() == F_,
        "evaluation arguments from a different field");
  std::vector<FieldElem> px(d_ + 1, F_->one()), py(d_ + 1, F_->one()),
      pz(d_ + 1, F_->one());
  for (u32 i = 1; i <= d_; ++i) {
    px[i] = px[i - 1] * x;
    py[i] = py[i - 1] * y;
    pz[i] = pz[i - 1] * z;
  }
  FieldElem acc = F_->zero();
  u32 idx = 0;
  for (u32 t = 0; t <= d_; ++t) {
    u32 a = d_ - t;
    for (u32 bo = 0; bo <= t; ++bo, ++idx) {
      if (c_[idx].is_zero()) continue;
      u32 b = t - bo;
      acc += c_[idx] * px[a] * py[b] * pz[d_ - a - b];
    }
  }
  return acc;
}

FieldElem HomPoly::eval_point(const ProjPoint& P) const {
  check(P.F == F_, "evaluation point from a different field");
  return eval(P.v[0], P.v[1], P.v[2]);
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
  check(F_ == o.F_ && d_ == o.d_, "polynomial shape mismatch");
  HomPoly out(F_, d_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
  return out;
}

HomPoly HomPoly::operator-(const HomPoly& o) const {
  check(F_ == o.F_ && d_ == o.d_, "polynomial shape mismatch");
  HomPoly out(F_, d_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] - o.c_[i];
  return out;
}

HomPoly HomPoly::operator*(const HomPoly& o) const {
  check(F_ == o.F_, "polynomial field mismatch");
  HomPoly out(F_, d_ + o.d_);
  for_each_term([&](u32 a1, u32 b1, u32, const FieldElem& v1) {
    o.for_each_term([&](u32 a2, u32 b2, u32, const FieldElem& v2) {
      u32 idx = index_of(out.d_, a1 + a2, b1 + b2);
      out.c_[idx] += v1 * v2;
    });
  });
  return out;
}

HomPoly HomPoly::scaled(const FieldElem& s) const {
  check(s.field() == F_, "scalar from a different field");
  HomPoly out(F_, d_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * s;
  return out;
}

bool HomPoly::operator==(const HomPoly& o) const {
  if (F_ != o.F_ || d_ != o.d_) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

HomPoly HomPoly::derivative(u32 var) const {
  check(var < 3, "variable index out of range");
  if (d_ == 0) return HomPoly(F_, 0);
  HomPoly out(F_, d_ - 1);
  for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    u32 exp = (var == 0) ? a : (var == 1) ? b : c;
    if (exp == 0) return;
    FieldElem s = F_->from_int(exp % F_->p);
    if (s.is_zero()) return;
    u32 na = a, nb = b;
    if (var == 0) --na;
    if (var == 1) --nb;
    out.c_[index_of(d_ - 1, na, nb)] += v * s;
  });
  return out;
}

HomPoly HomPoly::normalized() const {
  for (const FieldElem& x : c_) {
    if (x.is_zero()) continue;
    if (x.is_one()) return *this;
    return scaled(x.inverse());
  }
  return *this;  // zero polynomial
}

HomPoly HomPoly::compose(const ProjMatrix& M) const {
  check(F_ != nullptr && M.F == F_, "composition needs a matrix over the same field");
  if (d_ == 0) return *this;
  const Frame& fr = frame_for(F_, d_);
  const FieldCtx* E = fr.E;
  HomPoly FE = (E == F_) ? *this : embed_hompoly(*this, E);
  ProjMatrix ME = (E == F_) ? M : embed_matrix(M, E);
  u32 N = term_count(d_);
  Row b(N, E->zero());
  for (u32 i = 0; i < N; ++i) {
    const auto& v = fr.pts[i].v;
    // Raw matrix-vector image of the stored representative; no projective
    // renormalization, so each value is exactly (F o M)(v).
    FieldElem u0 = ME.at(0, 0) * v[0] + ME.at(0, 1) * v[1] + ME.at(0, 2) * v[2];
    FieldElem u1 = ME.at(1, 0) * v[0] + ME.at(1, 1) * v[1] + ME.at(1, 2) * v[2];
    FieldElem u2 = ME.at(2, 0) * v[0] + ME.at(2, 1) * v[1] + ME.at(2, 2) * v[2];
    b[i] = FE.eval(u0, u1, u2);
  }
  HomPoly out(E, d_);
  for (u32 j = 0; j < N; ++j) {
    FieldElem acc = E->zero();
    for (u32 i = 0; i < N; ++i) {
      if (b[i].is_zero()) continue;
      acc += fr.Ainv[j][i] * b[i];
    }
    out.c_[j] = acc;
  }
  if (E == F_) return out;
  HomPoly res(F_, d_);
  for (u32 j = 0; j < N; ++j) {
    auto dsc = try_descend(out.c_[j], F_);
    check(dsc.has_value(), "composed polynomial failed to descend to the base field");
    res.c_[j] = *dsc;
  }
  return res;
}

std::string HomPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    if (!first) os << " + ";
    first = false;
    bool any = a > 0 || b > 0 || c > 0;
    if (!any || !v.is_one()) os << "(" << v.str() << ")";
    auto var = [&](const char* name, u32 e) {
      if (e == 0) return;
      os << name;
      if (e > 1) os << "^" << e;
    };
    var("X", a);
    var("Y", b);
    var("Z", c);
  });
  if (first) os << "0";
  return os.str();
}

HomPoly embed_hompoly(const HomPoly& f, const FieldCtx* target) {
  if (f.field() == target) return f;
  HomPoly out(target, f.degree());
  f.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    out.set_coeff(a, b, c, embed(v, target));
  });
  return out;
}

bool proportional(const HomPoly& a, const HomPoly& b) {
  if (a.field() != b.field() || a.degree() != b.degree()) return false;
  return a.normalized() == b.normalized();
}

// ---------------------------------------------------------------------------
// Squarefree test.  The trivariate polynomial F factors as Z^k * G with
// Z not dividing G; F is squarefree iff k <= 1 and the dehomogenization
// g(x, y) = G(x, y, 1) is squarefree.  Over a perfect field, g is squarefree
// iff gcd(g, g_x, g_y) is constant (a common irreducible factor with both
// derivative gcds would otherwise be a p-th power).  The bivariate gcds are
// computed with a primitive polynomial remainder sequence over k[x][y].

namespace {

// Coefficient of y^i is a UPoly in x; no trailing zero entries.
using BPoly = std::vector<UPoly>;

void btrim(BPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

bool bis_zero(const BPoly& a) { return a.empty(); }

BPoly bscale(const BPoly& a, const UPoly& m) {
  BPoly out;
  out.reserve(a.size());
  for (const UPoly& c : a) out.push_back(c * m);
  btrim(out);
  return out;
}

BPoly bshift(const BPoly& a, u32 k, const FieldCtx* F) {
  if (a.empty()) return a;
  BPoly out(k, UPoly::zero(F));
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

BPoly bsub(const BPoly& a, const BPoly& b) {
  BPoly out = a;
  if (b.size() > out.size()) out.resize(b.size(), UPoly::zero(b[0].field()));
  for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  btrim(out);
  return out;
}

UPoly bcontent(const BPoly& a, const FieldCtx* F) {
  UPoly g = UPoly::zero(F);
  for (const UPoly& c : a) g = gcd(g, c);
  return g;
}

BPoly bprimpart(const BPoly& a, const FieldCtx* F) {
  UPoly cont = bcontent(a, F);
  if (cont.degree() <= 0) return a;
  BPoly out;
  out.reserve(a.size());
  for (const UPoly& c : a) {
    auto [q, r] = divrem(c, cont);
    check(r.is_zero(), "content division left a remainder");
    out.push_back(q);
  }
  return out;
}

// Pseudo-remainder of A by B in y (B nonzero): repeatedly cancels the top
// term after scaling by B's leading coefficient.
BPoly bpseudo_rem(BPoly A, const BPoly& B, const FieldCtx* F) {
  check(!B.empty(), "pseudo-remainder by zero");
  const UPoly& lb = B.back();
  while (!A.empty() && A.size() >= B.size()) {
    u32 delta = static_cast<u32>(A.size() - B.size());
    UPoly la = A.back();
    A = bsub(bscale(A, lb), bshift(bscale(B, la), delta, F));
  }
  return A;
}

// Gcd up to a nonzero scalar, content included.
BPoly bgcd_full(const BPoly& A, const BPoly& B, const FieldCtx* F) {
  if (bis_zero(A)) return B;
  if (bis_zero(B)) return A;
  UPoly cg = gcd(bcontent(A, F), bcontent(B, F));
  BPoly a = bprimpart(A, F);
  BPoly b = bprimpart(B, F);
  while (!b.empty()) {
    BPoly r = bpseudo_rem(a, b, F);
    a = std::move(b);
    b = r.empty() ? r : bprimpart(r, F);
  }
  return bscale(bprimpart(a, F), cg);
}

bool bconstant(const BPoly& a) {
  return a.size() == 1 && a[0].degree() == 0;
}

BPoly bderiv_x(const BPoly& a) {
  BPoly out;
  out.reserve(a.size());
  for (const UPoly& c : a) out.push_back(c.derivative());
  btrim(out);
  return out;
}

BPoly bderiv_y(const BPoly& a, const FieldCtx* F) {
  BPoly out;
  if (a.size() <= 1) return out;
  out.reserve(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i)
    out.push_back(a[i].scaled(F->from_int(i % F->p)));
  btrim(out);
  return out;
}

}  // namespace

bool hompoly_squarefree(const HomPoly& f) {
  require(!f.is_zero(), "squarefree test needs a nonzero polynomial");
  const FieldCtx* F = f.field();
  u32 d = f.degree();
  if (d == 0) return true;
  u32 mins[3] = {d + 1, d + 1, d + 1};
  f.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem&) {
    mins[0] = std::min(mins[0], a);
    mins[1] = std::min(mins[1], b);
    mins[2] = std::min(mins[2], c);
  });
  if (mins[0] >= 2 || mins[1] >= 2 || mins[2] >= 2) return false;

  // Dehomogenize at z = 1 (the Z^mins[2] factor was just checked to be at
  // most a single power, and Z does not divide the rest).
  std::vector<std::vector<FieldElem>> rows(d + 1,
                                           std::vector<FieldElem>(d + 1, F->zero()));
  f.for_each_term([&](u32 a, u32 b, u32, const FieldElem& v) { rows[b][a] = v; });
  BPoly g;
  g.reserve(d + 1);
  for (u32 b = 0; b <= d; ++b) g.push_back(UPoly(F, rows[b]));
  btrim(g);
  check(!g.empty(), "dehomogenization of a nonzero polynomial vanished");
  if (bconstant(g)) return true;  // f was a single coordinate power Z^1

  BPoly gx = bderiv_x(g);
  BPoly gy = bderiv_y(g, F);
  if (bis_zero(gx) && bis_zero(gy)) return false;  // p-th power
  BPoly d1 = bis_zero(gx) ? g : bgcd_full(g, gx, F);
  BPoly d2 = bis_zero(gy) ? d1 : bgcd_full(d1, gy, F);
  return bconstant(d2);
}

// ---------------------------------------------------------------------------
// PlaneCurve

PlaneCurve PlaneCurve::hermitian(const FieldCtx* k, u64 q) {
  require(k != nullptr && q >= 2, "hermitian curve needs a field and q >= 2");
  require(k->order() == q * q, "hermitian curve lives over the field of order q^2");
  u32 d = static_cast<u32>(q + 1);
  HomPoly f(k, d);
  f.set_coeff(static_cast<u32>(q), 0, 1, k->one());
  f.set_coeff(1, 0, static_cast<u32>(q), k->one());
  f.set_coeff(0, d, 0, -k->one());
  return from_poly(f);
}

PlaneCurve PlaneCurve::fermat(const FieldCtx* k, u32 d) {
  require(k != nullptr && d >= 1, "fermat curve needs a field and d >= 1");
  require(d % k->p != 0, "fermat degree divisible by the characteristic is not reduced-friendly");
  HomPoly f(k, d);
  f.set_coeff(d, 0, 0, k->one());
  f.set_coeff(0, d, 0, k->one());
  f.set_coeff(0, 0, d, k->one());
  return from_poly(f);
}

PlaneCurve PlaneCurve::from_poly(const HomPoly& f) {
  require(!f.is_zero(), "curve polynomial must be nonzero");
  require(f.degree() >= 1, "curve must have positive degree");
  HomPoly norm = f.normalized();
  require(hompoly_squarefree(norm), "curve polynomial must be squarefree");
  PlaneCurve C;
  C.k = f.field();
  C.degree = f.degree();
  C.F = norm;
  return C;
}

namespace {

// P over any lattice field, re-expressed over a field that also contains k.
ProjPoint lift_into(const FieldCtx* k, const ProjPoint& P) {
  if (is_subfield(k, P.F)) return P;
  return embed_point(P, FieldCtx::compositum(k, P.F));
}

}  // namespace

const HomPoly& PlaneCurve::poly_over(const FieldCtx* ext) const {
  if (ext == k) return F;
  auto it = poly_cache_.find(ext);
  if (it != poly_cache_.end()) return it->second;
  require(is_subfield(k, ext), "field is not an extension of the curve field");
  auto [it2, inserted] = poly_cache_.emplace(ext, embed_hompoly(F, ext));
  (void)inserted;
  return it2->second;
}

bool PlaneCurve::contains(const ProjPoint& P) const {
  ProjPoint Q = lift_into(k, P);
  return poly_over(Q.F).eval_point(Q).is_zero();
}

bool PlaneCurve::is_smooth_at(const ProjPoint& P) const {
  require(contains(P), "smoothness is defined at points of the curve");
  ProjPoint Q = lift_into(k, P);
  const HomPoly& G = poly_over(Q.F);
  for (u32 var = 0; var < 3; ++var) {
    if (!G.derivative(var).eval_point(Q).is_zero()) return true;
  }
  return false;
}

u32 PlaneCurve::multiplicity_at(const ProjPoint& Pin) const {
  ProjPoint P = lift_into(k, Pin);
  const HomPoly& G = poly_over(P.F);
  if (!G.eval_point(P).is_zero()) return 0;
  const FieldCtx* E = P.F;
  u32 t = 3;
  for (u32 i = 0; i < 3; ++i) {
    if (!P.v[i].is_zero()) {
      t = i;
      break;
    }
  }
  check(t < 3, "projective point with zero representative");
  // Columns: the two standard vectors other than t, then P itself, so the
  // matrix sends (0:0:1) to P and is invertible.
  std::array<FieldElem, 9> m;
  m.fill(E->zero());
  u32 col = 0;
  for (u32 i = 0; i < 3; ++i) {
    if (i == t) continue;
    m[i * 3 + col] = E->one();
    ++col;
  }
  for (u32 r = 0; r < 3; ++r) m[r * 3 + 2] = P.v[r];
  ProjMatrix T = ProjMatrix::make(E, m);
  HomPoly H = G.compose(T);
  u32 best = degree + 1;
  H.for_each_term([&](u32 a, u32 b, u32, const FieldElem&) {
    best = std::min(best, a + b);
  });
  check(best <= degree, "composed polynomial vanished");
  return best;
}

const std::vector<ProjPoint>& PlaneCurve::points_over(const FieldCtx* ext,
                                                      u64 field_cap) const {
  auto it = point_cache_.find(ext);
  if (it != point_cache_.end()) return it->second;
  require(is_subfield(k, ext), "field is not an extension of the curve field");
  require(ext->order() <= field_cap, "field too large for point enumeration");
  const HomPoly& G = poly_over(ext);
  u64 q = ext->order();
  u32 d = degree;
  std::vector<ProjPoint> pts;

  // Chart X = 0: the binary form G(0, Y, Z) as a polynomial in z at Y = 1,
  // plus the point (0:0:1).
  std::vector<FieldElem> hz(d + 1, ext->zero());
  for (u32 c = 0; c <= d; ++c) hz[c] = G.coeff(0, d - c, c);
  UPoly h(ext, hz);
  if (h.is_zero()) {
    // The line X = 0 is a component.
    for (u64 zi = 0; zi < q; ++zi)
      pts.push_back(ProjPoint::make(ext->zero(), ext->one(), ext->from_index(zi)));
    pts.push_back(ProjPoint::make(ext->zero(), ext->zero(), ext->one()));
  } else {
    for (const auto& [r, mult] : roots_with_multiplicity(h)) {
      (void)mult;
      pts.push_back(ProjPoint::make(ext->zero(), ext->one(), r));
    }
    if (G.coeff(0, 0, d).is_zero())
      pts.push_back(ProjPoint::make(ext->zero(), ext->zero(), ext->one()));
  }

  // Charts X = 1: one univariate root extraction in z per value of y.
  // Group the terms by z-exponent once.
  std::vector<std::vector<std::pair<u32, FieldElem>>> by_z(d + 1);
  G.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    (void)a;
    by_z[c].push_back({b, v});
  });
  for (u64 yi = 0; yi < q; ++yi) {
    FieldElem y = ext->from_index(yi);
    std::vector<FieldElem> ypow(d + 1, ext->one());
    for (u32 i = 1; i <= d; ++i) ypow[i] = ypow[i - 1] * y;
    std::vector<FieldElem> fz(d + 1, ext->zero());
    for (u32 c = 0; c <= d; ++c) {
      FieldElem acc = ext->zero();
      for (const auto& [b, v] : by_z[c]) acc += v * ypow[b];
      fz[c] = acc;
    }
    UPoly fy(ext, fz);
    if (fy.is_zero()) {
      for (u64 zi = 0; zi < q; ++zi)
        pts.push_back(ProjPoint::make(ext->one(), y, ext->from_index(zi)));
    } else {
      for (const auto& [r, mult] : roots_with_multiplicity(fy)) {
        (void)mult;
        pts.push_back(ProjPoint::make(ext->one(), y, r));
      }
    }
  }

  std::sort(pts.begin(), pts.end(), PPointLess{});
  auto [it2, inserted] = point_cache_.emplace(ext, std::move(pts));
  (void)inserted;
  return it2->second;
}

// ---------------------------------------------------------------------------
// Interpolation

InterpolationResult interpolate_curve(const FieldCtx* base, u32 degree,
                                      const std::vector<ProjPoint>& pts) {
  require(base != nullptr && degree >= 1, "interpolation needs a field and degree >= 1");
  require(!pts.empty(), "interpolation needs at least one point");
  const FieldCtx* E = pts[0].F;
  for (const ProjPoint& P : pts)
    require(P.F == E, "interpolation points must share one field");
  require(is_subfield(base, E), "points must live over an extension of the base field");

  u32 N = HomPoly::term_count(degree);
  InterpolationResult res;
  res.ncols = N;
  res.npoints = static_cast<u32>(pts.size());
  OnlineRref rref(E, N);
  for (const ProjPoint& P : pts) {
    rref.offer(monomial_row(degree, P));
    if (rref.rank() == N) break;
  }
  res.rank = rref.rank();
  if (res.rank == N) {
    res.status = InterpolationResult::Status::none;
    return res;
  }
  if (res.rank + 1 < N) {
    res.status = InterpolationResult::Status::underdetermined;
    return res;
  }
  res.status = InterpolationResult::Status::unique;
  auto ns = rref.nullspace();
  check(ns.size() == 1, "corank-one system produced a bad nullspace");
  HomPoly raw(E, degree);
  u32 idx = 0;
  for (u32 t = 0; t <= degree; ++t) {
    u32 a = degree - t;
    for (u32 bo = 0; bo <= t; ++bo, ++idx) {
      u32 b = t - bo;
      raw.set_coeff(a, b, degree - a - b, ns[0][idx]);
    }
  }
  raw = raw.normalized();
  res.squarefree = hompoly_squarefree(raw);
  if (E == base) {
    res.raw = raw;
    res.over_base = raw;
    res.descended = true;
    return res;
  }
  HomPoly over(base, degree);
  bool ok = true;
  raw.for_each_term([&](u32 a, u32 b, u32 c, const FieldElem& v) {
    if (!ok) return;
    auto dsc = try_descend(v, base);
    if (!dsc.has_value()) {
      ok = false;
      return;
    }
    over.set_coeff(a, b, c, *dsc);
  });
  res.raw = std::move(raw);
  if (ok) {
    res.over_base = std::move(over);
    res.descended = true;
  }
  return res;
}

}  // namespace gplane
