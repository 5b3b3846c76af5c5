#include "gplane/linform.hpp"

#include <map>
#include <sstream>

#include "gplane/check.hpp"

namespace gplane {

LinFormProduct::LinFormProduct(const FieldCtx* F) : F_(F), scalar_(F->one()) {
  check(F != nullptr, "linear-form product needs a field context");
}

LinFormProduct LinFormProduct::from_terms(const FieldCtx* F,
                                          const std::vector<LinTerm>& ts) {
  LinFormProduct out(F);
  std::map<ProjLine, i64, PLineLess> acc;
  i64 total = 0;
  for (const LinTerm& t : ts) {
    require(t.form.F == F, "linear form from a different field");
    acc[t.form] += t.exp;
    total += t.exp;
  }
  require(total == 0, "exponents of a linear-form product must sum to zero");
  for (const auto& [form, exp] : acc) {
    if (exp != 0) out.terms_.push_back({form, exp});
  }
  return out;
}

LinFormProduct LinFormProduct::operator*(const LinFormProduct& o) const {
  check(F_ == o.F_, "field mismatch");
  std::vector<LinTerm> ts = terms_;
  ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
  LinFormProduct out = from_terms(F_, ts);
  out.scalar_ = scalar_ * o.scalar_;
  return out;
}

LinFormProduct LinFormProduct::inverse() const {
  LinFormProduct out(F_);
  out.scalar_ = scalar_.inverse();
  out.terms_ = terms_;
  for (LinTerm& t : out.terms_) t.exp = -t.exp;
  return out;
}

LinFormProduct LinFormProduct::scaled(const FieldElem& c) const {
  require(!c.is_zero(), "scalar of a linear-form product must be nonzero");
  LinFormProduct out = *this;
  out.scalar_ = out.scalar_ * c;
  return out;
}

LinFormProduct LinFormProduct::pow(i64 e) const {
  LinFormProduct out(F_);
  if (e == 0) return out;
  out.scalar_ = (e > 0) ? scalar_.pow(static_cast<u64>(e))
                        : scalar_.inverse().pow(static_cast<u64>(-e));
  out.terms_ = terms_;
  for (LinTerm& t : out.terms_) t.exp *= e;
  return out;
}

bool LinFormProduct::operator==(const LinFormProduct& o) const {
  if (F_ != o.F_ || !(scalar_ == o.scalar_) || terms_.size() != o.terms_.size())
    return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].form != o.terms_[i].form || terms_[i].exp != o.terms_[i].exp)
      return false;
  }
  return true;
}

LinFormProduct LinFormProduct::pullback(const ProjMatrix& M) const {
  check(M.F == F_, "pullback matrix over a different field");
  std::vector<LinTerm> ts;
  ts.reserve(terms_.size());
  FieldElem extra = F_->one();
  for (const LinTerm& t : terms_) {
    // row covector times M; canonicalization drops a scalar that the value
    // tracking picks back up
    std::array<FieldElem, 3> w;
    for (u32 c = 0; c < 3; ++c) {
      w[c] = t.form.v[0] * M.at(0, c) + t.form.v[1] * M.at(1, c) +
             t.form.v[2] * M.at(2, c);
    }
    FieldElem lead = F_->zero();
    for (u32 c = 0; c < 3; ++c) {
      if (!w[c].is_zero()) {
        lead = w[c];
        break;
      }
    }
    check(!lead.is_zero(), "pullback of a linear form vanished");
    extra = extra * lead.pow_signed(t.exp);
    ts.push_back({ProjLine::make(w[0], w[1], w[2]), t.exp});
  }
  LinFormProduct out = from_terms(F_, ts);
  out.scalar_ = scalar_ * extra;
  return out;
}

LinValue LinFormProduct::value_at(const ProjPoint& P) const {
  const FieldCtx* E = P.F;
  if (!is_subfield(F_, E)) E = FieldCtx::compositum(F_, P.F);
  ProjPoint PE = (P.F == E) ? P : embed_point(P, E);
  bool zero_hit = false, pole_hit = false;
  FieldElem acc = embed(scalar_, E);
  for (const LinTerm& t : terms_) {
    ProjLine LE = (E == F_) ? t.form : embed_line(t.form, E);
    FieldElem v = LE.eval(PE);
    if (v.is_zero()) {
      (t.exp > 0 ? zero_hit : pole_hit) = true;
    } else {
      acc = acc * v.pow_signed(t.exp);
    }
  }
  LinValue out;
  if (zero_hit && pole_hit) {
    out.kind = LinValue::Kind::indeterminate;
  } else if (zero_hit) {
    out.kind = LinValue::Kind::zero;
    out.value = E->zero();
  } else if (pole_hit) {
    out.kind = LinValue::Kind::pole;
  } else {
    out.kind = LinValue::Kind::finite;
    out.value = acc;
  }
  return out;
}

Divisor LinFormProduct::divisor_on(const PlaneCurve& C) const {
  Divisor out;
  for (const LinTerm& t : terms_) {
    out = out + line_intersection_divisor(C, t.form).scaled(t.exp);
  }
  check(out.degree() == 0, "principal divisor must have degree zero");
  return out;
}

std::string LinFormProduct::str() const {
  std::ostringstream os;
  os << "(" << scalar_.str() << ")";
  for (const LinTerm& t : terms_) {
    os << " * [" << t.form.str() << "]^" << t.exp;
  }
  return os.str();
}

}  // namespace gplane
