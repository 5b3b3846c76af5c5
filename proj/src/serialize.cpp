#include "gplane/serialize.hpp"

#include <string>
#include <vector>

#include "gplane/check.hpp"

namespace gplane {

namespace {

std::vector<u64> digits_of(const FieldElem& a) {
  const FieldCtx* F = a.field();
  std::vector<u64> out(F->n, 0);
  u64 idx = a.index();
  for (u32 i = 0; i < F->n; ++i) {
    out[i] = idx % F->p;
    idx /= F->p;
  }
  return out;
}

json triple_json(const FieldCtx* F, const std::array<FieldElem, 3>& v) {
  json out;
  out["field"] = to_json(F);
  out["v"] = json::array();
  for (const FieldElem& a : v) out["v"].push_back(digits_of(a));
  return out;
}

const json& member(const json& j, const char* key, const char* what) {
  require(j.is_object(), std::string(what) + " must be an object");
  auto it = j.find(key);
  require(it != j.end(),
          std::string(what) + " is missing the \"" + key + "\" entry");
  return *it;
}

bool is_uint(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<i64>() >= 0);
}

u64 uint_member(const json& j, const char* key, const char* what) {
  const json& v = member(j, key, what);
  require(is_uint(v), std::string(what) + " entry \"" + key +
                          "\" must be a non-negative integer");
  return v.get<u64>();
}

FieldElem elem_from_digits(const json& j, const FieldCtx* F,
                           const char* what) {
  require(j.is_array(), std::string(what) + " must be a coefficient list");
  std::vector<u64> c;
  for (const json& d : j) {
    require(is_uint(d) && d.get<u64>() < F->p,
            std::string(what) + " coefficients must be integers below p");
    c.push_back(d.get<u64>());
  }
  require(c.size() <= F->n,
          std::string(what) + " has more coefficients than the field degree");
  return F->from_coeffs(c);
}

std::array<FieldElem, 3> triple_from_json(const json& j, const FieldCtx*& F,
                                          const char* what) {
  F = field_from_json(member(j, "field", what));
  const json& v = member(j, "v", what);
  require(v.is_array() && v.size() == 3,
          std::string(what) + " needs exactly three coordinates");
  return {elem_from_digits(v[0], F, what), elem_from_digits(v[1], F, what),
          elem_from_digits(v[2], F, what)};
}

}  // namespace

json to_json(const FieldCtx* F) {
  json out;
  out["p"] = F->p;
  out["n"] = F->n;
  if (F->seed != 0) out["seed"] = F->seed;
  return out;
}

json to_json(const FieldElem& a) {
  json out;
  out["field"] = to_json(a.field());
  out["c"] = digits_of(a);
  return out;
}

json to_json(const ProjPoint& P) { return triple_json(P.F, P.v); }

json to_json(const ProjLine& L) { return triple_json(L.F, L.v); }

json to_json(const ProjMatrix& M) {
  json out;
  out["field"] = to_json(M.F);
  out["m"] = json::array();
  for (const FieldElem& a : M.m) out["m"].push_back(digits_of(a));
  return out;
}

json to_json(const Divisor& D) {
  json out = json::array();
  for (const auto& [P, mult] : D.entries()) {
    out.push_back(json::array({to_json(P), mult}));
  }
  return out;
}

json to_json(const HomPoly& f) {
  json out;
  out["field"] = to_json(f.field());
  out["degree"] = f.degree();
  json terms = json::object();
  f.for_each_term([&terms](u32 a, u32 b, u32 c, const FieldElem& v) {
    terms[std::to_string(a) + "," + std::to_string(b) + "," +
          std::to_string(c)] = digits_of(v);
  });
  out["terms"] = std::move(terms);
  return out;
}

json to_json(const PlaneCurve& C) {
  json out;
  out["degree"] = C.degree;
  out["poly"] = to_json(C.F);
  return out;
}

json to_json(const LinFormProduct& f) {
  json out;
  out["field"] = to_json(f.field());
  out["scalar"] = digits_of(f.scalar());
  out["terms"] = json::array();
  for (const LinTerm& t : f.terms()) {
    json term;
    term["form"] = to_json(t.form);
    term["exp"] = t.exp;
    out["terms"].push_back(std::move(term));
  }
  return out;
}

json to_json(CheckStatus s) { return std::string(to_string(s)); }

json to_json(GeneratorCertificate::Status s) {
  switch (s) {
    case GeneratorCertificate::Status::verified: return "verified";
    case GeneratorCertificate::Status::failed: return "failed";
    case GeneratorCertificate::Status::unverified: return "unverified";
  }
  fail("unknown certificate status");
}

json to_json(PointKind k) {
  return k == PointKind::inner ? "inner" : "outer";
}

json to_json(InterpolationResult::Status s) {
  switch (s) {
    case InterpolationResult::Status::unique: return "unique";
    case InterpolationResult::Status::underdetermined: return "underdetermined";
    case InterpolationResult::Status::none: return "none";
  }
  fail("unknown interpolation status");
}

json to_json(const GeneratorCertificate& c) {
  json out;
  out["status"] = to_json(c.status);
  out["pole_degree"] = c.pole_degree;
  out["group_order"] = c.group_order;
  out["detail"] = c.detail;
  return out;
}

json to_json(const CharacterTable& t) {
  json out;
  out["axis"] = to_json(t.axis);
  out["values"] = json::array();
  for (const auto& [M, a] : t.values)
    out["values"].push_back(json::array({to_json(M), digits_of(a)}));
  return out;
}

json to_json(const GaloisPointReport& r) {
  json out;
  out["center"] = to_json(r.point);
  out["kind"] = to_json(r.kind);
  out["multiplicity"] = r.multiplicity;
  out["projection_degree"] = r.projection_degree;
  out["group_order"] = r.group.size();
  out["group"] = json::array();
  for (const ProjMatrix& M : r.group) out["group"].push_back(to_json(M));
  out["galois"] = r.galois;
  out["order_divides_degree"] = r.order_divides_degree;
  out["character"] = r.character ? to_json(*r.character) : json(nullptr);
  return out;
}

json to_json(const ScanResult& r) {
  json out;
  out["total_points"] = r.total_points;
  out["on_curve"] = r.on_curve;
  out["skipped_singular"] = r.skipped_singular;
  out["inner_galois"] = r.inner_galois;
  out["outer_galois"] = r.outer_galois;
  out["reports"] = json::array();
  for (const GaloisPointReport& g : r.reports)
    out["reports"].push_back(to_json(g));
  return out;
}

json to_json(const QuotientCheck& c) {
  json out;
  out["status"] = to_json(c.status);
  out["certificate"] = c.certificate ? to_json(*c.certificate) : json(nullptr);
  return out;
}

json to_json(const IntersectionCheck& c) {
  json out;
  out["groups"] = json::array({c.first, c.second});
  out["shared"] = json::array();
  for (const ProjMatrix& M : c.shared) out["shared"].push_back(to_json(M));
  out["status"] = to_json(c.status);
  return out;
}

json to_json(const DivisorBalanceCheck& c) {
  json out;
  out["left_group"] = c.left_group;
  out["right_group"] = c.right_group;
  if (c.point != 0) out["point"] = c.point;
  out["left"] = to_json(c.left);
  out["right"] = to_json(c.right);
  out["status"] = to_json(c.status);
  return out;
}

json to_json(const OrbitSeparationCheck& c) {
  json out;
  out["group"] = c.group;
  out["points"] = json::array({c.first_point, c.second_point});
  out["first_orbit"] = json::array();
  for (const ProjPoint& P : c.first_orbit)
    out["first_orbit"].push_back(to_json(P));
  out["second_orbit"] = json::array();
  for (const ProjPoint& P : c.second_orbit)
    out["second_orbit"].push_back(to_json(P));
  out["status"] = to_json(c.status);
  return out;
}

json to_json(const CriterionReport& r) {
  json out;
  out["variant"] = r.inner ? "inner" : "outer";
  out["rational_quotients"] = json::array();
  for (const QuotientCheck& c : r.rational_quotients)
    out["rational_quotients"].push_back(to_json(c));
  out["pairwise_trivial"] = json::array();
  for (const IntersectionCheck& c : r.pairwise_trivial)
    out["pairwise_trivial"].push_back(to_json(c));
  out["divisor_balance"] = json::array();
  for (const DivisorBalanceCheck& c : r.divisor_balance)
    out["divisor_balance"].push_back(to_json(c));
  out["orbit_separation"] = json::array();
  for (const OrbitSeparationCheck& c : r.orbit_separation)
    out["orbit_separation"].push_back(to_json(c));
  out["verdict"] = to_json(r.verdict);
  return out;
}

json to_json(const InterpolationResult& r) {
  json out;
  out["status"] = to_json(r.status);
  out["rank"] = r.rank;
  out["ncols"] = r.ncols;
  out["npoints"] = r.npoints;
  out["squarefree"] = r.squarefree;
  out["descended"] = r.descended;
  if (r.over_base) {
    out["fit"] = to_json(*r.over_base);
  } else if (r.raw) {
    out["fit"] = to_json(*r.raw);
  } else {
    out["fit"] = nullptr;
  }
  return out;
}

json to_json(const PlaneModel& m) {
  json out;
  out["variant"] = m.inner ? "inner" : "outer";
  out["source"] = to_json(m.source);
  out["group_orders"] =
      json::array({m.groups[0].size(), m.groups[1].size(), m.groups[2].size()});
  out["centers"] = json::array();
  for (const ProjPoint& P : m.centers) out["centers"].push_back(to_json(P));
  out["f"] = to_json(m.f);
  out["g"] = to_json(m.g);
  out["expected_degree"] = m.expected_degree;
  out["incidence"] = json::array({m.incidence[0], m.incidence[1], m.incidence[2]});
  out["center_images"] = json::array();
  for (const auto& P : m.center_images)
    out["center_images"].push_back(P ? to_json(*P) : json(nullptr));
  out["image_count"] = m.images.size();
  out["samples"] = m.samples;
  out["excluded"] = m.excluded;
  out["collisions"] = m.collisions;
  out["interpolation"] = to_json(m.interpolation);
  out["image"] = m.image ? to_json(*m.image) : json(nullptr);
  return out;
}

json to_json(const ModelVerification& v) {
  json out;
  out["vertex_galois"] = json::array();
  out["linear_action"] = json::array();
  out["vertex_reports"] = json::array();
  out["vertex_certificates"] = json::array();
  for (u32 i = 0; i < 3; ++i) {
    out["vertex_galois"].push_back(to_json(v.vertex_galois[i]));
    out["linear_action"].push_back(v.linear_action[i]);
    out["vertex_reports"].push_back(
        v.vertex_reports[i] ? to_json(*v.vertex_reports[i]) : json(nullptr));
    out["vertex_certificates"].push_back(v.vertex_certificates[i]
                                             ? to_json(*v.vertex_certificates[i])
                                             : json(nullptr));
  }
  out["source_invariance"] = json::array();
  for (CheckStatus s : v.source_invariance)
    out["source_invariance"].push_back(to_json(s));
  out["placement"] = json::array();
  for (CheckStatus s : v.placement) out["placement"].push_back(to_json(s));
  out["degree"] = to_json(v.degree);
  out["status"] = to_json(v.status);
  out["detail"] = v.detail;
  return out;
}

json to_json(const OrbitEscape& e) {
  json out;
  out["from"] = to_json(e.from);
  out["map"] = to_json(e.map);
  out["to"] = to_json(e.to);
  return out;
}

json to_json(const OrbitConditionReport& r) {
  json out;
  out["hypothesis"] = r.hypothesis;
  out["hypothesis_detail"] = r.hypothesis_detail;
  out["centers"] = json::array();
  for (const GaloisPointReport& g : r.centers)
    out["centers"].push_back(to_json(g));
  out["chord_points"] = r.chord_points;
  out["holds"] = r.holds;
  out["escape"] = r.escape ? to_json(*r.escape) : json(nullptr);
  out["group_order"] = r.group_order;
  out["group_capped"] = r.group_capped;
  out["diagonal_frame"] = r.diagonal_frame;
  out["groups_cyclic"] = r.groups_cyclic;
  return out;
}

json to_json(const ScenarioParams& p) {
  json out;
  out["p"] = p.p;
  out["q"] = p.q;
  out["s"] = p.s;
  out["m"] = p.m;
  out["d"] = p.d;
  out["seed"] = p.seed;
  return out;
}

json to_json(const HermitianScenario& sc) {
  json out;
  out["params"] = to_json(sc.params);
  out["curve"] = to_json(sc.curve);
  out["points"] = json::array();
  for (const ProjPoint& P : sc.points) out["points"].push_back(to_json(P));
  out["groups"] = json::array();
  for (const CriterionGroup& g : sc.groups) {
    json group;
    group["elements"] = json::array();
    for (const ProjMatrix& M : g.elements)
      group["elements"].push_back(to_json(M));
    group["generator"] = g.generator ? to_json(*g.generator) : json(nullptr);
    out["groups"].push_back(std::move(group));
  }
  out["conjugators"] =
      json::array({to_json(sc.conjugator_g1), to_json(sc.conjugator_g2)});
  out["power_identity"] = sc.power_identity;
  out["sample_field"] = to_json(sc.sample_field);
  out["criterion"] = to_json(sc.criterion);
  out["model"] = to_json(sc.model);
  out["verification"] = to_json(sc.verification);
  return out;
}

const FieldCtx* field_from_json(const json& j) {
  const u64 p = uint_member(j, "p", "field");
  const u64 n = uint_member(j, "n", "field");
  u64 seed = 0;
  if (j.contains("seed")) seed = uint_member(j, "seed", "field");
  require(n >= 1 && n <= 63, "field degree must be between 1 and 63");
  return FieldCtx::get(p, static_cast<u32>(n), seed);
}

FieldElem elem_from_json(const json& j, const FieldCtx* F) {
  if (j.is_object()) {
    const FieldCtx* own = field_from_json(member(j, "field", "element"));
    require(own == F, "element field does not match the expected context");
    return elem_from_digits(member(j, "c", "element"), F, "element");
  }
  return elem_from_digits(j, F, "element");
}

ProjPoint point_from_json(const json& j) {
  const FieldCtx* F = nullptr;
  const auto v = triple_from_json(j, F, "point");
  require(!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero()),
          "point coordinates must not all be zero");
  return ProjPoint::make(v[0], v[1], v[2]);
}

ProjLine line_from_json(const json& j) {
  const FieldCtx* F = nullptr;
  const auto v = triple_from_json(j, F, "line");
  require(!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero()),
          "line coefficients must not all be zero");
  return ProjLine::make(v[0], v[1], v[2]);
}

ProjMatrix matrix_from_json(const json& j) {
  const FieldCtx* F = field_from_json(member(j, "field", "matrix"));
  const json& m = member(j, "m", "matrix");
  require(m.is_array() && m.size() == 9, "matrix needs exactly nine entries");
  std::array<FieldElem, 9> entries;
  for (u32 i = 0; i < 9; ++i)
    entries[i] = elem_from_digits(m[i], F, "matrix");
  bool nonzero = false;
  for (const FieldElem& a : entries) nonzero = nonzero || !a.is_zero();
  require(nonzero, "matrix entries must not all be zero");
  return ProjMatrix::make(F, entries);  // rejects singular input
}

HomPoly hompoly_from_json(const json& j) {
  const FieldCtx* F = field_from_json(member(j, "field", "polynomial"));
  const u64 degree = uint_member(j, "degree", "polynomial");
  require(degree <= 1000, "polynomial degree is out of range");
  const json& terms = member(j, "terms", "polynomial");
  require(terms.is_object(), "polynomial terms must map exponents to "
                             "coefficient lists");
  HomPoly f(F, static_cast<u32>(degree));
  for (const auto& [key, value] : terms.items()) {
    u32 a = 0, b = 0, c = 0;
    char tail = 0;
    const int got = std::sscanf(key.c_str(), "%u,%u,%u%c", &a, &b, &c, &tail);
    require(got == 3, "polynomial exponent key \"" + key +
                          "\" is not of the form a,b,c");
    require(a + b + c == degree,
            "polynomial exponents " + key + " do not sum to the degree");
    f.set_coeff(a, b, c, elem_from_digits(value, F, "polynomial"));
  }
  return f;
}

PlaneCurve curve_from_json(const json& j) {
  const HomPoly f = hompoly_from_json(member(j, "poly", "curve"));
  if (j.contains("degree")) {
    require(uint_member(j, "degree", "curve") == f.degree(),
            "curve degree does not match its polynomial");
  }
  return PlaneCurve::from_poly(f);
}

LinFormProduct linform_from_json(const json& j) {
  const FieldCtx* F = field_from_json(member(j, "field", "function"));
  const json& terms = member(j, "terms", "function");
  require(terms.is_array(), "function terms must be an array");
  std::vector<LinTerm> ts;
  for (const json& t : terms) {
    const json& e = member(t, "exp", "function term");
    require(e.is_number_integer(), "function exponents must be integers");
    ProjLine L = line_from_json(member(t, "form", "function term"));
    require(L.F == F, "function term lines must live over the function's "
                      "field");
    ts.push_back({L, e.get<i64>()});
  }
  LinFormProduct f = LinFormProduct::from_terms(F, ts);
  if (j.contains("scalar")) {
    const FieldElem c = elem_from_digits(j.at("scalar"), F, "function scalar");
    require(!c.is_zero(), "function scalar must be nonzero");
    f = f.scaled(c);
  }
  return f;
}

std::string to_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gplane
