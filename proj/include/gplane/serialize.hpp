#pragma once
// JSON encoding of every value and report type, plus decoding for the types
// that appear in scenario inputs.
//
// Conventions: a field context is {"p": .., "n": ..}; a field element is its
// list of base-p digits in the ring generator (fixed length n, little
// endian); points, lines and matrices carry one "field" object and
// coefficient lists for their coordinates (matrices row-major); divisors are
// arrays of [point, multiplicity] pairs in canonical point order; polynomials
// map "a,b,c" exponent keys to coefficients.  Everything is integers,
// strings, booleans and arrays -- no floating point.  Objects are emitted
// with sorted keys, so equal data serializes to identical bytes.

#include <string>

#include "json.hpp"

#include "gplane/criterion.hpp"
#include "gplane/hermitian.hpp"

namespace gplane {

using json = nlohmann::json;

// Values.
json to_json(const FieldCtx* F);
json to_json(const FieldElem& a);
json to_json(const ProjPoint& P);
json to_json(const ProjLine& L);
json to_json(const ProjMatrix& M);
json to_json(const Divisor& D);
json to_json(const HomPoly& f);
json to_json(const PlaneCurve& C);
json to_json(const LinFormProduct& f);

// Statuses and enums (encoded as strings).
json to_json(CheckStatus s);
json to_json(GeneratorCertificate::Status s);
json to_json(PointKind k);
json to_json(InterpolationResult::Status s);

// Reports.
json to_json(const GeneratorCertificate& c);
json to_json(const CharacterTable& t);
json to_json(const GaloisPointReport& r);
json to_json(const ScanResult& r);
json to_json(const QuotientCheck& c);
json to_json(const IntersectionCheck& c);
json to_json(const DivisorBalanceCheck& c);
json to_json(const OrbitSeparationCheck& c);
json to_json(const CriterionReport& r);
json to_json(const InterpolationResult& r);
json to_json(const PlaneModel& m);
json to_json(const ModelVerification& v);
json to_json(const OrbitEscape& e);
json to_json(const OrbitConditionReport& r);
json to_json(const ScenarioParams& p);
json to_json(const HermitianScenario& sc);

// Decoding for scenario inputs.  All functions validate shape and ranges and
// throw std::invalid_argument with a precise message on malformed data.
const FieldCtx* field_from_json(const json& j);
FieldElem elem_from_json(const json& j, const FieldCtx* F);
ProjPoint point_from_json(const json& j);
ProjLine line_from_json(const json& j);
ProjMatrix matrix_from_json(const json& j);
HomPoly hompoly_from_json(const json& j);
PlaneCurve curve_from_json(const json& j);
LinFormProduct linform_from_json(const json& j);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string to_text(const json& j);

}  // namespace gplane
