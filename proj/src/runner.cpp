#include "gplane/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

#include "gplane/check.hpp"
#include "gplane/hermitian.hpp"
#include "gplane/version.hpp"

namespace gplane {

namespace {

[[noreturn]] void fail_require(const std::string& message) {
  throw std::invalid_argument(message);
}

const json& member(const json& j, const char* key, const char* what) {
  require(j.is_object(), std::string(what) + " must be an object");
  auto it = j.find(key);
  require(it != j.end(),
          std::string(what) + " is missing the \"" + key + "\" entry");
  return *it;
}

u64 uint_of(const json& v, const char* key, const char* what) {
  const bool ok = v.is_number_unsigned() ||
                  (v.is_number_integer() && v.get<i64>() >= 0);
  require(ok, std::string(what) + " entry \"" + key +
                  "\" must be a non-negative integer");
  return v.get<u64>();
}

u64 uint_member(const json& j, const char* key, const char* what) {
  return uint_of(member(j, key, what), key, what);
}

u64 uint_param(const json& params, const char* key, u64 fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  return uint_of(params.at(key), key, "params");
}

bool bool_param(const json& params, const char* key, bool fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  require(params.at(key).is_boolean(),
          std::string("params entry \"") + key + "\" must be a boolean");
  return params.at(key).get<bool>();
}

std::string string_param(const json& params, const char* key,
                         const std::string& fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  require(params.at(key).is_string(),
          std::string("params entry \"") + key + "\" must be a string");
  return params.at(key).get<std::string>();
}

CheckStatus combine(std::initializer_list<CheckStatus> statuses) {
  CheckStatus out = CheckStatus::pass;
  for (CheckStatus s : statuses) {
    if (s == CheckStatus::fail) return CheckStatus::fail;
    if (s == CheckStatus::unverified) out = CheckStatus::unverified;
  }
  return out;
}

// Base field of GF(q^2) for a prime power q.
const FieldCtx* hermitian_field(u64 q) {
  require(q >= 2, "q must be at least 2");
  u64 p = q;
  for (u64 d = 2; d * d <= p; ++d)
    while (p % d == 0) p = d;
  u32 e = 0;
  for (u64 t = 1; t < q; t *= p) ++e;
  u64 t = 1;
  for (u32 i = 0; i < e; ++i) t *= p;
  require(t == q, "q must be a prime power");
  return FieldCtx::get(p, 2 * e);
}

PlaneCurve curve_from_spec(const json& spec, const char* what) {
  if (spec.is_object() && spec.contains("kind")) {
    const json& kind = spec.at("kind");
    require(kind.is_string(), std::string(what) + " kind must be a string");
    const std::string name = kind.get<std::string>();
    if (name == "fermat") {
      const u64 d = uint_member(spec, "d", what);
      require(d >= 3, std::string(what) + " degree d must be at least 3");
      const FieldCtx* F = field_from_json(member(spec, "field", what));
      return PlaneCurve::fermat(F, static_cast<u32>(d));
    }
    if (name == "hermitian") {
      const u64 q = uint_member(spec, "q", what);
      return PlaneCurve::hermitian(hermitian_field(q), q);
    }
    fail_require(std::string(what) + " kind \"" + name +
                 "\" is not recognized here");
  }
  return curve_from_json(spec);
}

std::array<ProjPoint, 3> coordinate_vertices(const FieldCtx* F) {
  return {ProjPoint::from_ints(F, 1, 0, 0), ProjPoint::from_ints(F, 0, 1, 0),
          ProjPoint::from_ints(F, 0, 0, 1)};
}

std::array<ProjPoint, 3> points_from_scenario(const json& scenario,
                                              const char* what) {
  const json& pts = member(scenario, "points", what);
  require(pts.is_array() && pts.size() == 3,
          std::string(what) + " needs exactly three points");
  return {point_from_json(pts[0]), point_from_json(pts[1]),
          point_from_json(pts[2])};
}

struct Outcome {
  json payload;
  CheckStatus verdict = CheckStatus::unverified;
};

Outcome run_hermitian(const json& params) {
  const u64 q = uint_member(params, "q", "params");
  const u64 s = uint_member(params, "s", "params");
  const u64 seed = uint_param(params, "seed", 0);
  const u64 ext_bound = uint_param(params, "ext_bound", 4);
  HermitianScenario sc =
      hermitian_scenario(q, s, seed, static_cast<u32>(ext_bound));
  Outcome out;
  out.payload = to_json(sc);
  out.verdict = combine(
      {sc.criterion.verdict, sc.verification.status,
       sc.power_identity ? CheckStatus::pass : CheckStatus::fail});
  return out;
}

Outcome run_criterion(bool inner, const json& scenario, const json& params) {
  const PlaneCurve C =
      curve_from_spec(member(scenario, "curve", "scenario"), "curve");
  const std::array<ProjPoint, 3> points =
      points_from_scenario(scenario, "scenario");

  const json& gspec = member(scenario, "groups", "scenario");
  require(gspec.is_array() && gspec.size() == 3,
          "scenario needs exactly three groups");
  std::array<CriterionGroup, 3> groups;
  for (u32 i = 0; i < 3; ++i) {
    const json& g = gspec[i];
    const json& elems = member(g, "elements", "group");
    require(elems.is_array() && !elems.empty(),
            "group elements must be a non-empty array");
    for (const json& e : elems)
      groups[i].elements.push_back(matrix_from_json(e));
    if (g.contains("generator") && !g.at("generator").is_null())
      groups[i].generator = linform_from_json(g.at("generator"));
  }

  const CriterionReport rep = inner ? check_inner_criterion(C, groups, points)
                                    : check_outer_criterion(C, groups, points);
  Outcome out;
  out.payload["criterion"] = to_json(rep);
  out.payload["model"] = nullptr;
  out.payload["verification"] = nullptr;
  out.verdict = rep.verdict;

  const bool want_model = bool_param(params, "build_model", true) &&
                          groups[0].generator.has_value() &&
                          groups[1].generator.has_value();
  if (rep.verdict != CheckStatus::pass || !want_model) return out;

  ModelOptions opts;
  const u64 sample_ext = uint_param(params, "sample_ext", 1);
  require(sample_ext >= 1, "params entry \"sample_ext\" must be at least 1");
  if (sample_ext > 1)
    opts.sample_field =
        FieldCtx::get(C.k->p, C.k->n * static_cast<u32>(sample_ext));
  try {
    const PlaneModel model = inner
                                 ? build_inner_model(C, groups, points, opts)
                                 : build_outer_model(C, groups, points, opts);
    const ModelVerification verification = verify_model_galois(model);
    out.payload["model"] = to_json(model);
    out.payload["verification"] = to_json(verification);
    out.verdict = combine({rep.verdict, verification.status});
  } catch (const std::logic_error& e) {
    // An enforced prescription failed: a verified failure with the thrown
    // divisor witness embedded.
    out.payload["model_error"] = e.what();
    out.verdict = CheckStatus::fail;
  }
  return out;
}

Outcome run_fermat_check(const json& scenario, const json& params) {
  const u64 group_cap = uint_param(params, "group_cap", 1ull << 12);
  const json& spec = member(scenario, "curve", "scenario");

  Outcome out;
  OrbitConditionReport orbit;
  if (spec.is_object() && spec.contains("kind") && spec.at("kind").is_string() &&
      spec.at("kind").get<std::string>() == "hermitian-model") {
    const u64 q = uint_member(spec, "q", "curve");
    const u64 s = uint_member(spec, "s", "curve");
    const u64 seed = uint_param(params, "seed", 0);
    const u64 ext_bound = uint_param(params, "ext_bound", 4);
    HermitianScenario sc =
        hermitian_scenario(q, s, seed, static_cast<u32>(ext_bound));
    orbit = orbit_condition(sc.model, sc.verification, group_cap);
    out.payload["construction"] = to_json(sc);
    require(sc.model.image.has_value(),
            "the hermitian model did not produce an image curve");
    out.payload["curve"] = to_json(*sc.model.image);
    json centers = json::array();
    for (const ProjPoint& P : coordinate_vertices(sc.model.image->k))
      centers.push_back(to_json(P));
    out.payload["centers"] = std::move(centers);
  } else {
    const PlaneCurve C = curve_from_spec(spec, "curve");
    const std::array<ProjPoint, 3> centers =
        scenario.contains("points") ? points_from_scenario(scenario, "scenario")
                                    : coordinate_vertices(C.k);
    orbit = orbit_condition(C, centers, group_cap);
    out.payload["curve"] = to_json(C);
    json cj = json::array();
    for (const ProjPoint& P : centers) cj.push_back(to_json(P));
    out.payload["centers"] = std::move(cj);
  }
  out.payload["orbit"] = to_json(orbit);

  if (!orbit.hypothesis) {
    out.verdict = CheckStatus::fail;  // hypothesis failure, named in the report
  } else if (!orbit.holds) {
    out.verdict = CheckStatus::fail;  // escape witness embedded
  } else if (orbit.group_capped) {
    out.verdict = CheckStatus::unverified;  // order extra left open
  } else {
    out.verdict = CheckStatus::pass;
  }
  return out;
}

Outcome run_scan(const json& scenario, const json& params) {
  const u64 field_cap = uint_param(params, "field_cap", 4096);
  const PlaneCurve C =
      curve_from_spec(member(scenario, "curve", "scenario"), "curve");
  require(C.k->order() <= field_cap,
          "the scan field has order " + std::to_string(C.k->order()) +
              ", above the cap " + std::to_string(field_cap));

  const std::string candidates = string_param(params, "candidates", "plane");
  ScanResult scan;
  if (candidates == "plane") {
    scan = scan_galois_points(C);
  } else if (candidates == "curve") {
    scan = scan_galois_points(C, C.points_over(C.k));
  } else {
    fail_require("params entry \"candidates\" must be \"plane\" or \"curve\"");
  }

  Outcome out;
  out.payload["curve"] = to_json(C);
  out.payload["candidates"] = candidates;
  out.payload["scan"] = to_json(scan);
  out.verdict = CheckStatus::pass;

  if (scenario.contains("expect")) {
    const json& expect = scenario.at("expect");
    require(expect.is_object(), "expect must be an object");
    const auto actual_of = [&scan](const std::string& key) -> std::optional<u64> {
      if (key == "total_points") return scan.total_points;
      if (key == "on_curve") return scan.on_curve;
      if (key == "skipped_singular") return scan.skipped_singular;
      if (key == "inner_galois") return scan.inner_galois;
      if (key == "outer_galois") return scan.outer_galois;
      return std::nullopt;
    };
    json failures = json::array();
    for (const auto& [key, value] : expect.items()) {
      const std::optional<u64> actual = actual_of(key);
      require(actual.has_value(),
              "expect entry \"" + key + "\" is not a scan count");
      const u64 want = uint_of(value, key.c_str(), "expect");
      if (*actual != want) {
        json miss;
        miss["count"] = key;
        miss["expected"] = want;
        miss["actual"] = *actual;
        failures.push_back(std::move(miss));
      }
    }
    out.payload["expected"] = expect;
    out.payload["expect_failures"] = failures;
    if (!failures.empty()) out.verdict = CheckStatus::fail;
  }
  return out;
}

}  // namespace

json execute_scenario(const json& scenario, const RunOverrides& overrides) {
  require(scenario.is_object(), "scenario file must be a JSON object");
  require(uint_member(scenario, "version", "scenario") == 1,
          "scenario version 1 is required");
  const json& cmd = member(scenario, "command", "scenario");
  require(cmd.is_string(), "scenario entry \"command\" must be a string");
  const std::string command = cmd.get<std::string>();
  if (overrides.expect_command && command != *overrides.expect_command)
    fail_require("the scenario command \"" + command +
                 "\" does not match the subcommand \"" +
                 *overrides.expect_command + "\"");

  json params = json::object();
  if (scenario.contains("params")) {
    require(scenario.at("params").is_object(), "params must be an object");
    params = scenario.at("params");
  }
  if (overrides.ext_bound) params["ext_bound"] = *overrides.ext_bound;
  if (overrides.group_cap) params["group_cap"] = *overrides.group_cap;
  if (overrides.seed) params["seed"] = *overrides.seed;

  Outcome out;
  if (command == "hermitian") {
    out = run_hermitian(params);
  } else if (command == "outer-criterion") {
    out = run_criterion(false, scenario, params);
  } else if (command == "inner-criterion") {
    out = run_criterion(true, scenario, params);
  } else if (command == "fermat-check") {
    out = run_fermat_check(scenario, params);
  } else if (command == "scan") {
    out = run_scan(scenario, params);
  } else {
    fail_require("command \"" + command + "\" is not recognized");
  }

  json envelope;
  envelope["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  envelope["scenario"] = scenario;
  envelope["command"] = command;
  envelope["report"] = std::move(out.payload);
  envelope["verdict"] = to_json(out.verdict);
  envelope["error"] = nullptr;
  return envelope;
}

json error_envelope(const json& scenario, const std::string& message) {
  json envelope;
  envelope["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  envelope["scenario"] = scenario;
  envelope["command"] = nullptr;
  if (scenario.is_object() && scenario.contains("command") &&
      scenario.at("command").is_string())
    envelope["command"] = scenario.at("command");
  envelope["report"] = nullptr;
  envelope["verdict"] = to_json(CheckStatus::unverified);
  envelope["error"] = message;
  return envelope;
}

int exit_code_of(const json& envelope) {
  if (!envelope.is_object() || !envelope.contains("verdict")) return 2;
  if (envelope.contains("error") && !envelope.at("error").is_null()) return 2;
  const json& v = envelope.at("verdict");
  if (v == to_json(CheckStatus::pass)) return 0;
  if (v == to_json(CheckStatus::fail)) return 1;
  return 2;
}

int run_scenario(const std::string& scenario_path, const std::string& out_path,
                 const RunOverrides& overrides) {
  json scenario;
  json envelope;
  try {
    std::ifstream in(scenario_path);
    require(in.good(), "cannot read scenario file " + scenario_path);
    scenario = json::parse(in);
    envelope = execute_scenario(scenario, overrides);
  } catch (const std::exception& e) {
    envelope = error_envelope(scenario, e.what());
    std::fprintf(stderr, "error: %s\n", e.what());
  }

  const std::string text = to_text(envelope);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    const std::string tmp = out_path + ".tmp";
    try {
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot open output file " + tmp);
        out << text;
        require(out.good(), "cannot write output file " + tmp);
      }
      std::filesystem::rename(tmp, out_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return 2;
    }
  }
  return exit_code_of(envelope);
}

}  // namespace gplane
