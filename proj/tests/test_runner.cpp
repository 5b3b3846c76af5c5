#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gplane/galois.hpp"
#include "gplane/hermitian.hpp"
#include "gplane/runner.hpp"
#include "gplane/serialize.hpp"
#include "gplane/version.hpp"

using namespace gplane;

namespace {

namespace fs = std::filesystem;

// A scratch directory for scenario and report files, cleaned per test.
struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("gplane_runner_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << text;
    return p.string();
  }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

json hermitian_params_scenario(u64 q, u64 s) {
  json sc;
  sc["version"] = 1;
  sc["command"] = "hermitian";
  sc["params"] = {{"q", q}, {"s", s}};
  return sc;
}

LinFormProduct coord_ratio(const FieldCtx* k, u32 num, u32 den) {
  auto unit = [&](u32 i) {
    return ProjLine::make(i == 0 ? k->one() : k->zero(),
                          i == 1 ? k->one() : k->zero(),
                          i == 2 ? k->one() : k->zero());
  };
  return LinFormProduct::from_terms(k, {{unit(num), 1}, {unit(den), -1}});
}

// Fermat cubic over GF(4) with the one-axis scaling groups, as a scenario.
json fermat_cubic_scenario() {
  const FieldCtx* F4 = FieldCtx::get(2, 2);
  const PlaneCurve C = PlaneCurve::fermat(F4, 3);
  const FieldElem z = F4->gen();

  json groups = json::array();
  constexpr u32 gen_pairs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (u32 axis = 0; axis < 3; ++axis) {
    std::array<FieldElem, 3> d = {F4->one(), F4->one(), F4->one()};
    d[axis] = z;
    json g;
    g["elements"] = json::array();
    for (const ProjMatrix& M :
         group_closure({ProjMatrix::diagonal(d[0], d[1], d[2])}, 8))
      g["elements"].push_back(to_json(M));
    g["generator"] =
        to_json(coord_ratio(F4, gen_pairs[axis][0], gen_pairs[axis][1]));
    groups.push_back(g);
  }

  json sc;
  sc["version"] = 1;
  sc["command"] = "outer-criterion";
  sc["params"] = {{"sample_ext", 3}};
  sc["curve"] = to_json(C);
  sc["groups"] = groups;
  sc["points"] =
      json::array({to_json(ProjPoint::from_ints(F4, 0, 1, 1)),
                   to_json(ProjPoint::from_ints(F4, 1, 0, 1)),
                   to_json(ProjPoint::from_ints(F4, 1, 1, 0))});
  return sc;
}

}  // namespace

TEST_CASE("field elements, points, lines and matrices round-trip through "
          "JSON") {
  SUBCASE("element digit lists are the base-p expansion of the index") {
    const FieldCtx* F9 = FieldCtx::get(3, 2);
    for (u64 i = 0; i < 9; ++i) {
      const FieldElem a = F9->from_index(i);
      const json j = to_json(a);
      // Independent oracle for the digits.
      REQUIRE(j.at("c").size() == 2);
      CHECK(j.at("c")[0].get<u64>() == i % 3);
      CHECK(j.at("c")[1].get<u64>() == i / 3);
      CHECK(elem_from_json(j, F9) == a);
      CHECK(elem_from_json(j.at("c"), F9) == a);  // bare digit-list form
    }
  }

  SUBCASE("every point of the plane over GF(4) survives the round trip") {
    const FieldCtx* F4 = FieldCtx::get(2, 2);
    u32 count = 0;
    for (u64 xi = 0; xi < 4; ++xi)
      for (u64 yi = 0; yi < 4; ++yi)
        for (u64 zi = 0; zi < 4; ++zi) {
          if (xi == 0 && yi == 0 && zi == 0) continue;
          const FieldElem x = F4->from_index(xi), y = F4->from_index(yi),
                          z = F4->from_index(zi);
          const ProjPoint P = ProjPoint::make(x, y, z);
          CHECK(point_from_json(to_json(P)) == P);
          const ProjLine L = ProjLine::make(x, y, z);
          CHECK(line_from_json(to_json(L)) == L);
          ++count;
        }
    CHECK(count == 63);  // 21 points, each over three representatives
  }

  SUBCASE("group matrices round-trip and singular input is refused") {
    HermitianScenario sc = hermitian_scenario(2, 1);
    for (const CriterionGroup& g : sc.groups)
      for (const ProjMatrix& M : g.elements)
        CHECK(matrix_from_json(to_json(M)) == M);

    json bad = to_json(sc.groups[0].elements[0]);
    for (auto& entry : bad.at("m")) entry = json::array({1, 0});  // all ones
    CHECK_THROWS_WITH_AS(matrix_from_json(bad),
                         "projective map must be invertible",
                         std::invalid_argument);
    json wide = to_json(sc.groups[0].elements[0]);
    wide.at("m")[0] = json::array({1, 0, 0, 0});
    CHECK_THROWS_WITH_AS(matrix_from_json(wide),
                         "matrix has more coefficients than the field degree",
                         std::invalid_argument);
  }

  SUBCASE("malformed coordinate data names the offending field") {
    const FieldCtx* F4 = FieldCtx::get(2, 2);
    json j = to_json(ProjPoint::from_ints(F4, 1, 0, 1));
    j.erase("field");
    CHECK_THROWS_WITH_AS(point_from_json(j),
                         "point is missing the \"field\" entry",
                         std::invalid_argument);
    json digits = json::array({json::array({7, 0}), json::array({1, 0}),
                               json::array({0, 0})});
    json p;
    p["field"] = json{{"p", 2}, {"n", 2}};
    p["v"] = digits;
    CHECK_THROWS_WITH_AS(point_from_json(p),
                         "point coefficients must be integers below p",
                         std::invalid_argument);
  }
}

TEST_CASE("polynomials, curves and coordinate functions round-trip through "
          "JSON") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);

  SUBCASE("homogeneous polynomials") {
    const PlaneCurve C = PlaneCurve::hermitian(F4, 2);
    const HomPoly f = C.F;
    CHECK(hompoly_from_json(to_json(f)) == f);

    json bad = to_json(f);
    bad["terms"]["1,1,0"] = json::array({1, 0});
    CHECK_THROWS_WITH_AS(
        hompoly_from_json(bad),
        "polynomial exponents 1,1,0 do not sum to the degree",
        std::invalid_argument);
    json key = to_json(f);
    key["terms"]["x,y"] = json::array({1, 0});
    CHECK_THROWS_WITH_AS(
        hompoly_from_json(key),
        "polynomial exponent key \"x,y\" is not of the form a,b,c",
        std::invalid_argument);
  }

  SUBCASE("curves check the declared degree") {
    const PlaneCurve C = PlaneCurve::fermat(F4, 3);
    const PlaneCurve back = curve_from_json(to_json(C));
    CHECK(back.degree == C.degree);
    CHECK(back.F == C.F);

    json bad = to_json(C);
    bad["degree"] = 4;
    CHECK_THROWS_WITH_AS(curve_from_json(bad),
                         "curve degree does not match its polynomial",
                         std::invalid_argument);
  }

  SUBCASE("coordinate functions keep their scalar and terms") {
    HermitianScenario sc = hermitian_scenario(2, 1);
    for (const CriterionGroup& g : sc.groups) {
      REQUIRE(g.generator.has_value());
      CHECK(linform_from_json(to_json(*g.generator)) == *g.generator);
    }
    const LinFormProduct r = coord_ratio(F4, 0, 2).scaled(F4->gen());
    CHECK(linform_from_json(to_json(r)) == r);
  }
}

TEST_CASE("divisor and report serialization is structural and exact") {
  const FieldCtx* F13 = FieldCtx::get(13, 1);
  const PlaneCurve C = PlaneCurve::fermat(F13, 4);

  SUBCASE("a line cut over a splitting extension serializes point by point") {
    const Divisor cut =
        line_intersection_divisor(C, ProjLine::from_ints(F13, 1, 0, 0));
    const json j = to_json(cut);
    REQUIRE(j.is_array());
    i64 total = 0;
    for (const json& entry : j) {
      REQUIRE(entry.is_array());
      REQUIRE(entry.size() == 2);
      CHECK(entry[0].is_object());
      CHECK(entry[1].is_number_integer());
      total += entry[1].get<i64>();
    }
    CHECK(total == 4);  // Bezout: a line cuts the quartic in degree 4
  }

  SUBCASE("Galois reports carry the group and the character table") {
    const GaloisPointReport r =
        is_galois_point(C, ProjPoint::from_ints(F13, 1, 0, 0));
    REQUIRE(r.galois);
    const json j = to_json(r);
    CHECK(j.at("kind") == "outer");
    CHECK(j.at("galois") == true);
    CHECK(j.at("group_order") == 4);
    CHECK(j.at("group").size() == 4);
    CHECK(j.at("projection_degree") == 4);
    CHECK(!j.at("character").is_null());
    CHECK(j.at("character").at("values").size() == 4);
  }

  SUBCASE("no floating point numbers anywhere in a full scenario report") {
    HermitianScenario sc = hermitian_scenario(2, 1);
    const std::string text = to_text(to_json(sc));
    CHECK(text.find('.') == std::string::npos);  // no decimal points at all
    CHECK(text.find('e') != std::string::npos);  // sanity: text is non-trivial
  }
}

TEST_CASE("serialized scenarios are deterministic down to the byte") {
  HermitianScenario a = hermitian_scenario(2, 1);
  HermitianScenario b = hermitian_scenario(2, 1);
  CHECK(to_text(to_json(a)) == to_text(to_json(b)));
  HermitianScenario c = hermitian_scenario(2, 1, 1);
  CHECK(to_text(to_json(a)) != to_text(to_json(c)));  // the seed matters
}

TEST_CASE("execute_scenario validates the envelope before dispatch") {
  SUBCASE("version and command checks name the problem") {
    CHECK_THROWS_WITH_AS(execute_scenario(json::array()),
                         "scenario file must be a JSON object",
                         std::invalid_argument);
    json sc;
    sc["command"] = "hermitian";
    CHECK_THROWS_WITH_AS(execute_scenario(sc),
                         "scenario is missing the \"version\" entry",
                         std::invalid_argument);
    sc["version"] = 2;
    CHECK_THROWS_WITH_AS(execute_scenario(sc),
                         "scenario version 1 is required",
                         std::invalid_argument);
    sc["version"] = 1;
    sc["command"] = "bogus";
    CHECK_THROWS_WITH_AS(execute_scenario(sc),
                         "command \"bogus\" is not recognized",
                         std::invalid_argument);
  }

  SUBCASE("parameter inconsistencies surface verbatim") {
    CHECK_THROWS_WITH_AS(execute_scenario(hermitian_params_scenario(2, 2)),
                         "s must divide q - 1", std::invalid_argument);
  }

  SUBCASE("a subcommand pin rejects a mismatched scenario") {
    RunOverrides ov;
    ov.expect_command = "scan";
    CHECK_THROWS_WITH_AS(
        execute_scenario(hermitian_params_scenario(2, 1), ov),
        "the scenario command \"hermitian\" does not match the subcommand "
        "\"scan\"",
        std::invalid_argument);
  }
}

TEST_CASE("the full scenario pipeline produces a pass envelope"
          * doctest::timeout(120)) {
  const json envelope = execute_scenario(hermitian_params_scenario(2, 1));
  CHECK(envelope.at("tool").at("name") == "gplane");
  CHECK(envelope.at("tool").at("version") == kToolVersion);
  CHECK(envelope.at("command") == "hermitian");
  CHECK(envelope.at("verdict") == "pass");
  CHECK(envelope.at("error").is_null());
  CHECK(envelope.at("scenario").at("params").at("q") == 2);
  const json& report = envelope.at("report");
  CHECK(report.at("params").at("d") == 3);
  CHECK(report.at("criterion").at("verdict") == "pass");
  CHECK(report.at("verification").at("status") == "pass");
  CHECK(exit_code_of(envelope) == 0);
}

TEST_CASE("explicit criterion scenarios run the checker and the model"
          * doctest::timeout(240)) {
  SUBCASE("the coordinate-group cubic passes end to end") {
    const json envelope = execute_scenario(fermat_cubic_scenario());
    CHECK(envelope.at("verdict") == "pass");
    const json& report = envelope.at("report");
    CHECK(report.at("criterion").at("verdict") == "pass");
    REQUIRE(!report.at("model").is_null());
    CHECK(report.at("model").at("expected_degree") == 3);
    CHECK(report.at("model").at("interpolation").at("status") == "unique");
    CHECK(report.at("verification").at("status") == "pass");
    CHECK(exit_code_of(envelope) == 0);
  }

  SUBCASE("without generators the model is skipped and the verdict stands") {
    json sc = fermat_cubic_scenario();
    for (auto& g : sc.at("groups")) g.erase("generator");
    const json envelope = execute_scenario(sc);
    // Condition (a) has no certificate to check, so the criterion cannot
    // reach a pass verdict; nothing may claim otherwise.
    CHECK(envelope.at("verdict") == "unverified");
    CHECK(envelope.at("report").at("model").is_null());
    CHECK(exit_code_of(envelope) == 2);
  }

  SUBCASE("build_model=false stops after the criterion") {
    json sc = fermat_cubic_scenario();
    sc["params"]["build_model"] = false;
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "pass");
    CHECK(envelope.at("report").at("model").is_null());
    CHECK(envelope.at("report").at("verification").is_null());
  }
}

TEST_CASE("fermat-check scenarios separate hypothesis failures from "
          "condition failures") {
  const FieldCtx* F4 = FieldCtx::get(2, 2);

  json sc;
  sc["version"] = 1;
  sc["command"] = "fermat-check";
  sc["curve"] = json{{"kind", "fermat"}, {"d", 3},
                     {"field", json{{"p", 2}, {"n", 2}}}};

  SUBCASE("vertices of the Fermat cubic satisfy the condition") {
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "pass");
    const json& orbit = envelope.at("report").at("orbit");
    CHECK(orbit.at("hypothesis") == true);
    CHECK(orbit.at("holds") == true);
    CHECK(orbit.at("group_order") == 9);
    CHECK(exit_code_of(envelope) == 0);
  }

  SUBCASE("collinear centers are a hypothesis failure, not an escape") {
    sc["points"] = json::array({to_json(ProjPoint::from_ints(F4, 1, 0, 0)),
                                to_json(ProjPoint::from_ints(F4, 0, 1, 0)),
                                to_json(ProjPoint::from_ints(F4, 1, 1, 0))});
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "fail");
    const json& orbit = envelope.at("report").at("orbit");
    CHECK(orbit.at("hypothesis") == false);
    CHECK(orbit.at("hypothesis_detail") == "the centers are collinear");
    CHECK(orbit.at("escape").is_null());
    CHECK(exit_code_of(envelope) == 1);
  }

  SUBCASE("a tilted Galois triple fails with an escape witness") {
    sc["points"] = json::array({to_json(ProjPoint::from_ints(F4, 1, 0, 0)),
                                to_json(ProjPoint::from_ints(F4, 0, 1, 0)),
                                to_json(ProjPoint::from_ints(F4, 1, 1, 1))});
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "fail");
    const json& orbit = envelope.at("report").at("orbit");
    CHECK(orbit.at("hypothesis") == true);
    CHECK(orbit.at("holds") == false);
    REQUIRE(!orbit.at("escape").is_null());
    CHECK(orbit.at("escape").contains("from"));
    CHECK(orbit.at("escape").contains("map"));
    CHECK(orbit.at("escape").contains("to"));
  }
}

TEST_CASE("scan scenarios census the plane and check expectations") {
  json sc;
  sc["version"] = 1;
  sc["command"] = "scan";
  sc["curve"] = json{{"kind", "hermitian"}, {"q", 2}};
  sc["params"] = json{{"candidates", "curve"}};

  SUBCASE("all nine rational points of the Hermitian cubic are inner Galois") {
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "pass");
    const json& scan = envelope.at("report").at("scan");
    CHECK(scan.at("total_points") == 9);
    CHECK(scan.at("on_curve") == 9);
    CHECK(scan.at("inner_galois") == 9);
    CHECK(scan.at("outer_galois") == 0);
    CHECK(scan.at("reports").size() == 9);
    CHECK(exit_code_of(envelope) == 0);
  }

  SUBCASE("a wrong expectation fails with the count as witness") {
    sc["expect"] = json{{"inner_galois", 8}};
    const json envelope = execute_scenario(sc);
    CHECK(envelope.at("verdict") == "fail");
    const json& misses = envelope.at("report").at("expect_failures");
    REQUIRE(misses.size() == 1);
    CHECK(misses[0].at("count") == "inner_galois");
    CHECK(misses[0].at("expected") == 8);
    CHECK(misses[0].at("actual") == 9);
    CHECK(exit_code_of(envelope) == 1);
  }

  SUBCASE("an oversized field is refused outright") {
    sc["params"]["field_cap"] = 3;
    CHECK_THROWS_WITH_AS(execute_scenario(sc),
                         "the scan field has order 4, above the cap 3",
                         std::invalid_argument);
  }
}

TEST_CASE("run_scenario writes reports atomically and deterministically") {
  TempDir tmp;

  SUBCASE("two runs of the same file produce byte-identical reports") {
    const std::string scenario = tmp.write("fermat.json", R"({
      "version": 1,
      "command": "fermat-check",
      "curve": { "kind": "fermat", "d": 3, "field": { "p": 2, "n": 2 } }
    })");
    const std::string out_a = tmp.path("a.json");
    const std::string out_b = tmp.path("b.json");
    CHECK(run_scenario(scenario, out_a) == 0);
    CHECK(run_scenario(scenario, out_b) == 0);
    std::ifstream fa(out_a), fb(out_b);
    const std::string ta((std::istreambuf_iterator<char>(fa)),
                         std::istreambuf_iterator<char>());
    const std::string tb((std::istreambuf_iterator<char>(fb)),
                         std::istreambuf_iterator<char>());
    CHECK(ta == tb);
    CHECK(!ta.empty());
    CHECK(!fs::exists(out_a + ".tmp"));  // the temporary was renamed away

    // The report embeds the scenario and the tool version.
    const json envelope = read_json(out_a);
    CHECK(envelope.at("scenario").at("command") == "fermat-check");
    CHECK(envelope.at("tool").at("version") == kToolVersion);
  }

  SUBCASE("a malformed file yields an error envelope with parse position") {
    const std::string scenario = tmp.write("broken.json", "{ \"version\": 1,\n  oops\n}");
    const std::string out = tmp.path("err.json");
    CHECK(run_scenario(scenario, out) == 2);
    const json envelope = read_json(out);
    CHECK(envelope.at("verdict") == "unverified");
    REQUIRE(envelope.at("error").is_string());
    const std::string message = envelope.at("error").get<std::string>();
    CHECK(message.find("parse error") != std::string::npos);
    CHECK(message.find("line 2") != std::string::npos);
  }

  SUBCASE("a missing file is an error, not a crash") {
    CHECK(run_scenario(tmp.path("absent.json"), tmp.path("out.json")) == 2);
    const json envelope = read_json(tmp.path("out.json"));
    CHECK(envelope.at("error").get<std::string>().find("cannot read") !=
          std::string::npos);
  }

  SUBCASE("inconsistent parameters give exit 2 with the message preserved") {
    const std::string scenario = tmp.write("bad.json", R"({
      "version": 1,
      "command": "hermitian",
      "params": { "q": 2, "s": 2 }
    })");
    const std::string out = tmp.path("bad_report.json");
    CHECK(run_scenario(scenario, out) == 2);
    const json envelope = read_json(out);
    CHECK(envelope.at("error") == "s must divide q - 1");
    CHECK(envelope.at("command") == "hermitian");
  }

  SUBCASE("overrides reach the workflow") {
    const std::string scenario = tmp.write("seeded.json", R"({
      "version": 1,
      "command": "hermitian",
      "params": { "q": 2, "s": 1 }
    })");
    RunOverrides ov;
    ov.seed = 1;
    const std::string out = tmp.path("seeded_report.json");
    CHECK(run_scenario(scenario, out, ov) == 0);
    const json envelope = read_json(out);
    CHECK(envelope.at("report").at("params").at("seed") == 1);
  }
}
