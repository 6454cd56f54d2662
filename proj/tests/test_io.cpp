// JSON parsing, deterministic serialization, the --quick shorthand, and the
// self-checking example registry.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "chowcalc/building.hpp"
#include "chowcalc/errors.hpp"
#include "chowcalc/io.hpp"

using namespace chowcalc;

namespace {

IntPoly P(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

Err code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Err::InternalError;  // sentinel: "did not throw"
}

const char* kFig1Json = R"({
  "polymatroid": {
    "type": "flats",
    "labels": ["a", "b", "c"],
    "flats": [
      [[], 0], [["a"], 2], [["b"], 2], [["c"], 4],
      [["a", "b"], 4], [["a", "b", "c"], 5]
    ]
  },
  "building_set": "min"
})";

}  // namespace

TEST_CASE("polynomial serialization round trip") {
  IntPoly p = P({1, -2, 3});
  Json a = poly_to_json(p);
  CHECK(a.dump() == R"(["1","-2","3"])");
  CHECK(poly_from_json(a) == p);
  CHECK(poly_from_json(Json::parse(R"(["1",5,"-7"])")) == P({1, 5, -7}));
  CHECK(poly_to_json(IntPoly()).dump() == "[]");
  CHECK(poly_from_json(Json::array()).is_zero());
  CHECK(code_of([] { poly_from_json(Json::parse(R"(["x"])")); }) ==
        Err::ParseError);
  CHECK(code_of([] { poly_from_json(Json::parse(R"("1")")); }) ==
        Err::ParseError);
  CHECK(code_of([] { poly_from_json(Json::parse(R"([1.5])")); }) ==
        Err::ParseError);
}

TEST_CASE("property reports serialize with exact big-int gamma") {
  Json j = properties_to_json(check_properties(P({1, 5, 1})));
  CHECK(j["palindromic"] == true);
  CHECK(j["unimodal"] == true);
  CHECK(j["log_concave"] == true);
  CHECK(!j.contains("first_violation_index"));
  CHECK(j["gamma"].dump() == R"(["1","3"])");
  CHECK(j["gamma_positive"] == true);
  CHECK(j["real_rooted"] == true);

  Json f = properties_to_json(check_properties(P({1, 4, 5, 4, 1})));
  CHECK(f["palindromic"] == true);
  CHECK(f["gamma"].dump() == R"(["1","0","-1"])");
  CHECK(f["gamma_positive"] == false);
  CHECK(f["real_rooted"] == false);
}

TEST_CASE("stats serialization excludes timing unless asked") {
  EngineStats st;
  st.visited = 10;
  st.terms = 5;
  st.seconds = 1.25;
  Json a = stats_to_json(st, false);
  CHECK(!a.contains("seconds"));
  CHECK(a["visited"] == 10);
  Json b = stats_to_json(st, true);
  CHECK(b.contains("seconds"));
}

TEST_CASE("quick shorthand") {
  Polymatroid u = parse_quick("U(2,3)");
  CHECK(u.n() == 3);
  CHECK(u.rank_of_ground() == 2);
  Polymatroid k = parse_quick(" k( 4 ) ");
  CHECK(k.n() == 6);
  CHECK(k.ground().label(0) == "1-2");
  CHECK(parse_quick("B(5)").n() == 5);
  CHECK(code_of([] { parse_quick("U(2)"); }) == Err::ParseError);
  CHECK(code_of([] { parse_quick("K(2,3)"); }) == Err::ParseError);
  CHECK(code_of([] { parse_quick("Z(3)"); }) == Err::ParseError);
  CHECK(code_of([] { parse_quick("U(2,3) extra"); }) == Err::ParseError);
}

TEST_CASE("polymatroid JSON forms") {
  CHECK(polymatroid_from_json(Json::parse(R"({"type":"uniform","k":2,"n":4})"))
            .rank_of_ground() == 2);
  Polymatroid ul = polymatroid_from_json(
      Json::parse(R"({"type":"uniform","k":1,"labels":["p","q"]})"));
  CHECK(ul.ground().label(1) == "q");
  CHECK(polymatroid_from_json(Json::parse(R"({"type":"boolean","n":3})"))
            .is_matroid());

  Polymatroid tri = polymatroid_from_json(Json::parse(
      R"({"type":"graphic","vertices":3,"edges":[[1,2],[1,3],[2,3]]})"));
  Polymatroid k3 = polymatroid_from_json(
      Json::parse(R"({"type":"complete_graph","vertices":3})"));
  CHECK(tri.rank_of_ground() == k3.rank_of_ground());
  CHECK(tri.n() == 3);

  Polymatroid rt = polymatroid_from_json(Json::parse(
      R"({"type":"rank_table","labels":["x","y"],"table":[0,1,1,1]})"));
  CHECK(rt.rank_of_ground() == 1);
  CHECK(code_of([] {
          polymatroid_from_json(Json::parse(
              R"({"type":"rank_table","labels":["x","y"],"table":[0,1,1,0]})"));
        }) == Err::RankAxiomViolation);

  CHECK(code_of([] {
          polymatroid_from_json(Json::parse(R"({"type":"mystery"})"));
        }) == Err::ParseError);
  CHECK(code_of([] {
          polymatroid_from_json(Json::parse(R"({"type":"uniform","k":2})"));
        }) == Err::ParseError);
}

TEST_CASE("construction steps") {
  Json j = Json::parse(R"({
    "type": "construction",
    "steps": [
      {"op": "coloop", "label": "1"},
      {"op": "coloop", "label": "2"},
      {"op": "free", "label": "2p"},
      {"op": "coloop", "label": "3"},
      {"op": "free", "label": "3p"}
    ]
  })");
  Polymatroid m3 = polymatroid_from_json(j);
  CHECK(m3.n() == 5);
  CHECK(m3.rank_of_ground() == 3);
  FlatLattice L(m3);
  ChowContext C(minimal_building_set(L));
  CHECK(C.run(Engine::auto_select).hilbert == P({1, 2, 1}));

  CHECK(code_of([] {
          polymatroid_from_json(Json::parse(
              R"({"type":"construction","steps":[{"op":"free","label":"x"}]})"));
        }) == Err::ParseError);
  CHECK(code_of([] {
          polymatroid_from_json(Json::parse(
              R"({"type":"construction","steps":[{"op":"warp","label":"x"}]})"));
        }) == Err::ParseError);
  Json pr = Json::parse(R"({
    "type": "construction",
    "steps": [
      {"op": "coloop", "label": "1"},
      {"op": "coloop", "label": "2"},
      {"op": "principal", "label": "q", "flat": ["1", "2"]}
    ]
  })");
  CHECK(polymatroid_from_json(pr).rank_of_ground() == 2);
}

TEST_CASE("input parsing end to end") {
  ParsedInput in = input_from_text(kFig1Json);
  CHECK(in.building_kind == "min");
  FlatLattice L(in.M);
  CHECK(L.size() == 6);
  BuildingSet B = resolve_building_set(L, in);
  CHECK(B.members.size() == 4);
  ChowContext C(B);
  CHECK(C.run(Engine::auto_select).hilbert == P({1, 4, 5, 4, 1}));

  Json j = building_set_to_json(B, in.building_kind);
  CHECK(j["kind"] == "min");
  CHECK(j["count"] == 4);
  CHECK(j["members"].back().dump() == R"(["a","b","c"])");
}

TEST_CASE("custom building sets resolve by labels") {
  Json j = Json::parse(kFig1Json);
  j["building_set"] = Json::parse(R"([["a"],["b"],["c"],["a","b","c"]])");
  ParsedInput in = input_from_json(j);
  CHECK(in.building_kind == "custom");
  FlatLattice L(in.M);
  BuildingSet B = resolve_building_set(L, in);
  CHECK(B.members.size() == 4);

  j["building_set"] = Json::parse(R"([["b","c"]])");
  ParsedInput bad = input_from_json(j);
  FlatLattice L2(bad.M);
  CHECK(code_of([&] { resolve_building_set(L2, bad); }) == Err::UnknownFlat);
}

TEST_CASE("input validation errors") {
  CHECK(code_of([] { input_from_text("{ not json"); }) == Err::ParseError);
  CHECK(code_of([] { input_from_text(R"({"building_set":"min"})"); }) ==
        Err::ParseError);
  Json j = Json::parse(kFig1Json);
  j["building_set"] = "median";
  CHECK(code_of([&] { input_from_json(j); }) == Err::ParseError);
  j["building_set"] = Json::array();
  CHECK(code_of([&] { input_from_json(j); }) == Err::ParseError);
  CHECK(code_of([] { input_from_file("/nonexistent/path.json"); }) ==
        Err::ParseError);

  // defaults to the minimal building set when the key is absent
  Json d = Json::parse(kFig1Json);
  d.erase("building_set");
  CHECK(input_from_json(d).building_kind == "min");
}

TEST_CASE("input files round trip through disk") {
  std::string path = "chowcalc_test_input.json";
  {
    std::ofstream f(path);
    f << kFig1Json;
  }
  ParsedInput in = input_from_file(path);
  CHECK(in.M.n() == 3);
  std::remove(path.c_str());
}

TEST_CASE("example registry replays with golden checks") {
  CHECK(example_names().size() == 5);
  CHECK(run_example("fig1")["status"] == "PASS");
  CHECK(run_example("k4")["hilbert"].dump() == R"(["1","5","1"])");
  CHECK(run_example("eg1_chain_scaled")["flats"] == 62);
  Json b10 = run_example("boolean10_scaled");
  CHECK(b10["scaled_certificate"] == "-5");
  CHECK(b10["base"].dump() ==
        R"(["1","7","22","42","56","56","42","22","7","1"])");
  CHECK(code_of([] { run_example("nope"); }) == Err::ParseError);
}
