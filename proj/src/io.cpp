#include "chowcalc/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "chowcalc/building.hpp"
#include "chowcalc/errors.hpp"

namespace chowcalc {

namespace {

// ------------------------------------------------------------- JSON helpers

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(Err::ParseError, where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

int need_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer())
    bad(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string need_str(const Json& j, const char* key,
                     const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) bad(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> str_list(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : v) {
    if (!e.is_string()) bad(where, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::string> mask_labels(const GroundSet& g, Mask m) {
  std::vector<std::string> out;
  for (int i = 0; i < g.size(); ++i)
    if (m & bit(i)) out.push_back(g.label(i));
  return out;
}

// ---------------------------------------------------------- polymatroid JSON

Polymatroid construction_from_json(const Json& steps) {
  if (!steps.is_array() || steps.empty())
    bad("polymatroid.steps", "expected a nonempty array of steps");
  std::optional<Polymatroid> M;
  int ix = 0;
  for (const Json& s : steps) {
    std::string where = "polymatroid.steps[" + std::to_string(ix++) + "]";
    std::string op = need_str(s, "op", where);
    if (op == "coloop") {
      auto one = Polymatroid::uniform(1, {need_str(s, "label", where)});
      M = M ? M->direct_sum(one) : one;
    } else if (op == "free") {
      if (!M) bad(where, "the first step must be a coloop");
      M = M->free_extension(need_str(s, "label", where));
    } else if (op == "principal") {
      if (!M) bad(where, "the first step must be a coloop");
      Mask F = M->ground().mask_of(str_list(need(s, "flat", where), where));
      M = M->principal_extension(F, need_str(s, "label", where));
    } else if (op == "u_block") {
      if (!M) bad(where, "the first step must be a coloop");
      M = M->add_u_block(str_list(need(s, "labels", where), where));
    } else {
      bad(where, "unknown op '" + op + "'");
    }
  }
  return *M;
}

}  // namespace

Polymatroid polymatroid_from_json(const Json& j) {
  const std::string where = "polymatroid";
  std::string type = need_str(j, "type", where);
  if (type == "uniform") {
    int k = need_int(j, "k", where);
    if (j.contains("labels"))
      return Polymatroid::uniform(k, str_list(j.at("labels"), where));
    return Polymatroid::uniform(k, need_int(j, "n", where));
  }
  if (type == "boolean") return Polymatroid::boolean(need_int(j, "n", where));
  if (type == "graphic") {
    int nv = need_int(j, "vertices", where);
    const Json& es = need(j, "edges", where);
    if (!es.is_array()) bad(where + ".edges", "expected an array of pairs");
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : es) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        bad(where + ".edges", "each edge must be a pair of vertex numbers");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Polymatroid::graphic(nv, std::move(edges));
  }
  if (type == "complete_graph")
    return Polymatroid::complete_graph(need_int(j, "vertices", where));
  if (type == "rank_table") {
    auto labels = str_list(need(j, "labels", where), where + ".labels");
    const Json& t = need(j, "table", where);
    if (!t.is_array()) bad(where + ".table", "expected an array of ranks");
    std::vector<int> table;
    for (const Json& v : t) {
      if (!v.is_number_integer()) bad(where + ".table", "expected integers");
      table.push_back(v.get<int>());
    }
    return Polymatroid::from_rank_table(std::move(labels), std::move(table));
  }
  if (type == "flats") {
    auto labels = str_list(need(j, "labels", where), where + ".labels");
    GroundSet g(labels);
    const Json& fl = need(j, "flats", where);
    if (!fl.is_array()) bad(where + ".flats", "expected an array");
    std::vector<std::pair<Mask, int>> flats;
    for (const Json& f : fl) {
      if (!f.is_array() || f.size() != 2 || !f[1].is_number_integer())
        bad(where + ".flats", "each entry must be [[labels...], rank]");
      flats.emplace_back(g.mask_of(str_list(f[0], where + ".flats")),
                         f[1].get<int>());
    }
    return Polymatroid::from_flat_list(std::move(labels), std::move(flats));
  }
  if (type == "construction")
    return construction_from_json(need(j, "steps", where));
  bad(where, "unknown type '" + type + "'");
}

ParsedInput input_from_json(const Json& j) {
  Polymatroid M = polymatroid_from_json(need(j, "polymatroid", "input"));
  ParsedInput in{std::move(M), "min", {}};
  if (!j.contains("building_set")) return in;
  const Json& b = j.at("building_set");
  if (b.is_string()) {
    std::string kind = b.get<std::string>();
    if (kind != "min" && kind != "max")
      bad("building_set", "expected \"min\", \"max\" or an array of flats");
    in.building_kind = kind;
    return in;
  }
  if (!b.is_array() || b.empty())
    bad("building_set", "expected \"min\", \"max\" or a nonempty array");
  in.building_kind = "custom";
  for (const Json& f : b)
    in.custom_members.push_back(
        in.M.ground().mask_of(str_list(f, "building_set")));
  return in;
}

ParsedInput input_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return input_from_json(j);
}

ParsedInput input_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Err::ParseError, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return input_from_text(ss.str());
}

BuildingSet resolve_building_set(const FlatLattice& L, const ParsedInput& in) {
  if (in.building_kind == "min") return minimal_building_set(L);
  if (in.building_kind == "max") return maximal_building_set(L);
  std::vector<int> ids;
  for (Mask m : in.custom_members) {
    if (!L.has_flat(m))
      fail(Err::UnknownFlat,
           "building_set entry " + L.polymatroid().ground().set_str(m) +
               " is not a flat");
    ids.push_back(L.id_of(m));
  }
  BuildingSet B = building_set(L, std::move(ids));
  validate_building_set(B);
  return B;
}

// ------------------------------------------------------------- serialization

Json poly_to_json(const IntPoly& p) {
  Json a = Json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(to_string(p.coeff(i)));
  return a;
}

IntPoly poly_from_json(const Json& a) {
  if (!a.is_array()) bad("polynomial", "expected an array of decimal strings");
  std::vector<Int> cs;
  for (const Json& v : a) {
    if (v.is_string()) {
      try {
        cs.emplace_back(v.get<std::string>());
      } catch (const std::exception&) {
        bad("polynomial", "bad coefficient '" + v.get<std::string>() + "'");
      }
    } else if (v.is_number_integer()) {
      cs.emplace_back(v.get<long long>());
    } else {
      bad("polynomial", "coefficients must be strings or integers");
    }
  }
  return IntPoly(std::move(cs));
}

Json properties_to_json(const PropertyReport& r) {
  Json j;
  j["palindromic"] = r.palindromic;
  j["unimodal"] = r.unimodal;
  j["log_concave"] = r.log_concave;
  if (r.first_violation_index)
    j["first_violation_index"] = *r.first_violation_index;
  if (r.gamma) {
    Json g = Json::array();
    for (const Int& v : *r.gamma) g.push_back(to_string(v));
    j["gamma"] = g;
    j["gamma_positive"] = *r.gamma_positive;
  }
  j["real_rooted"] = r.real_rooted;
  return j;
}

Json stats_to_json(const EngineStats& st, bool with_timing) {
  Json j;
  j["visited"] = st.visited;
  j["terms"] = st.terms;
  j["memo_entries"] = st.memo_entries;
  if (with_timing) j["seconds"] = st.seconds;
  return j;
}

Json building_set_to_json(const BuildingSet& B, const std::string& kind) {
  const GroundSet& g = B.L->polymatroid().ground();
  std::vector<int> ms = B.members;
  std::sort(ms.begin(), ms.end());
  Json members = Json::array();
  for (int id : ms) members.push_back(mask_labels(g, B.L->flat(id)));
  Json j;
  j["kind"] = kind;
  j["count"] = ms.size();
  j["members"] = members;
  return j;
}

Polymatroid parse_quick(const std::string& text) {
  static const std::regex re(
      R"(^\s*([UKBukb])\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    fail(Err::ParseError,
         "--quick expects \"U(k,n)\", \"K(n)\" or \"B(n)\"; got: " + text);
  char kind = static_cast<char>(std::toupper(m[1].str()[0]));
  int a = std::stoi(m[2].str());
  bool two = m[3].matched;
  if (kind == 'U') {
    if (!two) fail(Err::ParseError, "U takes two arguments, e.g. U(2,3)");
    return Polymatroid::uniform(a, std::stoi(m[3].str()));
  }
  if (two)
    fail(Err::ParseError, std::string(1, kind) + " takes one argument");
  return kind == 'K' ? Polymatroid::complete_graph(a) : Polymatroid::boolean(a);
}

// ------------------------------------------------------------------ examples

namespace {

IntPoly ipoly(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

void expect_golden(const std::string& what, const IntPoly& got,
                   const IntPoly& want) {
  if (!(got == want))
    fail(Err::GoldenMismatch,
         what + ": got " + got.str() + ", want " + want.str());
}

void expect_golden_count(const std::string& what, std::uint64_t got,
                         std::uint64_t want) {
  if (got != want)
    fail(Err::GoldenMismatch, what + ": got " + std::to_string(got) +
                                  ", want " + std::to_string(want));
}

Polymatroid fig1_polymatroid() {
  std::vector<std::string> labels = {"a", "b", "c"};
  std::vector<std::pair<Mask, int>> flats = {
      {0b000, 0}, {0b001, 2}, {0b010, 2}, {0b100, 4}, {0b011, 4}, {0b111, 5}};
  return Polymatroid::from_flat_list(labels, flats);
}

// The running three-element example: all engines, both canonical building
// sets, and the contraction that appears as an intermediate value.
Json example_fig1(const EngineOptions& opts) {
  FlatLattice L(fig1_polymatroid());
  ChowContext C(minimal_building_set(L));
  Json engines;
  for (const EngineResult& r : C.run_all(opts)) {
    expect_golden("fig1 minimal/" + r.engine, r.hilbert,
                  ipoly({1, 4, 5, 4, 1}));
    engines[r.engine] = poly_to_json(r.hilbert);
  }
  ChowContext Cmax(maximal_building_set(L));
  IntPoly hmax = Cmax.run(Engine::auto_select, opts).hilbert;
  expect_golden("fig1 maximal", hmax, ipoly({1, 5, 7, 5, 1}));
  ChowContext Ca(contract_by(C.view(), L.id_of(0b001)));
  IntPoly ha = Ca.run(Engine::auto_select, opts).hilbert;
  expect_golden("fig1 contraction by a", ha, ipoly({1, 2, 1}));
  Json j;
  j["name"] = "fig1";
  j["description"] =
      "three-element polymatroid with ranks 2,2,4; minimal building set";
  j["engines"] = engines;
  j["hilbert"] = poly_to_json(ipoly({1, 4, 5, 4, 1}));
  j["hilbert_maximal"] = poly_to_json(hmax);
  j["hilbert_contraction_a"] = poly_to_json(ha);
  j["status"] = "PASS";
  return j;
}

// K4 with the minimal building set, cross-checked against the moduli-space
// polynomial for five marked points.
Json example_k4(const EngineOptions& opts) {
  FlatLattice L(Polymatroid::complete_graph(4));
  ChowContext C(minimal_building_set(L));
  Json engines;
  for (const EngineResult& r : C.run_all(opts)) {
    expect_golden("k4/" + r.engine, r.hilbert, ipoly({1, 5, 1}));
    engines[r.engine] = poly_to_json(r.hilbert);
    if (r.engine == "chains")
      expect_golden_count("k4 complete chains", r.stats.terms, 32);
  }
  IntPoly p = poincare_m0(4, PoincareMethod::keel);
  expect_golden("k4 vs poincare_m0(4)", p, ipoly({1, 5, 1}));
  Json j;
  j["name"] = "k4";
  j["description"] =
      "complete graph on four vertices, minimal building set; equals the "
      "Poincare polynomial of the moduli space with five marked points";
  j["engines"] = engines;
  j["hilbert"] = poly_to_json(ipoly({1, 5, 1}));
  j["poincare_m0_4"] = poly_to_json(p);
  j["complete_chains"] = 32;
  j["status"] = "PASS";
  return j;
}

// Rank-9 uniform polymatroid on 18 elements: flag-style base, then 45
// corank-one additions via the conversion walk; log-concavity fails.
Json example_uniform918(const EngineOptions& opts) {
  Polymatroid U = Polymatroid::uniform(9, 18);
  FlatLattice L(U);
  std::vector<int> base;
  for (int i = 0; i < 18; ++i) base.push_back(L.id_of(bit(i)));
  for (int k = 2; k <= 8; ++k) base.push_back(L.id_of((Mask(1) << k) - 1));
  base.push_back(L.top());
  std::vector<int> large = base;
  // all 8-subsets of the last ten elements, by Gosper's hack
  for (Mask sub = (Mask(1) << 8) - 1; sub < (Mask(1) << 10);) {
    large.push_back(L.id_of(sub << 8));
    Mask c = sub & -sub, r = sub + c;
    sub = r | (((sub ^ r) >> 2) / c);
  }
  BuildingSet Bsmall = building_set(L, std::move(base));
  BuildingSet Blarge = building_set(L, std::move(large));
  validate_building_set(Bsmall);
  validate_building_set(Blarge);

  std::vector<ConvertStep> steps;
  IntPoly h = hilbert_convert(Bsmall, Blarge, &steps, opts);
  expect_golden_count("uniform918 conversion steps", steps.size(), 45);
  IntPoly base_h = h;
  for (const ConvertStep& s : steps) {
    if (s.ell != 8)
      fail(Err::GoldenMismatch,
           "uniform918 step factor count: got " + std::to_string(s.ell) +
               ", want 8");
    expect_golden("uniform918 step correction", s.correction,
                  IntPoly::geometric(1, 7));
    base_h -= s.correction;
  }
  expect_golden("uniform918 flag base", base_h,
                ipoly({1, 8, 28, 56, 70, 56, 28, 8, 1}));
  expect_golden("uniform918 converted series", h,
                ipoly({1, 53, 73, 101, 115, 101, 73, 53, 1}));
  PropertyReport pr = check_properties(h);
  if (pr.log_concave || !pr.first_violation_index ||
      *pr.first_violation_index != 2)
    fail(Err::GoldenMismatch,
         "uniform918: expected a log-concavity violation at index 2");
  Int cert = h.coeff(2) * h.coeff(2) - h.coeff(1) * h.coeff(3);
  if (cert != Int(-24))
    fail(Err::GoldenMismatch,
         "uniform918 certificate: got " + to_string(cert) + ", want -24");
  Json j;
  j["name"] = "uniform918";
  j["description"] =
      "rank-9 uniform polymatroid on 18 elements; flag base plus 45 "
      "corank-one members; Hilbert series is palindromic but not log-concave";
  j["base"] = poly_to_json(base_h);
  j["hilbert"] = poly_to_json(h);
  j["additions"] = steps.size();
  j["log_concavity_certificate"] = to_string(cert);
  j["properties"] = properties_to_json(pr);
  j["status"] = "PASS";
  return j;
}

// Boolean polymatroid on ten elements with a partial flag base; the four
// available corank-one additions each add exactly one to every internal
// coefficient, and the scaled-family certificate is evaluated symbolically.
Json example_boolean10(const EngineOptions& opts) {
  Polymatroid M = Polymatroid::boolean(10);
  FlatLattice L(M);
  std::vector<int> base;
  for (int i = 0; i < 10; ++i) base.push_back(L.id_of(bit(i)));
  for (int k = 4; k <= 9; ++k) base.push_back(L.id_of((Mask(1) << k) - 1));
  base.push_back(L.top());
  std::vector<int> large = base;
  for (int i = 0; i < 4; ++i) large.push_back(L.id_of(M.full() & ~bit(i)));
  BuildingSet Bsmall = building_set(L, std::move(base));
  BuildingSet Blarge = building_set(L, std::move(large));
  validate_building_set(Bsmall);
  validate_building_set(Blarge);

  std::vector<ConvertStep> steps;
  IntPoly h = hilbert_convert(Bsmall, Blarge, &steps, opts);
  expect_golden_count("boolean10 conversion steps", steps.size(), 4);
  IntPoly base_h = h;
  for (const ConvertStep& s : steps) {
    if (s.ell != 9)
      fail(Err::GoldenMismatch,
           "boolean10 step factor count: got " + std::to_string(s.ell) +
               ", want 9");
    expect_golden("boolean10 step correction (one per internal degree)",
                  s.correction, IntPoly::geometric(1, 8));
    base_h -= s.correction;
  }
  for (int d = 0; d <= 3; ++d) {
    static const long lead[] = {1, 7, 22, 42};
    if (base_h.coeff(d) != Int(lead[d]))
      fail(Err::GoldenMismatch, "boolean10 base coefficient " +
                                    std::to_string(d) + ": got " +
                                    to_string(base_h.coeff(d)));
  }
  IntPoly direct = ChowContext(Blarge).hilbert_fy(opts);
  expect_golden("boolean10 conversion vs direct enumeration", h, direct);
  // Scaled family: one more unit per internal coefficient for each of 39
  // hypothetical additions; exact arithmetic, no large lattice materialized.
  Int c1 = base_h.coeff(1) + 39, c2 = base_h.coeff(2) + 39,
      c3 = base_h.coeff(3) + 39;
  Int cert = c2 * c2 - c1 * c3;
  if (cert != Int(-5))
    fail(Err::GoldenMismatch,
         "boolean10 scaled certificate: got " + to_string(cert) +
             ", want -5");
  Json j;
  j["name"] = "boolean10_scaled";
  j["description"] =
      "boolean polymatroid on ten elements, partial flag base plus the four "
      "available corank-one members; the 39-addition family is certified "
      "symbolically to break log-concavity";
  j["base"] = poly_to_json(base_h);
  j["hilbert"] = poly_to_json(h);
  j["additions"] = steps.size();
  j["scaled_certificate"] = to_string(cert);
  j["status"] = "PASS";
  return j;
}

// Chain-of-points construction scaled by two freely attached U_{2,3} blocks.
Json example_eg1_chain(const EngineOptions& opts) {
  auto M = Polymatroid::boolean(1);
  M = M.direct_sum(Polymatroid::uniform(1, {"2"})).free_extension("2p");
  M = M.direct_sum(Polymatroid::uniform(1, {"3"})).free_extension("3p");
  {
    FlatLattice L3(M);
    ChowContext C3(minimal_building_set(L3));
    expect_golden("eg1 three-point chain",
                  C3.run(Engine::auto_select, opts).hilbert, ipoly({1, 2, 1}));
  }
  auto scaled =
      M.add_u_block({"x1", "x2", "x3"}).add_u_block({"y1", "y2", "y3"});
  FlatLattice L(scaled);
  expect_golden_count("eg1 scaled lattice size", L.size(), 62);
  ChowContext C(minimal_building_set(L));
  Json engines;
  for (const EngineResult& r : C.run_all(opts)) {
    expect_golden("eg1 scaled/" + r.engine, r.hilbert, ipoly({1, 4, 1}));
    engines[r.engine] = poly_to_json(r.hilbert);
  }
  Json j;
  j["name"] = "eg1_chain_scaled";
  j["description"] =
      "three collinear points extended by two freely attached three-point "
      "rank-two blocks; minimal building set";
  j["chain_hilbert"] = poly_to_json(ipoly({1, 2, 1}));
  j["flats"] = L.size();
  j["engines"] = engines;
  j["hilbert"] = poly_to_json(ipoly({1, 4, 1}));
  j["status"] = "PASS";
  return j;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"fig1", "k4", "uniform918", "boolean10_scaled", "eg1_chain_scaled"};
}

Json run_example(const std::string& name, const EngineOptions& opts) {
  if (name == "fig1") return example_fig1(opts);
  if (name == "k4") return example_k4(opts);
  if (name == "uniform918") return example_uniform918(opts);
  if (name == "boolean10_scaled") return example_boolean10(opts);
  if (name == "eg1_chain_scaled") return example_eg1_chain(opts);
  fail(Err::ParseError, "unknown example '" + name + "'");
}

}  // namespace chowcalc
