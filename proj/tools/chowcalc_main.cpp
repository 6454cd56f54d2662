// chowcalc — Hilbert series of polymatroid Chow rings, Poincaré polynomials
// of the moduli space of stable rational curves, and coefficient-sequence
// property checks.  All arithmetic is exact; all output is deterministic
// JSON (timing appears only under --stats and never participates in golden
// comparisons).
//
// Exit codes: 0 success, 2 validation/parse error, 3 engine disagreement,
// 4 golden mismatch.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chowcalc/building.hpp"
#include "chowcalc/errors.hpp"
#include "chowcalc/io.hpp"

using namespace chowcalc;

namespace {

Engine engine_from_name(const std::string& name) {
  static const std::map<std::string, Engine> table = {
      {"auto", Engine::auto_select},
      {"fy", Engine::fy},
      {"recursion-restriction", Engine::recursion_restriction},
      {"recursion-contraction", Engine::recursion_contraction},
      {"chains", Engine::chains},
      {"spanning", Engine::spanning},
  };
  auto it = table.find(name);
  if (it == table.end())
    fail(Err::ParseError, "unknown engine '" + name + "'");
  return it->second;
}

// A fully materialized problem: the polymatroid, its lattice of flats and
// the chosen building set (the building set holds a pointer into the
// lattice, so the three live together on the heap).
struct Problem {
  ParsedInput in;
  std::unique_ptr<FlatLattice> L;
  BuildingSet B;
};

Problem load_problem(const std::string& input_path, const std::string& quick,
                     const std::string& building_override) {
  if (input_path.empty() == quick.empty())
    fail(Err::ParseError, "exactly one of --input and --quick is required");
  ParsedInput in = input_path.empty()
                       ? ParsedInput{parse_quick(quick), "min", {}}
                       : input_from_file(input_path);
  if (!building_override.empty()) {
    if (building_override != "min" && building_override != "max")
      fail(Err::ParseError, "--building must be min or max");
    in.building_kind = building_override;
    in.custom_members.clear();
  }
  Problem p{std::move(in), nullptr, {}};
  p.L = std::make_unique<FlatLattice>(p.in.M);
  p.B = resolve_building_set(*p.L, p.in);
  return p;
}

Json polymatroid_summary(const Polymatroid& M) {
  Json j;
  j["n"] = M.n();
  j["rank"] = M.rank_of_ground();
  j["is_matroid"] = M.is_matroid();
  j["is_connected"] = M.is_connected();
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ------------------------------------------------------------------ hilbert

struct HilbertArgs {
  std::string input, quick, building, engine = "auto";
  bool all_engines = false, properties = false, stats = false;
  int threads = 0;
  std::uint64_t chain_cap = 5000;
};

void cmd_hilbert(const HilbertArgs& a) {
  Problem p = load_problem(a.input, a.quick, a.building);
  EngineOptions opts;
  opts.threads = a.threads;
  opts.chain_cap = a.chain_cap;
  ChowContext C(p.B);

  Json out;
  out["command"] = "hilbert";
  out["polymatroid"] = polymatroid_summary(p.in.M);
  out["flats"] = p.L->size();
  out["building_set"] = building_set_to_json(p.B, p.in.building_kind);

  IntPoly h;
  if (a.all_engines) {
    std::vector<EngineResult> rs = C.run_all(opts);
    Json engines;
    for (const EngineResult& r : rs) {
      Json e;
      e["hilbert"] = poly_to_json(r.hilbert);
      e["stats"] = stats_to_json(r.stats, a.stats);
      engines[r.engine] = e;
      if (!(r.hilbert == rs.front().hilbert))
        fail(Err::EngineDisagreement,
             rs.front().engine + " and " + r.engine + " disagree: " +
                 rs.front().hilbert.str() + " vs " + r.hilbert.str());
    }
    out["engines"] = engines;
    h = rs.front().hilbert;
  } else {
    EngineResult r = C.run(engine_from_name(a.engine), opts);
    out["engine"] = r.engine;
    out["stats"] = stats_to_json(r.stats, a.stats);
    h = r.hilbert;
  }
  out["hilbert"] = poly_to_json(h);
  out["hilbert_at_one"] = to_string(h.at_one());
  if (a.properties) out["properties"] = properties_to_json(check_properties(h));
  emit(out);
}

// ------------------------------------------------------------- poincare-m0n

struct PoincareArgs {
  int n = 0;
  std::string method = "all";
  bool properties = false;
  int threads = 0;
};

void cmd_poincare(const PoincareArgs& a) {
  Json out;
  out["command"] = "poincare-m0n";
  out["n"] = a.n;
  IntPoly p;
  if (a.method == "all") {
    std::vector<IntPoly> ps = poincare_all_methods(a.n);
    Json methods;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      methods[method_name(static_cast<PoincareMethod>(i))] =
          poly_to_json(ps[i]);
      if (!(ps[i] == ps.front()))
        fail(Err::EngineDisagreement,
             std::string("method ") +
                 method_name(static_cast<PoincareMethod>(i)) +
                 " disagrees with " + method_name(PoincareMethod::keel));
    }
    out["methods"] = methods;
    p = ps.front();
  } else if (a.method == "matroid") {
    if (a.n > 8)
      fail(Err::ParseError,
           "--method matroid enumerates the graph lattice; use n <= 8");
    EngineOptions opts;
    opts.threads = a.threads;
    p = braid_matroid_hilbert(a.n, opts);
    out["method"] = "matroid";
  } else {
    static const std::map<std::string, PoincareMethod> table = {
        {"keel", PoincareMethod::keel},
        {"manin", PoincareMethod::manin},
        {"partition", PoincareMethod::partition},
        {"stirling", PoincareMethod::stirling},
        {"rewriting", PoincareMethod::rewriting},
    };
    auto it = table.find(a.method);
    if (it == table.end())
      fail(Err::ParseError, "unknown method '" + a.method + "'");
    p = poincare_m0(a.n, it->second);
    out["method"] = a.method;
  }
  out["poincare"] = poly_to_json(p);
  out["poincare_at_one"] = to_string(p.at_one());
  if (a.properties) out["properties"] = properties_to_json(check_properties(p));
  emit(out);
}

// -------------------------------------------------------- check / lattice / building

void cmd_check(const std::string& input, const std::string& quick,
               const std::string& building) {
  Problem p = load_problem(input, quick, building);
  Json out;
  out["command"] = "check";
  out["valid"] = true;
  out["polymatroid"] = polymatroid_summary(p.in.M);
  out["flats"] = p.L->size();
  out["building_set"] = building_set_to_json(p.B, p.in.building_kind);
  emit(out);
}

void cmd_lattice(const std::string& input, const std::string& quick) {
  if (input.empty() == quick.empty())
    fail(Err::ParseError, "exactly one of --input and --quick is required");
  ParsedInput in = input.empty() ? ParsedInput{parse_quick(quick), "min", {}}
                                 : input_from_file(input);
  FlatLattice L(in.M);
  Json out;
  out["command"] = "lattice";
  out["polymatroid"] = polymatroid_summary(in.M);
  out["flats"] = L.size();
  std::map<int, int> by_rank;
  for (int i = 0; i < L.size(); ++i) ++by_rank[L.rank(i)];
  Json br;
  for (const auto& [r, c] : by_rank) br[std::to_string(r)] = c;
  out["flats_by_rank"] = br;
  out["connected_flats"] = L.connected_flats().size();
  out["characteristic"] = poly_to_json(L.characteristic(0, L.top()));
  out["reduced_characteristic"] =
      poly_to_json(L.reduced_characteristic(0, L.top()));
  out["mobius_bottom_top"] = to_string(L.mobius(0, L.top()));
  emit(out);
}

void cmd_building(const std::string& input, const std::string& quick,
                  const std::string& building, std::uint64_t count_cap) {
  Problem p = load_problem(input, quick, building);
  Json out;
  out["command"] = "building";
  out["building_set"] = building_set_to_json(p.B, p.in.building_kind);
  Json factors = Json::array();
  const GroundSet& g = p.in.M.ground();
  for (int f : factors_of(p.B, p.L->top())) {
    std::vector<std::string> labels;
    for (int i = 0; i < g.size(); ++i)
      if (p.L->flat(f) & bit(i)) labels.push_back(g.label(i));
    factors.push_back(labels);
  }
  out["top_factors"] = factors;
  if (auto st = nested_stats(p.B, count_cap)) {
    Json ns;
    ns["total"] = st->total;
    ns["spanning"] = st->spanning;
    ns["max_size"] = st->max_size;
    Json by;
    for (const auto& [sz, c] : st->by_size) by[std::to_string(sz)] = c;
    ns["by_size"] = by;
    out["nested_sets"] = ns;
  } else {
    out["nested_sets"] = nullptr;
  }
  emit(out);
}

// ----------------------------------------------------------------- examples

void cmd_examples(std::vector<std::string> names, int threads, bool stats) {
  (void)stats;
  if (names.empty()) names = example_names();
  EngineOptions opts;
  opts.threads = threads;
  Json out = Json::array();
  for (const std::string& name : names) out.push_back(run_example(name, opts));
  emit(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chowcalc: exact Hilbert series of polymatroid Chow rings and "
      "Poincare polynomials of moduli of stable rational curves"};
  app.require_subcommand(1);

  HilbertArgs ha;
  CLI::App* hil = app.add_subcommand(
      "hilbert", "Hilbert series of the Chow ring for a building set");
  hil->add_option("--input", ha.input, "JSON problem description");
  hil->add_option("--quick", ha.quick, "shorthand: U(k,n), K(n) or B(n)");
  hil->add_option("--building", ha.building,
                  "override the building set: min or max");
  hil->add_option("--engine", ha.engine,
                  "auto|fy|recursion-restriction|recursion-contraction|"
                  "chains|spanning");
  hil->add_flag("--all-engines", ha.all_engines,
                "run every engine and require agreement");
  hil->add_flag("--check-properties", ha.properties,
                "report palindromicity, unimodality, log-concavity, gamma "
                "vector and real-rootedness");
  hil->add_flag("--stats", ha.stats, "include wall-time in the stats block");
  hil->add_option("--threads", ha.threads, "0 = all cores, 1 = serial");
  hil->add_option("--chain-cap", ha.chain_cap,
                  "abort the chains engine past this many complete chains");

  PoincareArgs pa;
  CLI::App* poi = app.add_subcommand(
      "poincare-m0n",
      "Poincare polynomial of the moduli space with n+1 marked points");
  poi->add_option("-n,--n", pa.n, "number of non-special marked points")
      ->required()
      ->check(CLI::Range(1, 200));
  poi->add_option("--method", pa.method,
                  "keel|manin|partition|stirling|rewriting|matroid|all");
  poi->add_flag("--check-properties", pa.properties,
                "report coefficient-sequence properties");
  poi->add_option("--threads", pa.threads, "threads for --method matroid");

  std::string ck_input, ck_quick, ck_building;
  CLI::App* chk = app.add_subcommand(
      "check", "validate a problem description and report its shape");
  chk->add_option("--input", ck_input, "JSON problem description");
  chk->add_option("--quick", ck_quick, "shorthand: U(k,n), K(n) or B(n)");
  chk->add_option("--building", ck_building, "override: min or max");

  std::string la_input, la_quick;
  CLI::App* lat =
      app.add_subcommand("lattice", "lattice of flats of the polymatroid");
  lat->add_option("--input", la_input, "JSON problem description");
  lat->add_option("--quick", la_quick, "shorthand: U(k,n), K(n) or B(n)");

  std::string bu_input, bu_quick, bu_building;
  std::uint64_t bu_cap = 10'000'000;
  CLI::App* bld = app.add_subcommand(
      "building", "building-set members, top factors and nested-set counts");
  bld->add_option("--input", bu_input, "JSON problem description");
  bld->add_option("--quick", bu_quick, "shorthand: U(k,n), K(n) or B(n)");
  bld->add_option("--building", bu_building, "override: min or max");
  bld->add_option("--count-cap", bu_cap,
                  "give up counting nested sets past this many");

  std::vector<std::string> ex_names;
  int ex_threads = 0;
  bool ex_stats = false;
  CLI::App* exa = app.add_subcommand(
      "examples", "replay built-in examples against embedded golden values");
  exa->add_option("names", ex_names, "subset of: fig1 k4 uniform918 "
                                     "boolean10_scaled eg1_chain_scaled");
  exa->add_option("--threads", ex_threads, "0 = all cores");
  exa->add_flag("--stats", ex_stats, "include wall-time where reported");

  try {
    app.parse(argc, argv);
    if (*hil) cmd_hilbert(ha);
    if (*poi) cmd_poincare(pa);
    if (*chk) cmd_check(ck_input, ck_quick, ck_building);
    if (*lat) cmd_lattice(la_input, la_quick);
    if (*bld) cmd_building(bu_input, bu_quick, bu_building, bu_cap);
    if (*exa) cmd_examples(ex_names, ex_threads, ex_stats);
    return 0;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    Json err;
    err["error"]["code"] = err_name(e.code());
    err["error"]["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    switch (e.code()) {
      case Err::EngineDisagreement:
        return 3;
      case Err::GoldenMismatch:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
