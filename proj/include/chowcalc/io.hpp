// JSON input parsing, deterministic serialization and the example registry
// backing the chowcalc CLI.  Polynomials are serialized as arrays of decimal
// strings in ascending degree order so arbitrary-precision coefficients
// survive the round trip; all emitted objects use insertion-ordered keys so
// identical runs produce byte-identical output.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "chowcalc/braid.hpp"
#include "chowcalc/chow.hpp"

namespace chowcalc {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------- serialization

Json poly_to_json(const IntPoly& p);   // ["1","5","1"] for 1 + 5x + x^2
IntPoly poly_from_json(const Json& a);  // inverse; ParseError on junk
Json properties_to_json(const PropertyReport& r);
Json stats_to_json(const EngineStats& st, bool with_timing);

// -------------------------------------------------------------------- inputs

// A parsed problem description: the polymatroid plus the requested building
// set ("min", "max", or "custom" with explicit flat masks).  The masks are
// resolved to lattice ids only once the lattice exists.
struct ParsedInput {
  Polymatroid M;
  std::string building_kind;        // "min" | "max" | "custom"
  std::vector<Mask> custom_members;  // nonempty iff building_kind == "custom"
};

// {"type": "uniform" | "boolean" | "graphic" | "complete_graph" |
//  "rank_table" | "flats" | "construction", ...}
Polymatroid polymatroid_from_json(const Json& j);

// {"polymatroid": {...}, "building_set": "min" | "max" | [["a","b"], ...]}
// building_set defaults to "min" when absent.
ParsedInput input_from_json(const Json& j);
ParsedInput input_from_text(const std::string& text);
ParsedInput input_from_file(const std::string& path);

// Resolves the requested members against L (UnknownFlat when a custom entry
// is not a flat) and validates the result.
BuildingSet resolve_building_set(const FlatLattice& L, const ParsedInput& in);

// {"kind": ..., "count": N, "members": [["a"], ["a","b"], ...]}
Json building_set_to_json(const BuildingSet& B, const std::string& kind);

// Shorthand accepted by --quick: "U(k,n)", "K(n)", "B(n)".
Polymatroid parse_quick(const std::string& text);

// ------------------------------------------------------------------ examples

// Registry of self-checking replays with embedded golden values.  Each entry
// recomputes its numbers and throws GoldenMismatch if anything drifts.
std::vector<std::string> example_names();
Json run_example(const std::string& name, const EngineOptions& opts = {});

}  // namespace chowcalc
