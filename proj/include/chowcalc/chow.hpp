// Hilbert series of Chow rings of polymatroids with building sets, computed
// by five mutually independent engines:
//
//   fy         - direct enumeration of the monomial basis indexed by nested
//                sets with bounded exponents
//   spanning   - sum over spanning nested sets of products of reduced
//                characteristic polynomials of lattice intervals
//   recursion  - two one-flat deletion recurrences (restriction-first and
//                contraction-first) driven by the incidence element chibar^G
//   chains     - expansion over all strict chains of flats (guarded)
//   convert    - for matroids: walk from one building set to a larger one,
//                adding one member at a time with an explicit correction term
//
// The fy and spanning enumerations have OpenMP-parallel kernels that
// partition the DFS forest by its first member; plain serial recursions are
// kept alongside as references and the two are asserted equal in the tests.
// All arithmetic is exact, so results do not depend on the thread count.

#pragma once

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "chowcalc/building.hpp"

namespace chowcalc {

enum class Engine {
  auto_select,
  fy,
  recursion_restriction,
  recursion_contraction,
  chains,
  spanning,
};

const char* engine_name(Engine e);

struct EngineOptions {
  int threads = 0;  // 0 = all available; 1 = force serial kernels
  std::uint64_t chain_cap = 5000;
  std::uint64_t auto_count_cap = 10'000'000;
};

struct EngineStats {
  std::uint64_t visited = 0;       // DFS nodes (fy/spanning) or chain links
  std::uint64_t terms = 0;         // summands accumulated into the result
  std::uint64_t memo_entries = 0;  // recursion memo size
  double seconds = 0.0;            // wall time; never part of golden output
};

struct EngineResult {
  std::string engine;
  IntPoly hilbert;
  EngineStats stats;
};

// Per-(lattice, building set) computation context.  The expensive interval
// characteristic polynomials are cached on the lattice itself and therefore
// shared between contexts; this object additionally caches the building-set
// dependent factor counts and incidence values.  Thread-safe.
class ChowContext {
public:
  explicit ChowContext(BuildingSet view);

  const BuildingSet& view() const { return B_; }
  const FlatLattice& lattice() const { return *B_.L; }

  // factors of the induced building set on [b, t]
  std::vector<int> interval_factors(int b, int t) const;
  int n_factors(int b, int t) const;

  // chibar^G_{bt} = -chi_{[b,t]} / (1-x)^{n_factors}; -1 on the diagonal
  IntPoly g_reduced_char(int b, int t) const;
  // alpha^G_{bt} = (-1)^{#factors-1} prod_i (x + ... + x^{rk Gi - rk b - 1});
  // -1 on the diagonal
  IntPoly alpha(int b, int t) const;

  IntPoly hilbert_fy(const EngineOptions& opts = {},
                     EngineStats* st = nullptr) const;
  IntPoly hilbert_fy_serial(EngineStats* st = nullptr) const;
  Int fy_monomial_count() const;
  IntPoly hilbert_spanning(const EngineOptions& opts = {},
                           EngineStats* st = nullptr) const;
  IntPoly hilbert_spanning_serial(EngineStats* st = nullptr) const;
  IntPoly hilbert_recursion_restriction(EngineStats* st = nullptr) const;
  IntPoly hilbert_recursion_contraction(EngineStats* st = nullptr) const;
  IntPoly hilbert_chains(std::uint64_t chain_cap = 5000,
                         EngineStats* st = nullptr) const;

  EngineResult run(Engine e, const EngineOptions& opts = {}) const;
  // Every applicable engine; chains is skipped when it trips its guard.
  std::vector<EngineResult> run_all(const EngineOptions& opts = {}) const;

private:
  IntPoly finalize(IntPoly H) const;  // constant-term-1 / nonnegativity check
  Engine pick_engine(const EngineOptions& opts) const;

  BuildingSet B_;
  std::vector<int> top_factors_;
  mutable std::shared_mutex mx_;
  mutable std::unordered_map<std::uint64_t, IntPoly> g_memo_;
  mutable std::unordered_map<std::uint64_t, int> nf_memo_;
};

// One step of the building-set conversion walk.
struct ConvertStep {
  int flat;  // member added
  int ell;   // number of factors it decomposes into, in the previous set
  IntPoly correction;
};

// Hilbert series over `large` obtained from `small` by adding members one at
// a time (matroids only; both sets must live on the full lattice and small
// must be contained in large).  Each intermediate set is re-validated on the
// flats above the added member; failure raises NoValidOrdering.
IntPoly hilbert_convert(const BuildingSet& small, const BuildingSet& large,
                        std::vector<ConvertStep>* log = nullptr,
                        const EngineOptions& opts = {});

// ---------------------------------------------------------- incidence algebra

// Dense incidence-algebra elements over the full lattice (guarded to <= 300
// flats).  Entry (i, j) is meaningful only when flat i <= flat j.
using IncMat = std::vector<std::vector<RatPoly>>;

IncMat inc_delta(const FlatLattice& L);
IncMat inc_zeta(const FlatLattice& L);
IncMat inc_chibar(const ChowContext& C);
IncMat inc_alpha(const ChowContext& C);
IncMat inc_h(const ChowContext& C);  // Hilbert series of every interval
IncMat inc_mul(const FlatLattice& L, const IncMat& A, const IncMat& B);
// Triangular inversion; requires every diagonal entry to be a nonzero
// constant (NonInvertibleDiagonal otherwise).
IncMat inc_invert(const FlatLattice& L, const IncMat& A);

// zeta * chibar == alpha, chibar * h == h * chibar == -delta, and
// invert(chibar) == -h.  Throws IdentityViolated on the first failure.
void verify_incidence_identities(const ChowContext& C);

}  // namespace chowcalc
