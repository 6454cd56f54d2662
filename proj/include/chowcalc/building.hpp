// Building sets inside (an interval of) the lattice of flats, their factor
// decompositions, induced building sets on minors, and nested subsets.
//
// A BuildingSet is a *view*: it references the ambient lattice and carries an
// interval [bottom, top] plus the sorted member ids, which always lie
// strictly above bottom and at or below top.  Restriction and contraction
// produce new views over the same lattice, so nothing is ever rebuilt.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "chowcalc/lattice.hpp"

namespace chowcalc {

struct BuildingSet {
  const FlatLattice* L = nullptr;
  int bottom = 0;
  int top = 0;
  std::vector<int> members;  // sorted ascending (= by rank, then mask)

  bool is_member(int id) const;
};

// Construct a view on the full lattice with the given members (sorted and
// checked for duplicates/range; factorization validity is checked separately
// by validate_building_set).
BuildingSet building_set(const FlatLattice& L, std::vector<int> members);

// All connected nonempty flats.  Always a valid building set, and contained
// in every other one.
BuildingSet minimal_building_set(const FlatLattice& L);

// All nonempty flats.
BuildingSet maximal_building_set(const FlatLattice& L);

// Throws NotABuildingSet when some flat of the interval fails to factor:
// its maximal members must be rank-additive and the join map from the
// product of their lower intervals must be a bijection onto [bottom, flat].
void validate_building_set(const BuildingSet& B);

// The factorization check for a single flat; shared with the incremental
// re-validation done by the building-set conversion walk.
void check_flat_factorization(const BuildingSet& B, int F);

// Maximal members at or below F (F must be in the view's interval).
std::vector<int> factors_of(const BuildingSet& B, int F);

// Induced members on the subinterval [b, t] of the view: joins with b of the
// members below t that are not below b; deduplicated, sorted.
std::vector<int> induced_members(const BuildingSet& B, int b, int t);

// View for the restriction to flat F (interval [bottom, F]).
BuildingSet restrict_to(const BuildingSet& B, int F);

// View for the contraction by flat F (interval [F, top], members joined up).
BuildingSet contract_by(const BuildingSet& B, int F);

// Incremental nestedness: S is nested, F not in S; true iff S + {F} nested.
// Checks every antichain T of members of S incomparable to F: the join of
// T + {F} must not be a member.
bool nested_with(const BuildingSet& B, const std::vector<int>& S, int F);

// Full nestedness check by enumerating all antichain subsets of size >= 2.
// Exponential; intended for small S (tests, cross-validation).
bool is_nested(const BuildingSet& B, std::vector<int> S);

// A nested set is spanning iff it contains every factor of the top flat.
bool is_spanning(const BuildingSet& B, const std::vector<int>& S);

struct NestedStats {
  std::uint64_t total = 0;  // counts the empty set too
  std::uint64_t spanning = 0;
  std::map<int, std::uint64_t> by_size;
  int max_size = 0;
};

// DFS enumeration in ascending id order; gives up (nullopt) past `cap`
// visited sets.
std::optional<NestedStats> nested_stats(const BuildingSet& B,
                                        std::uint64_t cap);

// Visit every nested set (including the empty one) as a sorted id vector.
// The callback returns false to abort the walk; for_each_nested then returns
// false as well.
bool for_each_nested(const BuildingSet& B,
                     const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace chowcalc
