#include "chowcalc/building.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "chowcalc/errors.hpp"

namespace chowcalc {

bool BuildingSet::is_member(int id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

BuildingSet building_set(const FlatLattice& L, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i + 1 < members.size(); ++i)
    if (members[i] == members[i + 1])
      fail(Err::NotABuildingSet, "duplicate member");
  for (int m : members)
    if (m <= 0 || m > L.top())
      fail(Err::NotABuildingSet, "member id out of range");
  return BuildingSet{&L, L.bottom(), L.top(), std::move(members)};
}

BuildingSet minimal_building_set(const FlatLattice& L) {
  return BuildingSet{&L, L.bottom(), L.top(), L.connected_flats()};
}

BuildingSet maximal_building_set(const FlatLattice& L) {
  std::vector<int> all(L.top());
  for (int i = 1; i <= L.top(); ++i) all[i - 1] = i;
  return BuildingSet{&L, L.bottom(), L.top(), std::move(all)};
}

std::vector<int> factors_of(const BuildingSet& B, int F) {
  const FlatLattice& L = *B.L;
  std::vector<int> below;
  for (int m : B.members)
    if (m <= F && L.leq(m, F)) below.push_back(m);
  std::vector<int> maximal;
  for (std::size_t i = 0; i < below.size(); ++i) {
    bool is_max = true;
    for (std::size_t j = 0; j < below.size(); ++j)
      if (i != j && L.leq(below[i], below[j])) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(below[i]);
  }
  return maximal;
}

void check_flat_factorization(const BuildingSet& B, int F) {
  const FlatLattice& L = *B.L;
  auto fs = factors_of(B, F);
  if (fs.empty())
    fail(Err::NotABuildingSet,
         "no member lies below the flat " + L.polymatroid().ground().set_str(
                                                L.flat(F)));
  if (fs.size() == 1 && fs[0] == F) return;  // identity factorization
  int rank_sum = 0;
  for (int g : fs) rank_sum += L.rank(g) - L.rank(B.bottom);
  if (rank_sum != L.rank(F) - L.rank(B.bottom))
    fail(Err::NotABuildingSet,
         "factors of " + L.polymatroid().ground().set_str(L.flat(F)) +
             " are not rank-additive");
  // cardinality + injectivity of the join map from the product of lower
  // intervals; injective + equal counts == order isomorphism (the join map
  // and Z -> (Z meet G_i) are both monotone)
  std::vector<std::vector<int>> blocks;
  std::size_t tuple_count = 1;
  for (int g : fs) {
    blocks.push_back(L.interval(B.bottom, g));
    tuple_count *= blocks.back().size();
  }
  std::size_t interval_count = L.interval_size(B.bottom, F);
  if (tuple_count != interval_count)
    fail(Err::NotABuildingSet,
         "interval below " + L.polymatroid().ground().set_str(L.flat(F)) +
             " has " + std::to_string(interval_count) +
             " flats but the factor product has " +
             std::to_string(tuple_count));
  std::unordered_set<Mask> seen;
  seen.reserve(tuple_count * 2);
  std::vector<std::size_t> odo(blocks.size(), 0);
  const Polymatroid& M = L.polymatroid();
  while (true) {
    Mask u = L.flat(B.bottom);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      u |= L.flat(blocks[i][odo[i]]);
    Mask j = M.closure(u);
    if (!seen.insert(j).second)
      fail(Err::NotABuildingSet,
           "join map below " + M.ground().set_str(L.flat(F)) +
               " is not injective");
    std::size_t k = 0;
    for (; k < odo.size(); ++k) {
      if (++odo[k] < blocks[k].size()) break;
      odo[k] = 0;
    }
    if (k == odo.size()) break;
  }
}

void validate_building_set(const BuildingSet& B) {
  const FlatLattice& L = *B.L;
  for (int m : B.members) {
    if (m == B.bottom || !L.leq(B.bottom, m) || !L.leq(m, B.top))
      fail(Err::NotABuildingSet, "member outside the view interval");
  }
  for (int F : L.interval(B.bottom, B.top)) {
    if (F == B.bottom) continue;
    check_flat_factorization(B, F);
  }
}

std::vector<int> induced_members(const BuildingSet& B, int b, int t) {
  const FlatLattice& L = *B.L;
  std::vector<int> out;
  for (int m : B.members) {
    if (!L.leq(m, t)) continue;
    if (L.leq(m, b)) continue;
    out.push_back(L.join(m, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BuildingSet restrict_to(const BuildingSet& B, int F) {
  std::vector<int> kept;
  for (int m : B.members)
    if (B.L->leq(m, F)) kept.push_back(m);
  return BuildingSet{B.L, B.bottom, F, std::move(kept)};
}

BuildingSet contract_by(const BuildingSet& B, int F) {
  return BuildingSet{B.L, F, B.top, induced_members(B, F, B.top)};
}

namespace {

// enumerate antichains T (given as indices into `inc`) containing at least
// one element; running join starts at `j0`; returns false on a violation
bool antichain_joins_avoid_members(const BuildingSet& B,
                                   const std::vector<int>& inc, int j0) {
  const FlatLattice& L = *B.L;
  std::vector<int> chosen;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t start,
                                                  int j) -> bool {
    for (std::size_t i = start; i < inc.size(); ++i) {
      int c = inc[i];
      bool anti = true;
      for (int e : chosen)
        if (L.leq(e, c) || L.leq(c, e)) {
          anti = false;
          break;
        }
      if (!anti) continue;
      int j2 = L.join(j, c);
      if (B.is_member(j2)) return false;
      chosen.push_back(c);
      bool ok = rec(i + 1, j2);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0, j0);
}

}  // namespace

bool nested_with(const BuildingSet& B, const std::vector<int>& S, int F) {
  const FlatLattice& L = *B.L;
  std::vector<int> inc;
  for (int m : S) {
    if (m == F) return false;
    if (!L.leq(m, F) && !L.leq(F, m)) inc.push_back(m);
  }
  return antichain_joins_avoid_members(B, inc, F);
}

bool is_nested(const BuildingSet& B, std::vector<int> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  const FlatLattice& L = *B.L;
  // enumerate all antichains of size >= 2 directly
  std::vector<int> chosen;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t start,
                                                  int j) -> bool {
    for (std::size_t i = start; i < S.size(); ++i) {
      int c = S[i];
      bool anti = true;
      for (int e : chosen)
        if (L.leq(e, c) || L.leq(c, e)) {
          anti = false;
          break;
        }
      if (!anti) continue;
      int j2 = chosen.empty() ? c : L.join(j, c);
      if (chosen.size() >= 1 && B.is_member(j2)) return false;
      chosen.push_back(c);
      bool ok = rec(i + 1, j2);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0, B.bottom);
}

bool is_spanning(const BuildingSet& B, const std::vector<int>& S) {
  for (int f : factors_of(B, B.top))
    if (std::find(S.begin(), S.end(), f) == S.end()) return false;
  return true;
}

bool for_each_nested(const BuildingSet& B,
                     const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> S;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!fn(S)) return false;
    for (std::size_t i = start; i < B.members.size(); ++i) {
      int F = B.members[i];
      if (!nested_with(B, S, F)) continue;
      S.push_back(F);
      bool cont = rec(i + 1);
      S.pop_back();
      if (!cont) return false;
    }
    return true;
  };
  return rec(0);
}

std::optional<NestedStats> nested_stats(const BuildingSet& B,
                                        std::uint64_t cap) {
  NestedStats st;
  auto top_factors = factors_of(B, B.top);
  bool done = for_each_nested(B, [&](const std::vector<int>& S) {
    if (st.total >= cap) return false;
    ++st.total;
    ++st.by_size[static_cast<int>(S.size())];
    st.max_size = std::max(st.max_size, static_cast<int>(S.size()));
    bool span = true;
    for (int f : top_factors)
      if (std::find(S.begin(), S.end(), f) == S.end()) {
        span = false;
        break;
      }
    if (span) ++st.spanning;
    return true;
  });
  if (!done) return std::nullopt;
  return st;
}

}  // namespace chowcalc
