// Unit tests for building sets, factors, induced views and nested sets.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "chowcalc/building.hpp"
#include "chowcalc/errors.hpp"

using namespace chowcalc;

namespace {

Polymatroid fig1_m() {
  std::vector<std::string> labels = {"a", "b", "c"};
  std::vector<std::pair<Mask, int>> flats = {
      {0b000, 0}, {0b001, 2}, {0b010, 2}, {0b100, 4}, {0b011, 4}, {0b111, 5}};
  return Polymatroid::from_flat_list(labels, flats);
}

}  // namespace

TEST_CASE("fig1 building sets") {
  FlatLattice L(fig1_m());
  // ids: 0={}, 1=a, 2=b, 3=ab, 4=c, 5=abc
  auto Gmin = minimal_building_set(L);
  CHECK(Gmin.members == std::vector<int>{1, 2, 4, 5});
  CHECK_NOTHROW(validate_building_set(Gmin));
  auto Gmax = maximal_building_set(L);
  CHECK(Gmax.members == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_NOTHROW(validate_building_set(Gmax));
  // the only two building sets on fig1: dropping anything from Gmin fails
  for (int drop : {1, 2, 4, 5}) {
    std::vector<int> mem;
    for (int m : Gmin.members)
      if (m != drop) mem.push_back(m);
    CHECK_THROWS_AS(validate_building_set(building_set(L, mem)), Error);
  }
  CHECK(factors_of(Gmin, 5) == std::vector<int>{5});
  CHECK(factors_of(Gmin, 3) == std::vector<int>{1, 2});  // ab factors as a,b
  CHECK(factors_of(Gmax, 3) == std::vector<int>{3});
  CHECK(factors_of(Gmin, 1) == std::vector<int>{1});
}

TEST_CASE("fig1 nested sets") {
  FlatLattice L(fig1_m());
  auto G = minimal_building_set(L);
  // {a,b} nested (join ab not a member), {a,c} not (join abc is a member)
  CHECK(is_nested(G, {1, 2}));
  CHECK_FALSE(is_nested(G, {1, 4}));
  CHECK_FALSE(is_nested(G, {2, 4}));
  CHECK(is_nested(G, {1, 5}));
  CHECK(is_nested(G, {1, 2, 5}));
  CHECK_FALSE(is_nested(G, {1, 2, 4}));
  // incremental agrees with the full check over all subsets of members
  for (Mask sub = 0; sub < 16; ++sub) {
    std::vector<int> S;
    for (int i = 0; i < 4; ++i)
      if (sub & (Mask(1) << i)) S.push_back(G.members[i]);
    bool full = is_nested(G, S);
    // build incrementally in id order
    bool inc = true;
    std::vector<int> acc;
    for (int m : S) {
      if (!nested_with(G, acc, m)) {
        inc = false;
        break;
      }
      acc.push_back(m);
    }
    CHECK(full == inc);
  }
  auto st = nested_stats(G, 1000);
  REQUIRE(st.has_value());
  CHECK(st->total == 10);     // {}, 4 singletons, {a,b},{a,E},{b,E},{c,E},{a,b,E}
  CHECK(st->spanning == 5);
  CHECK(st->by_size.at(0) == 1);
  CHECK(st->by_size.at(1) == 4);
  CHECK(st->by_size.at(2) == 4);
  CHECK(st->by_size.at(3) == 1);
  CHECK(st->max_size == 3);
  CHECK(is_spanning(G, {5}));
  CHECK_FALSE(is_spanning(G, {1, 2}));
}

TEST_CASE("nested stats cap") {
  FlatLattice L(Polymatroid::boolean(4));
  auto G = maximal_building_set(L);
  CHECK_FALSE(nested_stats(G, 3).has_value());
}

TEST_CASE("k4 building sets") {
  FlatLattice L(Polymatroid::complete_graph(4));
  auto Gmin = minimal_building_set(L);
  CHECK(Gmin.members.size() == 11);
  CHECK_NOTHROW(validate_building_set(Gmin));
  CHECK_NOTHROW(validate_building_set(maximal_building_set(L)));
  // Gmin + one matching flat is still a building set
  Mask m12_34 = L.polymatroid().ground().mask_of({"1-2", "3-4"});
  auto plus = Gmin.members;
  plus.push_back(L.id_of(m12_34));
  CHECK_NOTHROW(validate_building_set(building_set(L, plus)));
  // removing the top from Gmin fails (factors of top not rank-additive)
  std::vector<int> mem(Gmin.members.begin(), Gmin.members.end() - 1);
  CHECK_THROWS_AS(validate_building_set(building_set(L, mem)), Error);
}

TEST_CASE("boolean building sets and e-free views") {
  FlatLattice L(Polymatroid::boolean(4));
  auto Gmin = minimal_building_set(L);
  // atoms only: the top factors into the four atoms
  CHECK(Gmin.members.size() == 4);
  CHECK_NOTHROW(validate_building_set(Gmin));
  CHECK(factors_of(Gmin, L.top()).size() == 4);
  // atoms + {12} + {34}: still fine without the top
  const auto& g = L.polymatroid().ground();
  std::vector<int> mem = Gmin.members;
  mem.push_back(L.id_of(g.mask_of({"1", "2"})));
  mem.push_back(L.id_of(g.mask_of({"3", "4"})));
  auto B = building_set(L, mem);
  CHECK_NOTHROW(validate_building_set(B));
  CHECK(factors_of(B, L.top()).size() == 2);
  // atoms + {12} alone fails: {12,3,4} are the top factors, fine... but the
  // flat {3,4}... every flat still factors into atoms; this IS a building set
  std::vector<int> mem2 = Gmin.members;
  mem2.push_back(L.id_of(g.mask_of({"1", "2"})));
  CHECK_NOTHROW(validate_building_set(building_set(L, mem2)));
}

TEST_CASE("induced views") {
  FlatLattice L(fig1_m());
  auto G = minimal_building_set(L);
  // restrict to ab (id 3): members a, b
  auto R = restrict_to(G, 3);
  CHECK(R.bottom == 0);
  CHECK(R.top == 3);
  CHECK(R.members == std::vector<int>{1, 2});
  // contract by a (id 1): members are joins b v a = ab, c v a = abc, abc
  auto C = contract_by(G, 1);
  CHECK(C.bottom == 1);
  CHECK(C.top == 5);
  CHECK(C.members == std::vector<int>{3, 5});
  CHECK_NOTHROW(validate_building_set(C));
  CHECK(factors_of(C, 5) == std::vector<int>{5});
  // order of restrict/contract commutes where both make sense
  auto RC = contract_by(restrict_to(G, 5), 1);
  CHECK(RC.members == C.members);
}

TEST_CASE("m3 custom building set") {
  auto M = Polymatroid::boolean(1)
               .direct_sum(Polymatroid::uniform(1, {"2"}))
               .free_extension("2p")
               .direct_sum(Polymatroid::uniform(1, {"3"}))
               .free_extension("3p");
  FlatLattice L(M);
  const auto& g = M.ground();
  auto Gmin = minimal_building_set(L);
  CHECK(Gmin.members.size() == 7);
  CHECK_NOTHROW(validate_building_set(Gmin));
  // adding the disconnected flat {1,3} keeps it a building set
  auto plus = Gmin.members;
  plus.push_back(L.id_of(g.mask_of({"1", "3"})));
  std::sort(plus.begin(), plus.end());
  CHECK_NOTHROW(validate_building_set(building_set(L, plus)));
}

TEST_CASE("uniform 918 building set validates") {
  FlatLattice L(Polymatroid::uniform(9, 18));
  CHECK(L.size() == 106763);
  std::vector<int> mem;
  for (int i = 0; i < 18; ++i) mem.push_back(L.id_of(bit(i)));  // atoms
  for (int k = 2; k <= 8; ++k) mem.push_back(L.id_of((Mask(1) << k) - 1));
  // the 45 8-subsets of the 10 "barred" elements 9..18
  for (Mask sub = (Mask(1) << 8) - 1;;) {
    // iterate 8-subsets of a 10-set via Gosper's hack
    Mask c = sub & (~sub + 1), r = sub + c;
    Mask next = (((r ^ sub) >> 2) / c) | r;
    mem.push_back(L.id_of(sub << 8));
    if (next >= (Mask(1) << 10)) break;
    sub = next;
  }
  mem.push_back(L.top());
  auto B = building_set(L, std::move(mem));
  CHECK(B.members.size() == 18 + 7 + 45 + 1);
  validate_building_set(B);
  CHECK(factors_of(B, L.top()) == std::vector<int>{L.top()});
}
