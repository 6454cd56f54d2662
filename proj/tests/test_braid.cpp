// Cross-validation of the five Poincare-polynomial methods, the functional
// equations, the partition bijection, and the matroid cross-check.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chowcalc/braid.hpp"
#include "chowcalc/errors.hpp"

using namespace chowcalc;

namespace {

IntPoly P(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

// Flat of the complete-graph matroid spanned by a vertex block.
int block_flat(const FlatLattice& L, int nverts,
               std::initializer_list<int> verts) {
  std::vector<char> in(static_cast<std::size_t>(nverts) + 1, 0);
  for (int v : verts) in[v] = 1;
  Mask m = 0;
  int e = 0;
  for (int i = 1; i < nverts; ++i)
    for (int j = i + 1; j <= nverts; ++j, ++e)
      if (in[i] && in[j]) m |= Mask(1) << e;
  return L.id_of(m);
}

}  // namespace

TEST_CASE("chi_bar_m") {
  CHECK(chi_bar_m(1) == P({1}));
  CHECK(chi_bar_m(2) == P({1}));
  CHECK(chi_bar_m(3) == P({-2, 1}));
  CHECK(chi_bar_m(4) == P({6, -5, 1}));
  CHECK(chi_bar_m(5) == P({-24, 26, -9, 1}));
}

TEST_CASE("five methods agree and match known values") {
  CHECK(poincare_m0(1, PoincareMethod::keel) == P({1}));
  CHECK(poincare_m0(2, PoincareMethod::stirling) == P({1}));
  CHECK(poincare_m0(3, PoincareMethod::partition) == P({1, 1}));
  CHECK(poincare_m0(4, PoincareMethod::manin) == P({1, 5, 1}));
  CHECK(poincare_m0(5, PoincareMethod::rewriting) == P({1, 16, 16, 1}));
  CHECK(poincare_m0(6, PoincareMethod::keel) == P({1, 42, 127, 42, 1}));

  for (int n = 1; n <= 9; ++n) {
    auto all = poincare_all_methods(n);
    REQUIRE(all.size() == 5);
    for (const auto& p : all) {
      INFO("n = ", n);
      CHECK(p == all.front());
    }
    if (n >= 2) {
      auto rep = check_properties(all.front());
      CHECK(rep.palindromic);
      CHECK(rep.unimodal);
    }
  }
}

TEST_CASE("stirling table") {
  StirlingTable T(8);
  CHECK(T.s1(0, 0) == 1);
  CHECK(T.s1(4, 1) == -6);
  CHECK(T.s1(4, 2) == 11);
  CHECK(T.s1(5, 3) == 35);
  CHECK(T.s1(6, 6) == 1);
  CHECK(T.s2(4, 2) == 7);
  CHECK(T.s2(5, 3) == 25);
  CHECK(T.s2(6, 3) == 90);
  CHECK(T.s2(7, 7) == 1);
  // orthogonality at n = 6: sum_k s1(6,k) s2(k,3) picks out delta
  Int acc = 0;
  for (int k = 3; k <= 6; ++k) acc += T.s1(6, k) * T.s2(k, 3);
  CHECK(acc == 0);
}

TEST_CASE("partition multiplicities and the counting identity") {
  CHECK(partition_multiplicity(4, {3}) == Rat(1));
  CHECK(partition_multiplicity(4, {2, 1}) == Rat(10));
  CHECK(partition_multiplicity(4, {1, 1, 1}) == Rat(15));
  CHECK(partition_multiplicity(5, {2, 1, 1}) == Rat(105));

  // m_sigma * N! * prod(sigma_i + 1) == (N + len)! * p_sigma, where p_sigma
  // counts set partitions of [N] with the given block sizes
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      const int N = [&] {
        int s = 0;
        for (int p : cur) s += p;
        return s;
      }();
      const unsigned len = static_cast<unsigned>(cur.size());
      Rat m = partition_multiplicity(N + 1, cur);
      Rat lhs = m * Rat(factorial(static_cast<unsigned>(N)));
      for (int p : cur) lhs *= Rat(p + 1);
      Int den = 1;
      int run = 1;
      for (std::size_t i = 1; i <= cur.size(); ++i) {
        if (i < cur.size() && cur[i] == cur[i - 1]) {
          ++run;
        } else {
          den *= factorial(static_cast<unsigned>(run));
          run = 1;
        }
      }
      for (int p : cur) den *= factorial(static_cast<unsigned>(p));
      Rat p_sigma = Rat(factorial(static_cast<unsigned>(N))) / Rat(den);
      Rat rhs = Rat(factorial(static_cast<unsigned>(N) + len)) * p_sigma;
      CHECK(lhs == rhs);
      return;
    }
    for (int p = std::min(rem, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  for (int N = 1; N <= 8; ++N) rec(N, N);
}

TEST_CASE("functional equations") { verify_functional_equations(8); }

TEST_CASE("no-singleton partition counts") {
  CHECK(no_singleton_partition_count(2, 1) == 1);
  CHECK(no_singleton_partition_count(3, 1) == 1);
  CHECK(no_singleton_partition_count(3, 2) == 0);
  CHECK(no_singleton_partition_count(4, 2) == 3);
  CHECK(no_singleton_partition_count(5, 2) == 10);
  CHECK(no_singleton_partition_count(6, 3) == 15);
  CHECK(no_singleton_partition_count(7, 2) == 56);
  CHECK(no_singleton_partition_count(10, 5) == 945);
}

TEST_CASE("four explicit bijection images on six vertices") {
  FlatLattice L(Polymatroid::complete_graph(6));
  const int f12 = block_flat(L, 6, {1, 2});
  const int f34 = block_flat(L, 6, {3, 4});
  const int f56 = block_flat(L, 6, {5, 6});
  const int f1234 = block_flat(L, 6, {1, 2, 3, 4});
  const int f1256 = block_flat(L, 6, {1, 2, 5, 6});
  const int f3456 = block_flat(L, 6, {3, 4, 5, 6});
  const int E = L.top();
  using Part = std::vector<std::vector<int>>;

  auto img = [&](std::vector<int> S) {
    std::sort(S.begin(), S.end());
    return nested_to_partition(L, 6, S);
  };
  CHECK(img({f12, f56, f1234, E}) ==
        Part{{1, 2}, {3, 4, 7}, {5, 6}, {8, 9}});
  CHECK(img({f12, f56, f1256, E}) ==
        Part{{1, 2}, {3, 4, 9}, {5, 6}, {7, 8}});
  CHECK(img({f12, f56, f3456, E}) ==
        Part{{1, 2}, {3, 4, 8}, {5, 6}, {7, 9}});
  CHECK(img({f12, f34, f56, E}) ==
        Part{{1, 2}, {3, 4}, {5, 6}, {7, 8, 9}});
}

TEST_CASE("partition bijection on up to six vertices") {
  for (int n = 2; n <= 6; ++n) {
    INFO("n = ", n);
    verify_partition_bijection(n);
  }
}

TEST_CASE("matroid cross-check") {
  for (int n = 2; n <= 6; ++n) {
    INFO("n = ", n);
    CHECK(braid_matroid_hilbert(n) == poincare_m0(n, PoincareMethod::manin));
  }
}
