// Poincare polynomials of the genus-zero moduli spaces with marked points,
// computed five independent ways (two quadratic recurrences, a sum over
// partitions, a rewritten sum over partitions with all parts >= 2, and a
// Stirling-number formula with an exactness check on the truncation), plus
// the generating-series functional equations that tie them together and the
// bijection between spanning nested sets of the complete-graph matroid and
// set partitions without singleton blocks.

#pragma once

#include <vector>

#include "chowcalc/chow.hpp"

namespace chowcalc {

// (x-2)(x-3)...(x-m+1); equals 1 for m <= 2.
IntPoly chi_bar_m(int m);

enum class PoincareMethod { keel, manin, partition, stirling, rewriting };

const char* method_name(PoincareMethod m);

// Poincare polynomial of the moduli space with n+1 marked points (n >= 1;
// degree n-2 for n >= 2).  All methods agree; each is implemented from
// scratch on its own formula.
IntPoly poincare_m0(int n, PoincareMethod method);

std::vector<IntPoly> poincare_all_methods(int n);  // in enum order

// Multiplicity of the partition-sum term attached to lambda (a partition of
// n-1 with len parts): (n-1+len)! / (prod (lambda_i+1)! * prod mult_j!).
Rat partition_multiplicity(int n, const std::vector<int>& lambda);

// Signed Stirling numbers of the first kind and Stirling numbers of the
// second kind, up to n = nmax.
class StirlingTable {
public:
  explicit StirlingTable(int nmax);
  int nmax() const { return nmax_; }
  const Int& s1(int n, int k) const;
  const Int& s2(int n, int k) const;

private:
  int nmax_;
  std::vector<std::vector<Int>> s1_, s2_;
};

// Truncated-series identities, checked to the given order in t:
//   compose(H, G) == compose(G, H) == t, where H = sum_n P_n t^n/n! and
//   G = t - sum_{k>=2} chibar_k t^k/k!;
//   sum_{k=0}^{order} binom(x, k) H^k == x^2 H + 1 - x(x-1) t.
// Throws IdentityViolated on any mismatch.
void verify_functional_equations(int order = 8);

// Hilbert series of the graph matroid of the complete graph on n vertices
// with its minimal building set; equals poincare_m0(n, *) for n >= 2.
IntPoly braid_matroid_hilbert(int n, const EngineOptions& opts = {});

// Number of partitions of an N-element set into k blocks, none a singleton.
Int no_singleton_partition_count(int N, int k);

// Image of a spanning nested set S (flat ids of the complete-graph lattice
// on nverts vertices, minimal building set) under the partition bijection:
// a partition of {1, ..., nverts + |S| - 1} into |S| blocks of size >= 2,
// with marker elements nverts+1, nverts+2, ... introduced step by step.
// Blocks are sorted, and listed by smallest element.
std::vector<std::vector<int>> nested_to_partition(const FlatLattice& L,
                                                  int nverts,
                                                  const std::vector<int>& S);

// Enumerates every spanning nested set of the complete graph on n vertices,
// maps it through nested_to_partition, and checks that the images of the
// size-m sets are pairwise distinct valid no-singleton partitions, exactly
// no_singleton_partition_count(n+m-1, m) many.  2 <= n <= 6.
void verify_partition_bijection(int n);

}  // namespace chowcalc
