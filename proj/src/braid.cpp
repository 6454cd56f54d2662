#include "chowcalc/braid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "chowcalc/errors.hpp"

namespace chowcalc {

namespace {

const RatPoly& rat_one() {
  static const RatPoly one = RatPoly::constant(1);
  return one;
}

// Divide every coefficient by two; the quadratic recurrence below is only
// integral because its cross terms pair up, so a stray odd coefficient means
// the input was invalid.
IntPoly exact_halve(const IntPoly& p) {
  std::vector<Int> c = p.coeffs();
  for (Int& v : c) {
    if (v % 2 != 0)
      fail(Err::NonIntegralKeelTerm,
           "quadratic recurrence produced an odd coefficient");
    v /= 2;
  }
  return IntPoly(std::move(c));
}

// Descending-part enumeration of the partitions of n.
void for_each_partition(int n,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      fn(cur);
      return;
    }
    for (int p = std::min(rem, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
}

// Partitions of n into exactly `len` parts, each >= 2.
void for_each_partition_min2(
    int n, int len, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int, int, int)> rec = [&](int rem, int maxp, int left) {
    if (left == 0) {
      if (rem == 0) fn(cur);
      return;
    }
    if (rem < 2 * left || rem > maxp * left) return;
    for (int p = std::min(rem, maxp); p >= 2; --p) {
      cur.push_back(p);
      rec(rem - p, p, left - 1);
      cur.pop_back();
    }
  };
  rec(n, n, len);
}

Int factorial_product_of_multiplicities(const std::vector<int>& parts) {
  Int den = 1;
  int run = 1;
  for (std::size_t i = 1; i <= parts.size(); ++i) {
    if (i < parts.size() && parts[i] == parts[i - 1]) {
      ++run;
    } else {
      den *= factorial(static_cast<unsigned>(run));
      run = 1;
    }
  }
  return den;
}

std::vector<IntPoly> poincare_keel_upto(int n) {
  std::vector<IntPoly> H(static_cast<std::size_t>(n) + 1);
  H[1] = IntPoly::constant(1);
  if (n >= 2) H[2] = IntPoly::constant(1);
  const IntPoly one_plus_x = IntPoly::geometric(0, 1);
  const IntPoly x = IntPoly::monomial(1);
  for (int k = 3; k <= n; ++k) {
    IntPoly cross;
    for (int j = 2; j <= k - 2; ++j)
      cross += H[j] * H[k - j] *
               binomial(static_cast<unsigned>(k), static_cast<unsigned>(j));
    H[k] = one_plus_x * H[k - 1] + exact_halve(x * cross);
  }
  return H;
}

std::vector<IntPoly> poincare_manin_upto(int n) {
  std::vector<IntPoly> H(static_cast<std::size_t>(n) + 1);
  H[1] = IntPoly::constant(1);
  if (n >= 2) H[2] = IntPoly::constant(1);
  const IntPoly x = IntPoly::monomial(1);
  for (int k = 3; k <= n; ++k) {
    IntPoly cross;
    for (int j = 2; j <= k - 1; ++j)
      cross += H[j] * H[k - j] *
               binomial(static_cast<unsigned>(k - 1), static_cast<unsigned>(j));
    H[k] = H[k - 1] + x * cross;
  }
  return H;
}

IntPoly poincare_partition_sum(int n) {
  if (n == 1) return IntPoly::constant(1);
  RatPoly acc;
  for_each_partition(n - 1, [&](const std::vector<int>& lam) {
    RatPoly term = RatPoly::constant(partition_multiplicity(n, lam));
    for (int p : lam) term = term * RatPoly(chi_bar_m(p + 1));
    acc += term;
  });
  return acc.to_int();
}

IntPoly poincare_rewriting_sum(int n) {
  if (n == 1) return IntPoly::constant(1);
  RatPoly acc;
  for (int m = 1; m <= n - 1; ++m) {
    for_each_partition_min2(n - 1 + m, m, [&](const std::vector<int>& tau) {
      Int den = 1;
      for (int p : tau) den *= factorial(static_cast<unsigned>(p));
      den *= factorial_product_of_multiplicities(tau);
      Rat coef = Rat(factorial(static_cast<unsigned>(n - 1 + m))) / Rat(den);
      RatPoly term = RatPoly::constant(coef);
      for (int p : tau) term = term * RatPoly(chi_bar_m(p));
      acc += term;
    });
  }
  return acc.to_int();
}

IntPoly poincare_stirling_sum(int n) {
  if (n == 1) return IntPoly::constant(1);
  const int D = 3 * n - 4;
  StirlingTable T(D + n);
  std::vector<Int> c(static_cast<std::size_t>(D) + 1);
  for (int d = 0; d <= D; ++d)
    for (int k = std::max(0, d - (n - 1)); k <= d; ++k) {
      const int j = d - k;
      c[d] += T.s1(k + n, k + n - j) * T.s2(k + n - j, k + 1);
    }
  const IntPoly F =
      IntPoly(std::vector<Int>{1, -1}).pow(static_cast<unsigned>(n)) *
      IntPoly(std::move(c));
  // only degrees <= D of the product are meaningful; those from n-1 up must
  // cancel exactly, and what is left below is the answer
  for (int d = n - 1; d <= D; ++d)
    if (F.coeff(d) != 0)
      fail(Err::TruncationResidue,
           "Stirling sum leaves a residue in degree " + std::to_string(d));
  std::vector<Int> keep;
  for (int d = 0; d <= n - 2; ++d) keep.push_back(F.coeff(d));
  return IntPoly(std::move(keep));
}

RatPoly binomial_poly(int k) {
  // x(x-1)...(x-k+1)/k!
  IntPoly num = IntPoly::constant(1);
  for (int i = 0; i < k; ++i)
    num = num * IntPoly(std::vector<Int>{-i, 1});
  return RatPoly(num) * (Rat(1) / Rat(factorial(static_cast<unsigned>(k))));
}

}  // namespace

IntPoly chi_bar_m(int m) {
  if (m < 1) fail(Err::InternalError, "chi_bar_m needs m >= 1");
  IntPoly p = IntPoly::constant(1);
  for (int i = 2; i <= m - 1; ++i)
    p = p * IntPoly(std::vector<Int>{-i, 1});
  return p;
}

const char* method_name(PoincareMethod m) {
  switch (m) {
    case PoincareMethod::keel: return "keel";
    case PoincareMethod::manin: return "manin";
    case PoincareMethod::partition: return "partition";
    case PoincareMethod::stirling: return "stirling";
    case PoincareMethod::rewriting: return "rewriting";
  }
  fail(Err::InternalError, "unknown method");
}

IntPoly poincare_m0(int n, PoincareMethod method) {
  if (n < 1) fail(Err::InternalError, "poincare_m0 needs n >= 1");
  switch (method) {
    case PoincareMethod::keel: return poincare_keel_upto(n)[n];
    case PoincareMethod::manin: return poincare_manin_upto(n)[n];
    case PoincareMethod::partition: return poincare_partition_sum(n);
    case PoincareMethod::stirling: return poincare_stirling_sum(n);
    case PoincareMethod::rewriting: return poincare_rewriting_sum(n);
  }
  fail(Err::InternalError, "unknown method");
}

std::vector<IntPoly> poincare_all_methods(int n) {
  std::vector<IntPoly> out;
  for (PoincareMethod m :
       {PoincareMethod::keel, PoincareMethod::manin, PoincareMethod::partition,
        PoincareMethod::stirling, PoincareMethod::rewriting})
    out.push_back(poincare_m0(n, m));
  return out;
}

Rat partition_multiplicity(int n, const std::vector<int>& lambda) {
  int total = 0;
  for (int p : lambda) total += p;
  if (total != n - 1)
    fail(Err::InternalError, "multiplicity needs a partition of n-1");
  std::vector<int> lam = lambda;
  std::sort(lam.begin(), lam.end(), std::greater<int>());
  Int den = 1;
  for (int p : lam) den *= factorial(static_cast<unsigned>(p) + 1);
  den *= factorial_product_of_multiplicities(lam);
  const unsigned len = static_cast<unsigned>(lam.size());
  return Rat(factorial(static_cast<unsigned>(n - 1) + len)) / Rat(den);
}

StirlingTable::StirlingTable(int nmax) : nmax_(nmax) {
  s1_.resize(static_cast<std::size_t>(nmax) + 1);
  s2_.resize(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    s1_[n].assign(static_cast<std::size_t>(n) + 1, 0);
    s2_[n].assign(static_cast<std::size_t>(n) + 1, 0);
  }
  s1_[0][0] = 1;
  s2_[0][0] = 1;
  for (int n = 0; n < nmax; ++n)
    for (int k = 0; k <= n + 1; ++k) {
      Int v1 = 0, v2 = 0;
      if (k >= 1) {
        v1 += s1_[n][k - 1];
        v2 += s2_[n][k - 1];
      }
      if (k <= n) {
        v1 -= Int(n) * s1_[n][k];
        v2 += Int(k) * s2_[n][k];
      }
      s1_[n + 1][k] = v1;
      s2_[n + 1][k] = v2;
    }
}

const Int& StirlingTable::s1(int n, int k) const {
  if (n < 0 || n > nmax_ || k < 0 || k > n)
    fail(Err::InternalError, "Stirling index out of range");
  return s1_[n][k];
}

const Int& StirlingTable::s2(int n, int k) const {
  if (n < 0 || n > nmax_ || k < 0 || k > n)
    fail(Err::InternalError, "Stirling index out of range");
  return s2_[n][k];
}

void verify_functional_equations(int order) {
  const int N = order;
  if (N < 2) fail(Err::InternalError, "series order too small");
  Series H(N), G(N);
  const std::vector<IntPoly> P = poincare_manin_upto(N);
  for (int n = 1; n <= N; ++n)
    H.set_coeff(n, RatPoly(P[n]) *
                       (Rat(1) / Rat(factorial(static_cast<unsigned>(n)))));
  G.set_coeff(1, rat_one());
  for (int k = 2; k <= N; ++k)
    G.set_coeff(k, RatPoly(chi_bar_m(k)) *
                       (Rat(-1) / Rat(factorial(static_cast<unsigned>(k)))));

  const Series t = Series::t(N);
  if (!(Series::compose(H, G) == t))
    fail(Err::IdentityViolated, "H(G(t)) != t");
  if (!(Series::compose(G, H) == t))
    fail(Err::IdentityViolated, "G(H(t)) != t");

  Series lhs(N);
  Series Hk(N);
  Hk.set_coeff(0, rat_one());  // H^0
  for (int k = 0; k <= N; ++k) {
    if (k > 0) Hk = Hk * H;
    lhs = lhs + Hk.scale(binomial_poly(k));
  }
  Series rhs = H.scale(RatPoly(IntPoly::monomial(2)));
  rhs.set_coeff(0, rhs.coeff(0) + rat_one());
  rhs.set_coeff(
      1, rhs.coeff(1) - RatPoly(IntPoly(std::vector<Int>{0, -1, 1})));
  if (!(lhs == rhs))
    fail(Err::IdentityViolated,
         "sum of binom(x,k) H^k != x^2 H + 1 - x(x-1) t");
}

IntPoly braid_matroid_hilbert(int n, const EngineOptions& opts) {
  FlatLattice L(Polymatroid::complete_graph(n));
  ChowContext C(minimal_building_set(L));
  return C.hilbert_spanning(opts);
}

Int no_singleton_partition_count(int N, int k) {
  if (N < 0 || k < 0) return 0;
  // b(i, j) = j b(i-1, j) + (i-1) b(i-2, j-1): the last element either joins
  // one of j open blocks or pairs with an earlier element in a fresh block.
  std::vector<std::vector<Int>> b(static_cast<std::size_t>(N) + 1,
                                  std::vector<Int>(static_cast<std::size_t>(k) + 1, 0));
  b[0][0] = 1;
  for (int i = 1; i <= N; ++i)
    for (int j = 0; j <= k; ++j) {
      Int v = Int(j) * b[i - 1][j];
      if (i >= 2 && j >= 1) v += Int(i - 1) * b[i - 2][j - 1];
      b[i][j] = v;
    }
  return b[N][k];
}

std::vector<std::vector<int>> nested_to_partition(const FlatLattice& L,
                                                  int nverts,
                                                  const std::vector<int>& S) {
  // edge order matches complete_graph: 1-2, 1-3, ..., 1-n, 2-3, ...
  std::vector<std::pair<int, int>> ends;
  for (int i = 1; i < nverts; ++i)
    for (int j = i + 1; j <= nverts; ++j) ends.emplace_back(i, j);

  std::vector<std::vector<int>> work;
  for (int id : S) {
    std::set<int> vs;
    Mask f = L.flat(id);
    for (std::size_t e = 0; e < ends.size(); ++e)
      if (f & (Mask(1) << e)) {
        vs.insert(ends[e].first);
        vs.insert(ends[e].second);
      }
    work.emplace_back(vs.begin(), vs.end());
  }

  std::vector<std::vector<int>> out;
  int step = 0;
  while (!work.empty()) {
    ++step;
    std::size_t pick = 0;
    for (std::size_t i = 1; i < work.size(); ++i) {
      const auto& a = work[i];
      const auto& b = work[pick];
      if (a.size() < b.size() ||
          (a.size() == b.size() && a.front() < b.front()))
        pick = i;
    }
    std::vector<int> em = std::move(work[pick]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(pick));
    for (auto& C : work) {
      if (C.size() <= em.size()) continue;
      if (!std::includes(C.begin(), C.end(), em.begin(), em.end())) continue;
      std::vector<int> rest;
      std::set_difference(C.begin(), C.end(), em.begin(), em.end(),
                          std::back_inserter(rest));
      rest.push_back(nverts + step);
      std::sort(rest.begin(), rest.end());
      C = std::move(rest);
    }
    out.push_back(std::move(em));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

void verify_partition_bijection(int n) {
  if (n < 2 || n > 6)
    fail(Err::InternalError, "bijection check supports 2 <= n <= 6");
  FlatLattice L(Polymatroid::complete_graph(n));
  BuildingSet B = minimal_building_set(L);

  std::map<int, std::set<std::vector<std::vector<int>>>> images;
  for_each_nested(B, [&](const std::vector<int>& S) {
    if (S.empty() || !is_spanning(B, S)) return true;
    const int m = static_cast<int>(S.size());
    const int N = n + m - 1;
    auto part = nested_to_partition(L, n, S);
    if (static_cast<int>(part.size()) != m)
      fail(Err::IdentityViolated, "image has the wrong number of blocks");
    std::vector<char> seen(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& block : part) {
      if (block.size() < 2)
        fail(Err::IdentityViolated, "image has a singleton block");
      for (int v : block) {
        if (v < 1 || v > N || seen[v])
          fail(Err::IdentityViolated, "image is not a partition");
        seen[v] = 1;
      }
    }
    for (int v = 1; v <= N; ++v)
      if (!seen[v]) fail(Err::IdentityViolated, "image misses an element");
    if (!images[m].insert(std::move(part)).second)
      fail(Err::IdentityViolated, "two nested sets map to one partition");
    return true;
  });

  for (int m = 1; m <= n - 1; ++m) {
    const Int want = no_singleton_partition_count(n + m - 1, m);
    const Int got =
        images.count(m) ? Int(images.at(m).size()) : Int(0);
    if (got != want)
      fail(Err::IdentityViolated,
           "size-" + std::to_string(m) + " spanning sets: " + to_string(got) +
               " images, " + to_string(want) + " partitions");
  }
  for (const auto& [m, set] : images)
    if (m < 1 || m > n - 1)
      fail(Err::IdentityViolated, "unexpected spanning-set size");
}

}  // namespace chowcalc
