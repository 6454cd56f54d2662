#include "chowcalc/chow.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <utility>

#include "chowcalc/errors.hpp"

#ifdef CHOWCALC_HAVE_OPENMP
#include <omp.h>
#endif

namespace chowcalc {

namespace {

int resolve_threads(int requested) {
#ifdef CHOWCALC_HAVE_OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

// Every Hilbert series we produce is a polynomial with nonnegative
// coefficients and constant term 1; anything else is an engine bug.
IntPoly check_hilbert(IntPoly H) {
  if (H.coeff(0) != 1)
    fail(Err::InternalError, "Hilbert series has constant term " +
                                 to_string(H.coeff(0)) + ", expected 1");
  for (const Int& c : H.coeffs())
    if (c < 0)
      fail(Err::InternalError,
           "Hilbert series has a negative coefficient: " + H.str());
  return H;
}

std::uint64_t pair_key(int b, int t) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)) << 32) |
         static_cast<std::uint32_t>(t);
}

class Timer {
public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::auto_select: return "auto";
    case Engine::fy: return "fy";
    case Engine::recursion_restriction: return "recursion-restriction";
    case Engine::recursion_contraction: return "recursion-contraction";
    case Engine::chains: return "chains";
    case Engine::spanning: return "spanning";
  }
  fail(Err::InternalError, "unknown engine");
}

ChowContext::ChowContext(BuildingSet view) : B_(std::move(view)) {
  if (B_.L == nullptr) fail(Err::InternalError, "building set has no lattice");
  top_factors_ = interval_factors(B_.bottom, B_.top);
}

std::vector<int> ChowContext::interval_factors(int b, int t) const {
  std::vector<int> ms = induced_members(B_, b, t);
  std::vector<int> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < ms.size(); ++j)  // leq implies id order
      if (B_.L->leq(ms[i], ms[j])) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(ms[i]);
  }
  return out;
}

int ChowContext::n_factors(int b, int t) const {
  const std::uint64_t key = pair_key(b, t);
  {
    std::shared_lock lk(mx_);
    auto it = nf_memo_.find(key);
    if (it != nf_memo_.end()) return it->second;
  }
  int n = static_cast<int>(interval_factors(b, t).size());
  std::unique_lock lk(mx_);
  return nf_memo_.emplace(key, n).first->second;
}

IntPoly ChowContext::g_reduced_char(int b, int t) const {
  if (b == t) return IntPoly::constant(-1);
  const std::uint64_t key = pair_key(b, t);
  {
    std::shared_lock lk(mx_);
    auto it = g_memo_.find(key);
    if (it != g_memo_.end()) return it->second;
  }
  const int ell = n_factors(b, t);
  if (ell < 1)
    fail(Err::NotABuildingSet,
         "interval has no building-set factors; view is not a building set");
  // chi of the interval is divisible by (1-x)^{#factors}; the quotient,
  // negated, is the incidence value driving the recursions.
  const IntPoly den = IntPoly(std::vector<Int>{1, -1}).pow(ell);
  IntPoly val = -exact_divide(B_.L->characteristic(b, t), den);
  std::unique_lock lk(mx_);
  return g_memo_.emplace(key, std::move(val)).first->second;
}

IntPoly ChowContext::alpha(int b, int t) const {
  if (b == t) return IntPoly::constant(-1);
  const std::vector<int> fs = interval_factors(b, t);
  IntPoly prod = IntPoly::constant(1);
  for (int G : fs)
    prod = prod * IntPoly::geometric(1, B_.L->rank(G) - B_.L->rank(b) - 1);
  return (fs.size() % 2 == 0) ? -prod : prod;
}

// -------------------------------------------------------------- fy engine

namespace {

// Shared DFS state for the monomial-basis enumeration.  Members are tried in
// ascending id order, so no later insertion is ever below an earlier one and
// each member's exponent bound is fixed the moment it enters the set.
struct FyWalk {
  const BuildingSet& B;
  std::vector<int> S;
  IntPoly total;
  EngineStats st;

  int bound(int F) const {  // exponent bound of F on top of the current set
    int sup = B.bottom;
    for (int m : S)
      if (B.L->leq(m, F)) sup = B.L->join(sup, m);
    return B.L->rank(F) - B.L->rank(sup);
  }

  void dfs(std::size_t start, const IntPoly& prod) {
    ++st.visited;
    total += prod;
    ++st.terms;
    for (std::size_t i = start; i < B.members.size(); ++i) {
      const int F = B.members[i];
      if (!nested_with(B, S, F)) continue;
      const int d = bound(F);
      if (d <= 1) continue;  // exponent range empty: whole subtree is dead
      S.push_back(F);
      dfs(i + 1, prod * IntPoly::geometric(1, d - 1));
      S.pop_back();
    }
  }
};

struct CountWalk {
  const BuildingSet& B;
  std::vector<int> S;
  Int total = 0;

  void dfs(std::size_t start, const Int& prod) {
    total += prod;
    for (std::size_t i = start; i < B.members.size(); ++i) {
      const int F = B.members[i];
      if (!nested_with(B, S, F)) continue;
      int sup = B.bottom;
      for (int m : S)
        if (B.L->leq(m, F)) sup = B.L->join(sup, m);
      const int d = B.L->rank(F) - B.L->rank(sup);
      if (d <= 1) continue;
      S.push_back(F);
      dfs(i + 1, prod * (d - 1));
      S.pop_back();
    }
  }
};

}  // namespace

IntPoly ChowContext::hilbert_fy_serial(EngineStats* st) const {
  FyWalk w{B_, {}, IntPoly(), {}};
  w.dfs(0, IntPoly::constant(1));
  if (st) *st = w.st;
  return check_hilbert(std::move(w.total));
}

Int ChowContext::fy_monomial_count() const {
  CountWalk w{B_, {}, 0};
  w.dfs(0, Int(1));
  return w.total;
}

IntPoly ChowContext::hilbert_fy(const EngineOptions& opts,
                                EngineStats* st) const {
  const int nt = resolve_threads(opts.threads);
  const std::size_t m = B_.members.size();
  if (nt <= 1 || m < 2) return hilbert_fy_serial(st);

#ifdef CHOWCALC_HAVE_OPENMP
  std::vector<IntPoly> part(m);
  std::vector<EngineStats> pst(m);
  std::vector<std::exception_ptr> eptr(m);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < static_cast<long>(m); ++i) {
    try {
      const int F = B_.members[i];
      const int d = B_.L->rank(F) - B_.L->rank(B_.bottom);
      if (d <= 1) continue;
      FyWalk w{B_, {F}, IntPoly(), {}};
      w.dfs(i + 1, IntPoly::geometric(1, d - 1));
      part[i] = std::move(w.total);
      pst[i] = w.st;
    } catch (...) {
      eptr[i] = std::current_exception();
    }
  }
  for (auto& e : eptr)
    if (e) std::rethrow_exception(e);

  IntPoly total = IntPoly::constant(1);  // the empty nested set
  EngineStats acc;
  acc.visited = 1;
  acc.terms = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total += part[i];
    acc.visited += pst[i].visited;
    acc.terms += pst[i].terms;
  }
  if (st) *st = acc;
  return check_hilbert(std::move(total));
#else
  return hilbert_fy_serial(st);
#endif
}

// -------------------------------------------------------- spanning engine

namespace {

struct SpanWalk {
  const BuildingSet& B;
  const std::vector<int>& topf;  // sorted
  std::vector<int> S;
  int present = 0;  // how many top factors are currently in S
  IntPoly total;
  EngineStats st;

  bool is_factor(int F) const {
    return std::binary_search(topf.begin(), topf.end(), F);
  }

  void dfs(std::size_t start, const IntPoly& prod) {
    ++st.visited;
    if (present == static_cast<int>(topf.size())) {
      total += prod;  // S is spanning: it contains every top factor
      ++st.terms;
    }
    for (std::size_t i = start; i < B.members.size(); ++i) {
      const int F = B.members[i];
      if (!nested_with(B, S, F)) continue;
      int sup = B.bottom;
      for (int m : S)
        if (B.L->leq(m, F)) sup = B.L->join(sup, m);
      const IntPoly factor = B.L->reduced_characteristic(sup, F);
      S.push_back(F);
      present += is_factor(F) ? 1 : 0;
      dfs(i + 1, prod * factor);
      present -= is_factor(F) ? 1 : 0;
      S.pop_back();
    }
  }
};

}  // namespace

IntPoly ChowContext::hilbert_spanning_serial(EngineStats* st) const {
  SpanWalk w{B_, top_factors_, {}, 0, IntPoly(), {}};
  w.dfs(0, IntPoly::constant(1));
  if (st) *st = w.st;
  return check_hilbert(std::move(w.total));
}

IntPoly ChowContext::hilbert_spanning(const EngineOptions& opts,
                                      EngineStats* st) const {
  const int nt = resolve_threads(opts.threads);
  const std::size_t m = B_.members.size();
  if (nt <= 1 || m < 2) return hilbert_spanning_serial(st);

#ifdef CHOWCALC_HAVE_OPENMP
  std::vector<IntPoly> part(m);
  std::vector<EngineStats> pst(m);
  std::vector<std::exception_ptr> eptr(m);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < static_cast<long>(m); ++i) {
    try {
      const int F = B_.members[i];
      const IntPoly factor = B_.L->reduced_characteristic(B_.bottom, F);
      SpanWalk w{B_, top_factors_, {F}, 0, IntPoly(), {}};
      w.present = w.is_factor(F) ? 1 : 0;
      w.dfs(i + 1, factor);
      part[i] = std::move(w.total);
      pst[i] = w.st;
    } catch (...) {
      eptr[i] = std::current_exception();
    }
  }
  for (auto& e : eptr)
    if (e) std::rethrow_exception(e);

  IntPoly total;  // the empty set is never spanning here (members nonempty)
  EngineStats acc;
  acc.visited = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total += part[i];
    acc.visited += pst[i].visited;
    acc.terms += pst[i].terms;
  }
  if (st) *st = acc;
  return check_hilbert(std::move(total));
#else
  return hilbert_spanning_serial(st);
#endif
}

// ------------------------------------------------------- recursion engines

IntPoly ChowContext::hilbert_recursion_restriction(EngineStats* st) const {
  std::unordered_map<int, IntPoly> memo;
  EngineStats acc;
  // H on [b, top] = sum over b < F <= top of chibar^G_{bF} * H on [F, top];
  // references into an unordered_map stay valid across inserts.
  std::function<const IntPoly&(int)> H = [&](int b) -> const IntPoly& {
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
    IntPoly val;
    if (b == B_.top) {
      val = IntPoly::constant(1);
    } else {
      for (int F : B_.L->interval(b, B_.top)) {
        if (F == b) continue;
        val += g_reduced_char(b, F) * H(F);
        ++acc.terms;
      }
    }
    return memo.emplace(b, std::move(val)).first->second;
  };
  IntPoly result = H(B_.bottom);
  acc.memo_entries = memo.size();
  acc.visited = memo.size();
  if (st) *st = acc;
  return check_hilbert(std::move(result));
}

IntPoly ChowContext::hilbert_recursion_contraction(EngineStats* st) const {
  std::unordered_map<int, IntPoly> memo;
  EngineStats acc;
  // H on [bottom, t] = sum over bottom <= F < t of H on [bottom, F] *
  // chibar^G_{Ft}.
  std::function<const IntPoly&(int)> H = [&](int t) -> const IntPoly& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    IntPoly val;
    if (t == B_.bottom) {
      val = IntPoly::constant(1);
    } else {
      for (int F : B_.L->interval(B_.bottom, t)) {
        if (F == t) continue;
        val += H(F) * g_reduced_char(F, t);
        ++acc.terms;
      }
    }
    return memo.emplace(t, std::move(val)).first->second;
  };
  IntPoly result = H(B_.top);
  acc.memo_entries = memo.size();
  acc.visited = memo.size();
  if (st) *st = acc;
  return check_hilbert(std::move(result));
}

// ----------------------------------------------------------- chains engine

IntPoly ChowContext::hilbert_chains(std::uint64_t chain_cap,
                                    EngineStats* st) const {
  IntPoly total;
  EngineStats acc;
  std::uint64_t complete = 0;
  if (B_.bottom == B_.top) {
    total = IntPoly::constant(1);
    acc.terms = 1;
  } else {
    std::function<void(int, const IntPoly&)> rec = [&](int a,
                                                       const IntPoly& prod) {
      for (int F : B_.L->interval(a, B_.top)) {
        if (F == a) continue;
        ++acc.visited;
        IntPoly next = prod * g_reduced_char(a, F);
        if (F == B_.top) {
          if (++complete > chain_cap)
            fail(Err::TooManyChains,
                 "more than " + std::to_string(chain_cap) +
                     " complete chains; use another engine");
          total += next;
          ++acc.terms;
        } else {
          rec(F, next);
        }
      }
    };
    rec(B_.bottom, IntPoly::constant(1));
  }
  if (st) *st = acc;
  return check_hilbert(std::move(total));
}

// ----------------------------------------------------------- engine driver

Engine ChowContext::pick_engine(const EngineOptions& opts) const {
  if (B_.bottom == B_.top || B_.members.empty()) return Engine::spanning;
  const auto ns = nested_stats(B_, opts.auto_count_cap);
  if (ns.has_value() && top_factors_.size() <= 3) return Engine::spanning;
  return Engine::recursion_restriction;
}

EngineResult ChowContext::run(Engine e, const EngineOptions& opts) const {
  const Engine chosen = (e == Engine::auto_select) ? pick_engine(opts) : e;
  EngineResult res;
  res.engine = engine_name(chosen);
  Timer timer;
  switch (chosen) {
    case Engine::fy:
      res.hilbert = hilbert_fy(opts, &res.stats);
      break;
    case Engine::recursion_restriction:
      res.hilbert = hilbert_recursion_restriction(&res.stats);
      break;
    case Engine::recursion_contraction:
      res.hilbert = hilbert_recursion_contraction(&res.stats);
      break;
    case Engine::chains:
      res.hilbert = hilbert_chains(opts.chain_cap, &res.stats);
      break;
    case Engine::spanning:
      res.hilbert = hilbert_spanning(opts, &res.stats);
      break;
    case Engine::auto_select:
      fail(Err::InternalError, "unresolved engine");
  }
  res.stats.seconds = timer.seconds();
  return res;
}

std::vector<EngineResult> ChowContext::run_all(
    const EngineOptions& opts) const {
  std::vector<EngineResult> out;
  const Engine all[] = {Engine::fy, Engine::recursion_restriction,
                        Engine::recursion_contraction, Engine::chains,
                        Engine::spanning};
  for (Engine e : all) {
    try {
      out.push_back(run(e, opts));
    } catch (const Error& err) {
      if (e == Engine::chains && err.code() == Err::TooManyChains)
        continue;  // chains opts out on wide lattices; the rest must answer
      throw;
    }
  }
  return out;
}

// ------------------------------------------------------------- conversion

IntPoly hilbert_convert(const BuildingSet& small, const BuildingSet& large,
                        std::vector<ConvertStep>* log,
                        const EngineOptions& opts) {
  if (small.L == nullptr || small.L != large.L)
    fail(Err::InternalError, "conversion requires views on one lattice");
  const FlatLattice& L = *small.L;
  if (small.bottom != L.bottom() || small.top != L.top() ||
      large.bottom != L.bottom() || large.top != L.top())
    fail(Err::InternalError, "conversion requires full-lattice views");
  if (!L.polymatroid().is_matroid())
    fail(Err::NotAMatroid, "building-set conversion applies to matroids only");
  for (int m : small.members)
    if (!large.is_member(m))
      fail(Err::NoValidOrdering,
           "starting building set is not contained in the target one");
  validate_building_set(small);
  validate_building_set(large);

  // Ids ascend with the partial order, so walking the difference in
  // descending id order always removes a minimal remaining element; the
  // additions below replay that walk backwards.
  std::vector<int> additions;
  for (int m : large.members)
    if (!small.is_member(m)) additions.push_back(m);
  std::sort(additions.begin(), additions.end(), std::greater<int>());

  ChowContext base(small);
  IntPoly H = base.hilbert_spanning(opts);

  std::vector<int> cur = small.members;
  for (int G : additions) {
    BuildingSet prev = building_set(L, cur);
    const std::vector<int> fs = factors_of(prev, G);
    const int ell = static_cast<int>(fs.size());
    if (ell < 2)
      fail(Err::InternalError,
           "conversion step did not split the added member");
    cur.push_back(G);
    std::sort(cur.begin(), cur.end());
    BuildingSet next = building_set(L, cur);
    try {
      for (int F : L.interval(G, L.top())) check_flat_factorization(next, F);
    } catch (const Error& err) {
      if (err.code() == Err::NotABuildingSet)
        fail(Err::NoValidOrdering,
             std::string("conversion broke down when adding a member: ") +
                 err.what());
      throw;
    }
    ChowContext restr(restrict_to(prev, G));
    ChowContext contr(contract_by(prev, G));
    IntPoly corr = IntPoly::geometric(1, ell - 1) *
                   restr.hilbert_spanning_serial() *
                   contr.hilbert_spanning_serial();
    H += corr;
    if (log) log->push_back(ConvertStep{G, ell, std::move(corr)});
  }
  return check_hilbert(std::move(H));
}

// ------------------------------------------------------- incidence algebra

namespace {

void inc_guard(const FlatLattice& L) {
  if (L.size() > 300)
    fail(Err::LatticeTooLarge,
         "incidence-algebra checks are limited to 300 flats");
}

void require_full_view(const ChowContext& C) {
  const FlatLattice& L = C.lattice();
  if (C.view().bottom != L.bottom() || C.view().top != L.top())
    fail(Err::InternalError,
         "incidence-algebra checks need a full-lattice view");
}

IncMat inc_zero(int n) {
  return IncMat(n, std::vector<RatPoly>(static_cast<std::size_t>(n)));
}

}  // namespace

IncMat inc_delta(const FlatLattice& L) {
  inc_guard(L);
  IncMat A = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i) A[i][i] = RatPoly::constant(1);
  return A;
}

IncMat inc_zeta(const FlatLattice& L) {
  inc_guard(L);
  IncMat A = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j)
      if (L.leq(i, j)) A[i][j] = RatPoly::constant(1);
  return A;
}

IncMat inc_chibar(const ChowContext& C) {
  const FlatLattice& L = C.lattice();
  inc_guard(L);
  require_full_view(C);
  IncMat A = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j)
      if (L.leq(i, j)) A[i][j] = C.g_reduced_char(i, j);
  return A;
}

IncMat inc_alpha(const ChowContext& C) {
  const FlatLattice& L = C.lattice();
  inc_guard(L);
  require_full_view(C);
  IncMat A = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j)
      if (L.leq(i, j)) A[i][j] = C.alpha(i, j);
  return A;
}

IncMat inc_h(const ChowContext& C) {
  const FlatLattice& L = C.lattice();
  inc_guard(L);
  require_full_view(C);
  IncMat A = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j) {
      if (!L.leq(i, j)) continue;
      BuildingSet v;
      v.L = &L;
      v.bottom = i;
      v.top = j;
      v.members = induced_members(C.view(), i, j);
      A[i][j] = ChowContext(std::move(v)).hilbert_spanning_serial();
    }
  return A;
}

IncMat inc_mul(const FlatLattice& L, const IncMat& A, const IncMat& B) {
  inc_guard(L);
  IncMat C = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j) {
      if (!L.leq(i, j)) continue;
      RatPoly acc;
      for (int k : L.interval(i, j)) acc += A[i][k] * B[k][j];
      C[i][j] = std::move(acc);
    }
  return C;
}

IncMat inc_invert(const FlatLattice& L, const IncMat& A) {
  inc_guard(L);
  const int n = L.size();
  IncMat B = inc_zero(n);
  for (int i = 0; i < n; ++i) {
    const RatPoly& d = A[i][i];
    if (d.is_zero() || d.degree() != 0)
      fail(Err::NonInvertibleDiagonal,
           "diagonal entry at flat " + std::to_string(i) +
               " is not a nonzero constant");
    B[i][i] = RatPoly::constant(Rat(1) / d.coeff(0));
  }
  for (int j = 0; j < n; ++j) {
    const Rat inv_d = Rat(-1) / A[j][j].coeff(0);
    for (int i = j - 1; i >= 0; --i) {
      if (!L.leq(i, j)) continue;
      RatPoly acc;
      for (int k : L.interval(i, j))
        if (k != j) acc += B[i][k] * A[k][j];
      B[i][j] = acc * inv_d;
    }
  }
  return B;
}

void verify_incidence_identities(const ChowContext& C) {
  const FlatLattice& L = C.lattice();
  inc_guard(L);
  require_full_view(C);
  const IncMat zeta = inc_zeta(L);
  const IncMat chibar = inc_chibar(C);
  const IncMat alpha = inc_alpha(C);
  const IncMat h = inc_h(C);
  const IncMat delta = inc_delta(L);

  auto expect = [&](const IncMat& got, const IncMat& want, const char* what) {
    for (int i = 0; i < L.size(); ++i)
      for (int j = i; j < L.size(); ++j)
        if (!(got[i][j] == want[i][j]))
          fail(Err::IdentityViolated,
               std::string(what) + " fails on the pair (" + std::to_string(i) +
                   ", " + std::to_string(j) + ")");
  };

  IncMat minus_delta = inc_zero(L.size());
  IncMat minus_h = inc_zero(L.size());
  for (int i = 0; i < L.size(); ++i)
    for (int j = i; j < L.size(); ++j) {
      minus_delta[i][j] = delta[i][j] * Rat(-1);
      minus_h[i][j] = h[i][j] * Rat(-1);
    }

  expect(inc_mul(L, zeta, chibar), alpha, "zeta * chibar == alpha");
  expect(inc_mul(L, chibar, h), minus_delta, "chibar * h == -delta");
  expect(inc_mul(L, h, chibar), minus_delta, "h * chibar == -delta");
  expect(inc_invert(L, chibar), minus_h, "invert(chibar) == -h");
}

}  // namespace chowcalc
