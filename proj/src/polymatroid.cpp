#include "chowcalc/polymatroid.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "chowcalc/errors.hpp"

namespace chowcalc {

// ---------------------------------------------------------------- GroundSet

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() > 64)
    fail(Err::GroundTooLarge, "ground set has " +
                                  std::to_string(labels_.size()) +
                                  " elements; 64 is the limit");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) fail(Err::ParseError, "empty element label");
    for (size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        fail(Err::ParseError, "duplicate element label '" + labels_[i] + "'");
  }
}

int GroundSet::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  fail(Err::UnknownElement, "no ground element named '" + label + "'");
}

Mask GroundSet::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

std::string GroundSet::set_str(Mask m) const {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < size(); ++i)
    if (m & bit(i)) {
      if (!first) s += ",";
      s += labels_[i];
      first = false;
    }
  return s + "}";
}

// ----------------------------------------------------------------- backends

class RankBackend {
public:
  virtual ~RankBackend() = default;
  virtual int rank(Mask A) const = 0;
  // O(1)-ish backends skip the memo cache
  virtual bool trivially_fast() const { return false; }
  virtual std::string describe() const = 0;
};

namespace {

class UniformBk : public RankBackend {
public:
  UniformBk(int k) : k_(k) {}
  int rank(Mask A) const override { return std::min(popcount(A), k_); }
  bool trivially_fast() const override { return true; }
  std::string describe() const override {
    return "uniform(k=" + std::to_string(k_) + ")";
  }

private:
  int k_;
};

class GraphicBk : public RankBackend {
public:
  GraphicBk(int nv, std::vector<std::pair<int, int>> edges)
      : nv_(nv), edges_(std::move(edges)) {}
  int rank(Mask A) const override {
    // union-find over vertices; rank = |touched vertices| - |components|
    int parent[64 * 2];
    std::iota(parent, parent + nv_, 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::uint64_t touched = 0;
    int merges = 0;
    for (Mask rest = A; rest;) {
      int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      auto [u, v] = edges_[e];
      touched |= (std::uint64_t(1) << u) | (std::uint64_t(1) << v);
      int ru = find(u), rv = find(v);
      if (ru != rv) {
        parent[ru] = rv;
        ++merges;
      }
    }
    (void)touched;
    return merges;
  }
  std::string describe() const override {
    return "graphic(nv=" + std::to_string(nv_) + ")";
  }

private:
  int nv_;
  std::vector<std::pair<int, int>> edges_;  // 0-based vertex ids
};

class TableBk : public RankBackend {
public:
  explicit TableBk(std::vector<int> t) : t_(std::move(t)) {}
  int rank(Mask A) const override { return t_[A]; }
  bool trivially_fast() const override { return true; }
  std::string describe() const override { return "rank_table"; }

private:
  std::vector<int> t_;
};

class FlatListBk : public RankBackend {
public:
  // flats sorted by (rank, mask); rank(A) = rank of first flat containing A
  explicit FlatListBk(std::vector<std::pair<Mask, int>> flats)
      : flats_(std::move(flats)) {}
  int rank(Mask A) const override {
    for (const auto& [f, r] : flats_)
      if ((A & ~f) == 0) return r;
    fail(Err::NotALattice, "no listed flat contains the queried subset");
  }
  std::string describe() const override { return "flat_list"; }

private:
  std::vector<std::pair<Mask, int>> flats_;
};

class MinorBk : public RankBackend {
public:
  // restriction when contract == 0; parent-space mask of kept elements in
  // `elems` (index i of the minor is parent element elems[i])
  MinorBk(Polymatroid parent, std::vector<int> elems, Mask contract)
      : parent_(std::move(parent)),
        elems_(std::move(elems)),
        contract_(contract),
        base_rank_(parent_.rank(contract)) {}
  int rank(Mask A) const override {
    Mask up = contract_;
    for (Mask rest = A; rest;) {
      int i = __builtin_ctzll(rest);
      rest &= rest - 1;
      up |= bit(elems_[i]);
    }
    return parent_.rank(up) - base_rank_;
  }
  std::string describe() const override {
    return (contract_ ? "contraction of " : "restriction of ") +
           parent_.describe();
  }

private:
  Polymatroid parent_;
  std::vector<int> elems_;
  Mask contract_;
  int base_rank_;
};

class SumBk : public RankBackend {
public:
  SumBk(Polymatroid a, Polymatroid b)
      : a_(std::move(a)), b_(std::move(b)), na_(a_.n()) {}
  int rank(Mask A) const override {
    Mask low = A & a_.full();
    Mask high = A >> na_;
    return a_.rank(low) + b_.rank(high);
  }
  std::string describe() const override {
    return "(" + a_.describe() + ") + (" + b_.describe() + ")";
  }

private:
  Polymatroid a_, b_;
  int na_;
};

class PrincipalExtBk : public RankBackend {
public:
  // new element has index parent.n(); rank(A + e) = min(rank(A)+1, rank(A|F))
  PrincipalExtBk(Polymatroid parent, Mask flat)
      : parent_(std::move(parent)), flat_(flat) {}
  int rank(Mask A) const override {
    Mask base = A & parent_.full();
    int r = parent_.rank(base);
    if (A & bit(parent_.n()))
      return std::min(r + 1, parent_.rank(base | flat_));
    return r;
  }
  std::string describe() const override {
    return "principal_ext(" + parent_.describe() + ")";
  }

private:
  Polymatroid parent_;
  Mask flat_;
};

}  // namespace

// -------------------------------------------------------------- rank cache

struct Polymatroid::Cache {
  std::once_flag once;
  std::vector<std::atomic<std::int32_t>> slots;
};

int Polymatroid::rank(Mask A) const {
  if (A & ~full()) fail(Err::InternalError, "rank query outside ground set");
  if (!cache_) return backend_->rank(A);
  std::call_once(cache_->once, [&] {
    auto v = std::vector<std::atomic<std::int32_t>>(size_t(1) << n());
    for (auto& s : v) s.store(-1, std::memory_order_relaxed);
    cache_->slots = std::move(v);
  });
  auto& slot = cache_->slots[A];
  std::int32_t r = slot.load(std::memory_order_relaxed);
  if (r >= 0) return r;
  r = backend_->rank(A);
  slot.store(r, std::memory_order_relaxed);
  return r;
}

// ------------------------------------------------------------ construction

Polymatroid::Polymatroid(std::shared_ptr<const RankBackend> backend,
                         std::vector<std::string> labels, Validation level)
    : backend_(std::move(backend)),
      ground_(std::make_shared<GroundSet>(std::move(labels))) {
  if (!backend_->trivially_fast() && n() <= 22)
    cache_ = std::make_shared<Cache>();
  switch (level) {
    case Validation::full: validate_axioms(); break;
    case Validation::loopless_only: check_loopless(); break;
    case Validation::none: break;
  }
  rank_full_ = rank(full());
  // For a (validated) polymatroid, submodularity bounds every increment
  // rank(A+e) - rank(A) by the singleton rank, so the matroid property is
  // exactly "all singletons have rank <= 1" (== 1 given looplessness).
  is_matroid_ = true;
  for (int i = 0; i < n(); ++i)
    if (rank(bit(i)) > 1) is_matroid_ = false;
}

void Polymatroid::check_loopless() const {
  if (backend_->rank(0) != 0)
    fail(Err::RankAxiomViolation, "rank of the empty set is not 0");
  for (int i = 0; i < n(); ++i)
    if (backend_->rank(bit(i)) < 1)
      fail(Err::NotLoopless, "element '" + ground_->label(i) + "' is a loop");
}

void Polymatroid::validate_axioms() const {
  check_loopless();
  auto check_local = [&](Mask A, int e, int f) {
    // monotonicity at (A, e) and local submodularity at (A, e, f)
    int rA = backend_->rank(A);
    int rAe = backend_->rank(A | bit(e));
    if (rAe < rA)
      fail(Err::RankAxiomViolation,
           "rank drops when adding '" + ground_->label(e) + "' to " +
               ground_->set_str(A));
    if (f >= 0) {
      int rAf = backend_->rank(A | bit(f));
      int rAef = backend_->rank(A | bit(e) | bit(f));
      if (rAe + rAf < rAef + rA)
        fail(Err::RankAxiomViolation,
             "submodularity fails on " + ground_->set_str(A) + " with '" +
                 ground_->label(e) + "', '" + ground_->label(f) + "'");
    }
  };
  if (n() <= 12) {
    for (Mask A = 0; A <= full(); ++A) {
      for (int e = 0; e < n(); ++e) {
        if (A & bit(e)) continue;
        check_local(A, e, -1);
        for (int f = e + 1; f < n(); ++f)
          if (!(A & bit(f))) check_local(A, e, f);
      }
    }
  } else {
    // sampled spot checks with a fixed seed, for reproducibility
    std::mt19937_64 rng(0xC0FFEE123456789ull);
    std::uniform_int_distribution<Mask> dm(0, full());
    std::uniform_int_distribution<int> de(0, n() - 1);
    for (int it = 0; it < 20000; ++it) {
      Mask A = dm(rng) & full();
      int e = de(rng), f = de(rng);
      A &= ~(bit(e) | bit(f));
      if (e == f)
        check_local(A, e, -1);
      else
        check_local(A, e, f);
    }
  }
}

std::string Polymatroid::describe() const { return backend_->describe(); }

Polymatroid Polymatroid::uniform(int k, int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return uniform(k, std::move(labels));
}

Polymatroid Polymatroid::uniform(int k, std::vector<std::string> labels) {
  if (k < 0) fail(Err::ParseError, "uniform rank must be nonnegative");
  if (k < 1 && !labels.empty())
    fail(Err::NotLoopless, "uniform(0, n) has loops");
  return Polymatroid(std::make_shared<UniformBk>(k), std::move(labels),
                     Validation::none);
}

Polymatroid Polymatroid::boolean(int n) { return uniform(n, n); }

Polymatroid Polymatroid::graphic(int nv,
                                 std::vector<std::pair<int, int>> edges) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> zero_based;
  for (auto [u, v] : edges) {
    if (u == v) fail(Err::NotLoopless, "graph has a loop edge");
    if (u > v) std::swap(u, v);
    if (u < 1 || v > nv) fail(Err::ParseError, "edge endpoint out of range");
    labels.push_back(std::to_string(u) + "-" + std::to_string(v));
    zero_based.emplace_back(u - 1, v - 1);
  }
  if (nv > 64) fail(Err::GroundTooLarge, "too many vertices");
  return Polymatroid(std::make_shared<GraphicBk>(nv, std::move(zero_based)),
                     std::move(labels), Validation::none);
}

Polymatroid Polymatroid::complete_graph(int nv) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= nv; ++i)
    for (int j = i + 1; j <= nv; ++j) edges.emplace_back(i, j);
  return graphic(nv, std::move(edges));
}

Polymatroid Polymatroid::from_rank_table(std::vector<std::string> labels,
                                         std::vector<int> table) {
  if (labels.size() > 16)
    fail(Err::GroundTooLarge, "rank tables support at most 16 elements");
  if (table.size() != (size_t(1) << labels.size()))
    fail(Err::ParseError, "rank table must list all 2^n subsets");
  for (int r : table)
    if (r < 0) fail(Err::RankAxiomViolation, "negative rank in table");
  return Polymatroid(std::make_shared<TableBk>(std::move(table)),
                     std::move(labels), Validation::full);
}

Polymatroid Polymatroid::from_flat_list(
    std::vector<std::string> labels,
    std::vector<std::pair<Mask, int>> flats) {
  GroundSet g(labels);  // for error messages before the object exists
  std::sort(flats.begin(), flats.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second < b.second
                                          : a.first < b.first;
            });
  if (flats.empty() || flats.front().first != 0 || flats.front().second != 0)
    fail(Err::NotALattice, "flat list must contain the empty set with rank 0");
  bool has_top = false;
  for (const auto& [m, r] : flats) {
    if (m == g.full()) has_top = true;
    if (m != 0 && r <= 0)
      fail(Err::NotALattice, "nonempty flat with nonpositive rank");
  }
  if (!has_top)
    fail(Err::NotALattice, "flat list must contain the full ground set");
  for (size_t i = 0; i < flats.size(); ++i)
    for (size_t j = i + 1; j < flats.size(); ++j) {
      if (flats[i].first == flats[j].first)
        fail(Err::NotALattice, "duplicate flat " + g.set_str(flats[i].first));
      Mask meet = flats[i].first & flats[j].first;
      bool found = false;
      for (const auto& [m, r] : flats) found |= (m == meet);
      if (!found)
        fail(Err::NotALattice,
             "intersection " + g.set_str(meet) + " of listed flats missing");
    }
  Polymatroid P(std::make_shared<FlatListBk>(flats), std::move(labels),
                Validation::full);
  // each listed set must actually be closed for the induced rank function
  for (const auto& [m, r] : flats)
    if (P.closure(m) != m)
      fail(Err::NotALattice, "listed set " + g.set_str(m) + " is not a flat");
  return P;
}

Polymatroid Polymatroid::restriction(Mask S) const {
  if (S & ~full()) fail(Err::InternalError, "restriction outside ground set");
  std::vector<int> elems;
  std::vector<std::string> labels;
  for (int i = 0; i < n(); ++i)
    if (S & bit(i)) {
      elems.push_back(i);
      labels.push_back(ground_->label(i));
    }
  return Polymatroid(
      std::make_shared<MinorBk>(*this, std::move(elems), Mask(0)),
      std::move(labels), Validation::none);
}

Polymatroid Polymatroid::contraction(Mask F) const {
  if (F & ~full()) fail(Err::InternalError, "contraction outside ground set");
  std::vector<int> elems;
  std::vector<std::string> labels;
  for (int i = 0; i < n(); ++i)
    if (!(F & bit(i))) {
      elems.push_back(i);
      labels.push_back(ground_->label(i));
    }
  // contracting a non-flat creates loops; the loopless check diagnoses it
  return Polymatroid(std::make_shared<MinorBk>(*this, std::move(elems), F),
                     std::move(labels), Validation::loopless_only);
}

Polymatroid Polymatroid::direct_sum(const Polymatroid& other) const {
  std::vector<std::string> labels = ground_->labels();
  for (const auto& l : other.ground().labels()) labels.push_back(l);
  return Polymatroid(std::make_shared<SumBk>(*this, other), std::move(labels),
                     Validation::none);
}

Polymatroid Polymatroid::principal_extension(Mask F,
                                             const std::string& label) const {
  std::vector<std::string> labels = ground_->labels();
  labels.push_back(label);
  return Polymatroid(std::make_shared<PrincipalExtBk>(*this, F),
                     std::move(labels),
                     n() + 1 <= 12 ? Validation::full
                                   : Validation::loopless_only);
}

Polymatroid Polymatroid::free_extension(const std::string& label) const {
  return principal_extension(full(), label);
}

Polymatroid Polymatroid::add_u_block(
    const std::vector<std::string>& labels) const {
  if (labels.size() < 2) fail(Err::ParseError, "u-block needs >= 2 elements");
  Polymatroid M = *this;
  Mask span = 0;
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    M = M.free_extension(labels[i]);
    span |= bit(M.n() - 1);
  }
  return M.principal_extension(span, labels.back());
}

// ----------------------------------------------------------------- queries

Mask Polymatroid::closure(Mask A) const {
  // one pass is enough: by submodularity, elements that individually keep
  // the rank keep it jointly
  int r = rank(A);
  Mask cl = A;
  for (int i = 0; i < n(); ++i)
    if (!(A & bit(i)) && rank(A | bit(i)) == r) cl |= bit(i);
  return cl;
}

bool Polymatroid::is_connected() const {
  if (n() <= 1) return true;
  int rE = rank_of_ground();
  Mask half = Mask(1) << (n() - 1);
  // enumerate bipartitions by the part containing element n-1
  for (Mask rest = 1; rest < half; ++rest) {
    Mask A = rest;  // nonempty, proper, missing the last element
    if (rank(A) + rank(full() & ~A) == rE) return false;
  }
  return true;
}

}  // namespace chowcalc
