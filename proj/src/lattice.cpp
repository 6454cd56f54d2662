#include "chowcalc/lattice.hpp"

#include <algorithm>
#include <cstdlib>

#include "chowcalc/errors.hpp"

namespace chowcalc {

namespace {
inline std::uint64_t pair_key(int b, int t) {
  return (std::uint64_t(std::uint32_t(b)) << 32) | std::uint32_t(t);
}
}  // namespace

std::size_t FlatLattice::flat_cap() {
  if (const char* env = std::getenv("CHOWCALC_FLAT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    fail(Err::ParseError, "CHOWCALC_FLAT_CAP is not a positive integer");
  }
  return 2'000'000;
}

FlatLattice::FlatLattice(Polymatroid M, std::size_t cap) : M_(std::move(M)) {
  if (cap == 0) cap = flat_cap();
  Mask start = M_.closure(0);
  if (start != 0)
    fail(Err::NotLoopless, "closure of the empty set is nonempty");
  std::vector<Mask> queue{0};
  std::unordered_map<Mask, char> seen{{Mask(0), 1}};
  for (std::size_t ix = 0; ix < queue.size(); ++ix) {
    Mask F = queue[ix];
    for (int e = 0; e < M_.n(); ++e) {
      if (F & bit(e)) continue;
      Mask G = M_.closure(F | bit(e));
      if (seen.emplace(G, 1).second) {
        queue.push_back(G);
        if (queue.size() > cap)
          fail(Err::LatticeTooLarge,
               "more than " + std::to_string(cap) +
                   " flats; raise CHOWCALC_FLAT_CAP if this is intended");
      }
    }
  }
  flats_ = std::move(queue);
  rank_.resize(flats_.size());
  std::vector<std::pair<std::pair<int, Mask>, Mask>> keyed;
  keyed.reserve(flats_.size());
  for (Mask f : flats_) keyed.push_back({{M_.rank(f), f}, f});
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    flats_[i] = keyed[i].second;
    rank_[i] = keyed[i].first.first;
    id_map_[flats_[i]] = static_cast<int>(i);
  }
  int maxrank = rank_.back();
  rank_first_.assign(maxrank + 2, size());
  for (int i = size() - 1; i >= 0; --i) rank_first_[rank_[i]] = i;
  for (int r = maxrank; r >= 0; --r)
    rank_first_[r] = std::min(rank_first_[r], rank_first_[r + 1]);
  connected_.assign(flats_.size(), -1);
}

int FlatLattice::id_of(Mask F) const {
  auto it = id_map_.find(F);
  if (it == id_map_.end())
    fail(Err::UnknownFlat, "subset " + M_.ground().set_str(F) +
                               " is not a flat of this polymatroid");
  return it->second;
}

int FlatLattice::join(int a, int b) const {
  return id_map_.at(M_.closure(flats_[a] | flats_[b]));
}

int FlatLattice::meet(int a, int b) const {
  return id_map_.at(flats_[a] & flats_[b]);
}

std::vector<int> FlatLattice::interval(int b, int t) const {
  std::vector<int> out;
  if (!leq(b, t)) return out;
  Mask bm = flats_[b], tm = flats_[t];
  Mask diff = tm & ~bm;
  int k = popcount(diff);
  std::size_t span = std::size_t(rank_first_[rank_[t] + 1]) - rank_first_[rank_[b]];
  if (k <= 24 && (std::size_t(1) << k) <= span) {
    // submask enumeration of the difference
    Mask sub = diff;
    while (true) {
      auto it = id_map_.find(bm | sub);
      if (it != id_map_.end()) out.push_back(it->second);
      if (sub == 0) break;
      sub = (sub - 1) & diff;
    }
    std::sort(out.begin(), out.end());
  } else {
    for (int id = rank_first_[rank_[b]]; id < rank_first_[rank_[t] + 1]; ++id)
      if (leq(b, id) && leq(id, t)) out.push_back(id);
  }
  return out;
}

IntPoly FlatLattice::characteristic_uncached(int b, int t) const {
  Mask bm = flats_[b];
  std::vector<int> ids = interval(b, t);
  std::unordered_map<Mask, Int> mu;
  mu.reserve(ids.size() * 2);
  std::vector<std::pair<Mask, const Int*>> done;  // insertion = rank order
  done.reserve(ids.size());
  int rt = rank_[t], rb = rank_[b];
  std::vector<Int> coeffs(rt - rb + 1, Int(0));
  for (int X : ids) {
    Mask xm = flats_[X];
    Int m;
    if (X == b) {
      m = 1;
    } else {
      m = 0;
      Mask diff = xm & ~bm;
      int k = popcount(diff);
      if (k <= 24 && (std::size_t(1) << k) <= 2 * done.size() + 2) {
        Mask sub = (diff - 1) & diff;  // proper submasks only
        while (true) {
          auto it = mu.find(bm | sub);
          if (it != mu.end()) m -= it->second;
          if (sub == 0) break;
          sub = (sub - 1) & diff;
        }
      } else {
        for (const auto& [ym, val] : done)
          if ((ym & ~xm) == 0) m -= *val;
      }
    }
    auto [it, fresh] = mu.emplace(xm, std::move(m));
    (void)fresh;
    done.emplace_back(xm, &it->second);
    coeffs[rt - rank_[X]] += it->second;
  }
  return IntPoly(std::move(coeffs));
}

IntPoly FlatLattice::characteristic(int b, int t) const {
  if (!leq(b, t))
    fail(Err::InternalError, "characteristic polynomial of an empty interval");
  std::uint64_t key = pair_key(b, t);
  {
    std::shared_lock lk(chi_mx_);
    auto it = chi_memo_.find(key);
    if (it != chi_memo_.end()) return it->second;
  }
  IntPoly chi = characteristic_uncached(b, t);
  std::unique_lock lk(chi_mx_);
  return chi_memo_.emplace(key, std::move(chi)).first->second;
}

IntPoly FlatLattice::reduced_characteristic(int b, int t) const {
  if (b == t) return IntPoly::constant(1);
  std::uint64_t key = pair_key(b, t);
  {
    std::shared_lock lk(chi_mx_);
    auto it = chibar_memo_.find(key);
    if (it != chibar_memo_.end()) return it->second;
  }
  IntPoly chi = characteristic(b, t);
  if (chi.at_one() != 0)
    fail(Err::InternalError, "characteristic polynomial not divisible by x-1");
  IntPoly red = exact_divide(chi, IntPoly(std::vector<Int>{-1, 1}));
  std::unique_lock lk(chi_mx_);
  return chibar_memo_.emplace(key, std::move(red)).first->second;
}

Int FlatLattice::mobius(int b, int t) const {
  return characteristic(b, t).coeff(0);
}

// Search for a direct-product decomposition of the interval [0, t]: a pair of
// flats X, Y strictly between with X ^ Y = 0, X v Y = t, multiplicative
// interval sizes, and every Z in the interval splitting as (Z^X) v (Z^Y).
// Both the join map and Z -> (Z^X, Z^Y) are monotone, so those conditions
// pin down an order isomorphism with the product.
bool FlatLattice::product_decomposable(int t) const {
  std::vector<int> ids = interval(0, t);
  std::size_t total = ids.size();
  for (std::size_t i = 1; i + 1 < ids.size(); ++i) {
    int X = ids[i];
    for (std::size_t j = i + 1; j + 1 < ids.size(); ++j) {
      int Y = ids[j];
      if ((flats_[X] & flats_[Y]) != 0) continue;
      if (join(X, Y) != t) continue;
      if (interval_size(0, X) * interval_size(0, Y) != total) continue;
      bool ok = true;
      for (int Z : ids) {
        int zx = meet(Z, X), zy = meet(Z, Y);
        if (join(zx, zy) != Z) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

bool FlatLattice::flat_connected(int id) const {
  {
    std::lock_guard lk(conn_mx_);
    if (connected_[id] >= 0) return connected_[id] != 0;
  }
  bool bip = M_.restriction(flats_[id]).is_connected();
  if (rank_[id] > 0 && interval_size(0, id) <= 4096) {
    bool prod_split = product_decomposable(id);
    if (prod_split == bip)
      fail(Err::InternalError,
           "connectivity tests disagree on flat " +
               M_.ground().set_str(flats_[id]));
  }
  std::lock_guard lk(conn_mx_);
  connected_[id] = bip ? 1 : 0;
  return bip;
}

std::vector<int> FlatLattice::connected_flats() const {
  std::vector<int> out;
  for (int id = 1; id < size(); ++id)
    if (flat_connected(id)) out.push_back(id);
  return out;
}

}  // namespace chowcalc
