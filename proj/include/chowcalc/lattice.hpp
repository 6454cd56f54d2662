// Lattice of flats of a loopless polymatroid.  Flats are enumerated by a
// closure BFS from the empty set and sorted by (rank, mask); that order is
// the canonical flat id used everywhere downstream (id 0 = empty set, last
// id = ground set).  Meets are intersections, joins are closures of unions.
// Characteristic polynomials of intervals are computed by a local Möbius
// recursion and memoized per (bottom, top) pair; the Möbius value map itself
// is deliberately local to each call (a global one grows far too large on
// big lattices).

#pragma once

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "chowcalc/poly.hpp"
#include "chowcalc/polymatroid.hpp"

namespace chowcalc {

class FlatLattice {
public:
  // Throws LatticeTooLarge past `cap` flats (0 = use the default, which is
  // 2,000,000 or the CHOWCALC_FLAT_CAP environment variable).
  explicit FlatLattice(Polymatroid M, std::size_t cap = 0);

  static std::size_t flat_cap();

  const Polymatroid& polymatroid() const { return M_; }
  int size() const { return static_cast<int>(flats_.size()); }
  int bottom() const { return 0; }
  int top() const { return size() - 1; }
  Mask flat(int id) const { return flats_[id]; }
  int rank(int id) const { return rank_[id]; }
  int id_of(Mask F) const;  // throws UnknownFlat
  bool has_flat(Mask F) const { return id_map_.count(F) != 0; }

  bool leq(int a, int b) const { return (flats_[a] & ~flats_[b]) == 0; }
  int join(int a, int b) const;
  int meet(int a, int b) const;

  // ids of flats X with b <= X <= t, ascending (so ascending in rank)
  std::vector<int> interval(int b, int t) const;
  std::size_t interval_size(int b, int t) const { return interval(b, t).size(); }

  IntPoly characteristic(int b, int t) const;          // memoized
  IntPoly reduced_characteristic(int b, int t) const;  // chi/(x-1); 1 on b==t
  Int mobius(int b, int t) const;

  // Connectedness of the restriction to flat(id), via the rank-additive
  // bipartition test; cross-checked against a direct lattice-product
  // decomposition search on intervals of size <= 4096 (disagreement would be
  // an internal error).  Cached.
  bool flat_connected(int id) const;
  std::vector<int> connected_flats() const;  // nonempty connected flats

private:
  IntPoly characteristic_uncached(int b, int t) const;
  bool product_decomposable(int t) const;

  Polymatroid M_;
  std::vector<Mask> flats_;
  std::vector<int> rank_;
  std::vector<int> rank_first_;  // first id of each rank value
  std::unordered_map<Mask, int> id_map_;

  mutable std::shared_mutex chi_mx_;
  mutable std::unordered_map<std::uint64_t, IntPoly> chi_memo_;
  mutable std::unordered_map<std::uint64_t, IntPoly> chibar_memo_;
  mutable std::mutex conn_mx_;
  mutable std::vector<signed char> connected_;  // -1 unknown / 0 / 1
};

}  // namespace chowcalc
