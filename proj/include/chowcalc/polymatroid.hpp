// Loopless polymatroids on ground sets of at most 64 labelled elements.
// A polymatroid is represented by its rank function; subsets of the ground
// set are uint64 bitmasks over element indices.  Minors (restriction,
// contraction), direct sums and Lovász principal/free extensions wrap the
// parent rank function; every object memoizes ranks behind an atomic cache so
// engines may query concurrently.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace chowcalc {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask bit(int i) { return Mask(1) << i; }

class GroundSet {
public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const {
    return size() == 64 ? ~Mask(0) : (Mask(1) << size()) - 1;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(const std::string& label) const;  // throws UnknownElement
  Mask mask_of(const std::vector<std::string>& labels) const;
  std::string set_str(Mask m) const;  // "{a,b,c}"

private:
  std::vector<std::string> labels_;
};

class RankBackend;

class Polymatroid {
public:
  // -- primitive constructions (validated)
  static Polymatroid uniform(int k, int n);  // labels "1".."n"
  static Polymatroid uniform(int k, std::vector<std::string> labels);
  static Polymatroid boolean(int n);
  // vertices are 1..nv; the element for edge (i,j), i<j, is labelled "i-j"
  static Polymatroid graphic(int nv,
                             std::vector<std::pair<int, int>> edges);
  static Polymatroid complete_graph(int nv);
  // table[m] = rank of subset with mask m; must have size 2^n
  static Polymatroid from_rank_table(std::vector<std::string> labels,
                                     std::vector<int> table);
  // the lattice-of-flats input form: rank(A) = rank of the smallest listed
  // flat containing A; the list must contain the empty set (rank 0) and the
  // ground set and be closed under intersection
  static Polymatroid from_flat_list(std::vector<std::string> labels,
                                    std::vector<std::pair<Mask, int>> flats);

  // -- derived constructions
  Polymatroid restriction(Mask S) const;  // ground = elements of S
  Polymatroid contraction(Mask F) const;  // ground = complement of F
  Polymatroid direct_sum(const Polymatroid& other) const;
  // Lovász principal extension on (the closure of) F; the free extension is
  // the special case F = ground set.
  Polymatroid principal_extension(Mask F, const std::string& label) const;
  Polymatroid free_extension(const std::string& label) const;
  // Attach a freely-placed U_{r-1,r} block: the first r-1 labels are added as
  // free extensions, the last principally on the flat the others span.
  Polymatroid add_u_block(const std::vector<std::string>& labels) const;

  // -- queries
  const GroundSet& ground() const { return *ground_; }
  int n() const { return ground_->size(); }
  Mask full() const { return ground_->full(); }
  int rank(Mask A) const;
  int rank_of_ground() const { return rank_full_; }
  bool is_matroid() const { return is_matroid_; }
  Mask closure(Mask A) const;
  // Connectedness in the rank-additive-bipartition sense: no proper nonempty
  // split E = A | B with rank(A) + rank(B) = rank(E).  Singletons are
  // trivially connected.
  bool is_connected() const;

  std::string describe() const;

private:
  enum class Validation { full, loopless_only, none };
  Polymatroid(std::shared_ptr<const RankBackend> backend,
              std::vector<std::string> labels, Validation level);
  void validate_axioms() const;   // throws RankAxiomViolation / NotLoopless
  void check_loopless() const;

  std::shared_ptr<const RankBackend> backend_;
  std::shared_ptr<const GroundSet> ground_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
  int rank_full_ = 0;
  bool is_matroid_ = false;
};

}  // namespace chowcalc
