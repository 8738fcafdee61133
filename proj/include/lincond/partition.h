// Term universes, equivalence closure and refinement of partitions.
#ifndef LINCOND_PARTITION_H_
#define LINCOND_PARTITION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "lincond/term.h"

namespace lincond {

// All terms over a signature and a variable count: the variables, then for
// each symbol every non-constant pattern in lexicographic order.
class TermUniverse {
 public:
  TermUniverse(Signature signature, int num_vars);

  Signature signature() const { return signature_; }
  int num_vars() const { return num_vars_; }
  int size() const { return static_cast<int>(terms_.size()); }
  const TermRef& operator[](int i) const { return terms_[i]; }
  const std::vector<TermRef>& terms() const { return terms_; }
  // Index of t, or -1 when t is not in the universe.
  int index_of(const TermRef& t) const;

  friend bool operator==(const TermUniverse& a, const TermUniverse& b) {
    return a.signature_ == b.signature_ && a.num_vars_ == b.num_vars_;
  }

 private:
  Signature signature_;
  int num_vars_;
  std::vector<TermRef> terms_;
};

class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int a);
  bool unite(int a, int b);

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Blocks hold universe indices; each block is sorted and blocks are ordered
// by their least element.
class Partition {
 public:
  Partition(std::shared_ptr<const TermUniverse> universe, std::vector<std::vector<int>> blocks);
  static Partition discrete(std::shared_ptr<const TermUniverse> universe);
  // labels[i] names the block of element i; any labelling works.
  static Partition from_labels(std::shared_ptr<const TermUniverse> universe,
                               const std::vector<int>& labels);

  const TermUniverse& universe() const { return *universe_; }
  const std::shared_ptr<const TermUniverse>& universe_ptr() const { return universe_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_of(int element) const { return label_[element]; }
  bool same_block(int a, int b) const { return label_[a] == label_[b]; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  // True when every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;
  bool strictly_refines(const Partition& coarser) const {
    return refines(coarser) && num_blocks() > coarser.num_blocks();
  }
  // Each block as a chain of consecutive sorted elements.
  System to_system() const;
  // Image under renaming x <-> y (the universe must be closed under it).
  Partition mirror() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::shared_ptr<const TermUniverse> universe_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> label_;
};

// Smallest equivalence on the universe containing every identity of the
// system. Throws std::invalid_argument for terms outside the universe.
Partition partition_closure(const System& system, std::shared_ptr<const TermUniverse> universe);

// Chain normal form of the closure of the system over its own terms.
System normal_form(const System& system);

std::uint64_t bell_number(int n);

// Calls visit(rgs) for every restricted growth string of length n, i.e.
// every set partition of {0..n-1}, in lexicographic order.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& visit);

// Every partition strictly finer than p, in a deterministic order.
void for_each_weakening(const Partition& p, const std::function<void(const Partition&)>& visit);
std::vector<Partition> weakenings(const Partition& p);

// x <-> y on a term.
TermRef mirror_term(const TermRef& t);

}  // namespace lincond

#endif  // LINCOND_PARTITION_H_
