#include "lincond/partition.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lincond {

TermUniverse::TermUniverse(Signature signature, int num_vars)
    : signature_(signature), num_vars_(num_vars) {
  if (num_vars < 2 || num_vars > kMaxVars) throw std::invalid_argument("num_vars must be 2 or 3");
  for (int v = 0; v < num_vars; ++v) terms_.push_back(TermRef::var(v));
  for (Symbol s : signature.symbols()) {
    int k = arity(s);
    int total = 1;
    for (int i = 0; i < k; ++i) total *= num_vars;
    for (int code = 0; code < total; ++code) {
      std::vector<int> pattern(k);
      for (int i = k - 1, c = code; i >= 0; --i, c /= num_vars) pattern[i] = c % num_vars;
      TermRef t = TermRef::app(s, pattern);
      if (!t.is_var()) terms_.push_back(t);
    }
  }
}

int TermUniverse::index_of(const TermRef& t) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it == terms_.end() || *it != t) return -1;
  return static_cast<int>(it - terms_.begin());
}

UnionFind::UnionFind(int n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

Partition::Partition(std::shared_ptr<const TermUniverse> universe,
                     std::vector<std::vector<int>> blocks)
    : universe_(std::move(universe)), blocks_(std::move(blocks)) {
  const int n = universe_->size();
  label_.assign(n, -1);
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (int i = 0; i < num_blocks(); ++i) {
    for (int e : blocks_[i]) {
      if (e < 0 || e >= n || label_[e] != -1) throw std::invalid_argument("blocks are not a partition");
      label_[e] = i;
    }
  }
  if (std::find(label_.begin(), label_.end(), -1) != label_.end()) {
    throw std::invalid_argument("blocks do not cover the universe");
  }
}

Partition Partition::discrete(std::shared_ptr<const TermUniverse> universe) {
  std::vector<int> labels(universe->size());
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(std::move(universe), labels);
}

Partition Partition::from_labels(std::shared_ptr<const TermUniverse> universe,
                                 const std::vector<int>& labels) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    int l = labels[i];
    if (l >= static_cast<int>(slot.size())) slot.resize(l + 1, -1);
    if (slot[l] < 0) {
      slot[l] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[l]].push_back(i);
  }
  return Partition(std::move(universe), std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& b : blocks_) {
    for (int e : b) {
      if (!coarser.same_block(b[0], e)) return false;
    }
  }
  return true;
}

System Partition::to_system() const {
  System out({}, universe_->num_vars(), universe_->signature());
  for (const auto& b : blocks_) {
    for (std::size_t i = 1; i < b.size(); ++i) out.add((*universe_)[b[i - 1]], (*universe_)[b[i]]);
  }
  return out;
}

TermRef mirror_term(const TermRef& t) {
  auto swap01 = [](int v) { return v == 0 ? 1 : v == 1 ? 0 : v; };
  if (t.is_var()) return TermRef::var(swap01(t.variable()));
  std::vector<int> args(t.size());
  for (int i = 0; i < t.size(); ++i) args[i] = swap01(t.arg(i));
  return TermRef::app(t.symbol(), args);
}

Partition Partition::mirror() const {
  std::vector<std::vector<int>> blocks;
  for (const auto& b : blocks_) {
    std::vector<int> img;
    for (int e : b) img.push_back(universe_->index_of(mirror_term((*universe_)[e])));
    blocks.push_back(std::move(img));
  }
  return Partition(universe_, std::move(blocks));
}

Partition partition_closure(const System& system, std::shared_ptr<const TermUniverse> universe) {
  UnionFind uf(universe->size());
  for (const Identity& id : system.identities()) {
    int a = universe->index_of(id.left());
    int b = universe->index_of(id.right());
    if (a < 0 || b < 0) {
      throw std::invalid_argument("term outside universe: " + (a < 0 ? id.left() : id.right()).to_string());
    }
    uf.unite(a, b);
  }
  std::vector<int> labels(universe->size());
  for (int i = 0; i < universe->size(); ++i) labels[i] = uf.find(i);
  return Partition::from_labels(std::move(universe), labels);
}

System normal_form(const System& system) {
  std::vector<TermRef> terms = system.terms();
  auto index = [&](const TermRef& t) {
    return static_cast<int>(std::lower_bound(terms.begin(), terms.end(), t) - terms.begin());
  };
  UnionFind uf(static_cast<int>(terms.size()));
  for (const Identity& id : system.identities()) uf.unite(index(id.left()), index(id.right()));
  // Terms are sorted, so each root's members arrive in increasing order.
  std::vector<int> last(terms.size(), -1);
  System out({}, system.num_vars(), system.signature());
  for (int i = 0; i < static_cast<int>(terms.size()); ++i) {
    int r = uf.find(i);
    if (last[r] >= 0) out.add(terms[last[r]], terms[i]);
    last[r] = i;
  }
  return out;
}

std::uint64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit({});
    return;
  }
  std::vector<int> rgs(n, 0), prefix_max(n, 0);
  for (;;) {
    visit(rgs);
    int i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

void for_each_weakening(const Partition& p, const std::function<void(const Partition&)>& visit) {
  const auto& blocks = p.blocks();
  std::vector<std::vector<std::vector<int>>> splits(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for_each_set_partition(static_cast<int>(blocks[b].size()),
                           [&](const std::vector<int>& rgs) { splits[b].push_back(rgs); });
  }
  std::vector<std::size_t> choice(blocks.size(), 0);
  const int n = p.universe().size();
  for (;;) {
    bool refined = false;
    for (std::size_t c : choice) refined |= c != 0;
    if (refined) {
      std::vector<int> labels(n);
      int base = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& rgs = splits[b][choice[b]];
        int used = 0;
        for (std::size_t i = 0; i < rgs.size(); ++i) {
          labels[blocks[b][i]] = base + rgs[i];
          used = std::max(used, rgs[i] + 1);
        }
        base += used;
      }
      visit(Partition::from_labels(p.universe_ptr(), labels));
    }
    std::size_t b = blocks.size();
    while (b > 0) {
      --b;
      if (++choice[b] < splits[b].size()) break;
      choice[b] = 0;
      if (b == 0) return;
    }
    if (blocks.empty()) return;
  }
}

std::vector<Partition> weakenings(const Partition& p) {
  std::vector<Partition> out;
  for_each_weakening(p, [&](const Partition& w) { out.push_back(w); });
  return out;
}

}  // namespace lincond
