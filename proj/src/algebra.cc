#include "lincond/algebra.h"

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace lincond {
namespace {

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

struct TableHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(v.data()), v.size()));
  }
};

}  // namespace

OperationTable::OperationTable(int size, int arity, std::vector<std::uint8_t> values)
    : size_(size), arity_(arity), values_(std::move(values)) {
  if (size < 1 || size > 255 || arity < 1 || arity > 4) throw std::invalid_argument("bad table shape");
  if (static_cast<int>(values_.size()) != ipow(size, arity)) {
    throw std::invalid_argument("table has wrong number of entries");
  }
  for (std::uint8_t v : values_) {
    if (v >= size) throw std::invalid_argument("table value out of range");
  }
}

OperationTable OperationTable::projection(int size, int arity, int index) {
  std::vector<std::uint8_t> values(ipow(size, arity));
  int stride = ipow(size, arity - 1 - index);
  for (std::size_t p = 0; p < values.size(); ++p) values[p] = static_cast<std::uint8_t>((p / stride) % size);
  return OperationTable(size, arity, std::move(values));
}

int OperationTable::operator()(const int* args) const {
  int idx = 0;
  for (int i = 0; i < arity_; ++i) idx = idx * size_ + args[i];
  return values_[idx];
}

int OperationTable::operator()(std::initializer_list<int> args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("wrong argument count");
  return (*this)(args.begin());
}

std::vector<int> OperationTable::point(int index) const {
  std::vector<int> args(arity_);
  for (int i = arity_ - 1; i >= 0; --i, index /= size_) args[i] = index % size_;
  return args;
}

bool OperationTable::is_idempotent() const {
  for (int a = 0; a < size_; ++a) {
    int idx = 0;
    for (int i = 0; i < arity_; ++i) idx = idx * size_ + a;
    if (values_[idx] != a) return false;
  }
  return true;
}

int OperationTable::projection_index() const {
  for (int i = 0; i < arity_; ++i) {
    if (*this == projection(size_, arity_, i)) return i;
  }
  return -1;
}

bool OperationTable::is_majority() const {
  if (arity_ != 3) return false;
  const OperationTable& f = *this;
  for (int x = 0; x < size_; ++x) {
    for (int y = 0; y < size_; ++y) {
      if (f({x, x, y}) != x || f({x, y, x}) != x || f({y, x, x}) != x) return false;
    }
  }
  return true;
}

std::string OperationTable::label() const {
  int proj = projection_index();
  if (proj >= 0) return "pi" + std::to_string(proj + 1);
  if (is_majority()) return "majority";
  if (size_ == 2) {
    // Meet of the variables in some subset.
    for (int mask = 1; mask < (1 << arity_); ++mask) {
      bool match = true;
      for (int p = 0; p < num_points() && match; ++p) {
        std::vector<int> args = point(p);
        int v = 1;
        for (int i = 0; i < arity_; ++i) {
          if (mask >> i & 1) v &= args[i];
        }
        match = v == values_[p];
      }
      if (match) {
        std::string out = "meet(";
        for (int i = 0, first = 1; i < arity_; ++i) {
          if (!(mask >> i & 1)) continue;
          if (!first) out += ',';
          out += "xyzw"[i];
          first = 0;
        }
        return out + ")";
      }
    }
  }
  std::string out = "table[";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out + "]";
}

FiniteAlgebra::FiniteAlgebra(std::string name, int size, std::vector<NamedOp> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  if (size < 2) throw std::invalid_argument("algebra needs at least two elements");
  for (const NamedOp& op : ops_) {
    if (op.table.size() != size) throw std::invalid_argument("table size does not match algebra");
    if (!op.table.is_idempotent()) throw std::invalid_argument("operation " + op.name + " is not idempotent");
  }
}

FiniteAlgebra semilattice_b() {
  return FiniteAlgebra("B", 2, {{"meet", OperationTable(2, 2, {0, 0, 0, 1})}});
}

FiniteAlgebra majority_a(int m) {
  if (m < 2) throw std::invalid_argument("majority_a needs m >= 2");
  std::vector<std::uint8_t> values;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        int v = (a == b || a == c) ? a : (b == c ? b : a);
        values.push_back(static_cast<std::uint8_t>(v));
      }
    }
  }
  return FiniteAlgebra("A" + std::to_string(m), m, {{"f", OperationTable(m, 3, std::move(values))}});
}

FiniteAlgebra reduct_algebra(int n) {
  if (n < 2) throw std::invalid_argument("reduct_algebra needs n >= 2");
  std::vector<NamedOp> ops;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int c = ((1 - a - b) % n + 2 * n) % n;
      std::vector<std::uint8_t> values;
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          for (int z = 0; z < n; ++z) values.push_back(static_cast<std::uint8_t>((a * x + b * y + c * z) % n));
        }
      }
      ops.push_back({std::to_string(a) + "x+" + std::to_string(b) + "y+" + std::to_string(c) + "z",
                     OperationTable(n, 3, std::move(values))});
    }
  }
  return FiniteAlgebra("Z" + std::to_string(n) + "-reduct", n, std::move(ops));
}

bool CloneSlice::contains(const OperationTable& op) const {
  return std::find(members.begin(), members.end(), op) != members.end();
}

CloneSlice clone_slice(const FiniteAlgebra& algebra, int arity, std::size_t cap) {
  if (arity < 1 || arity > 3) throw std::invalid_argument("clone slice arity must be 1, 2 or 3");
  const int m = algebra.size();
  const int points = ipow(m, arity);
  std::vector<std::vector<std::uint8_t>> all;
  std::unordered_set<std::vector<std::uint8_t>, TableHash> seen;
  for (int i = 0; i < arity; ++i) {
    auto v = OperationTable::projection(m, arity, i).values();
    if (seen.insert(v).second) all.push_back(std::move(v));
  }
  // Semi-naive fixed point: each round only composes tuples that contain a
  // member found in the previous round.
  std::size_t old_end = 0;
  std::vector<std::uint8_t> result(points);
  while (old_end < all.size()) {
    const std::size_t end = all.size();
    for (const NamedOp& op : algebra.ops()) {
      const OperationTable& g = op.table;
      const int r = g.arity();
      std::vector<std::size_t> idx(r, 0);
      for (;;) {
        bool fresh = false;
        for (std::size_t i : idx) fresh |= i >= old_end;
        if (fresh) {
          int args[4];
          for (int p = 0; p < points; ++p) {
            for (int i = 0; i < r; ++i) args[i] = all[idx[i]][p];
            result[p] = static_cast<std::uint8_t>(g(args));
          }
          if (seen.insert(result).second) {
            all.push_back(result);
            if (all.size() > cap) throw CloneCapExceeded("clone slice exceeds cap " + std::to_string(cap));
          }
        }
        int i = r - 1;
        while (i >= 0 && ++idx[i] == end) idx[i--] = 0;
        if (i < 0) break;
      }
    }
    old_end = end;
  }
  CloneSlice slice;
  slice.arity = arity;
  for (auto& v : all) slice.members.emplace_back(m, arity, std::move(v));
  std::sort(slice.members.begin() + arity, slice.members.end());
  return slice;
}

int evaluate(const TermRef& t, const Witness& witness, const int* assignment) {
  if (t.is_var()) return assignment[t.variable()];
  int args[3];
  for (int i = 0; i < t.size(); ++i) args[i] = assignment[t.arg(i)];
  return witness.at(t.symbol())(args);
}

namespace {

bool identity_holds(const Identity& id, const Witness& witness, int size, int num_vars) {
  int a[kMaxVars] = {0, 0, 0};
  const int total = ipow(size, num_vars);
  for (int code = 0; code < total; ++code) {
    for (int v = num_vars - 1, c = code; v >= 0; --v, c /= size) a[v] = c % size;
    if (evaluate(id.left(), witness, a) != evaluate(id.right(), witness, a)) return false;
  }
  return true;
}

const CloneSlice& slice_for(const std::vector<CloneSlice>& slices, int arity) {
  for (const CloneSlice& s : slices) {
    if (s.arity == arity) return s;
  }
  throw std::invalid_argument("no clone slice of arity " + std::to_string(arity));
}

}  // namespace

bool satisfies(const System& system, const Witness& witness, int size) {
  for (const Identity& id : system.identities()) {
    if (!identity_holds(id, witness, size, system.num_vars())) return false;
  }
  return true;
}

SatVerdict holds_in(const System& system, const FiniteAlgebra& algebra) {
  std::vector<CloneSlice> slices;
  std::vector<int> arities;
  for (Symbol s : system.signature().symbols()) {
    if (std::find(arities.begin(), arities.end(), arity(s)) == arities.end()) arities.push_back(arity(s));
  }
  for (int k : arities) slices.push_back(clone_slice(algebra, k));
  return holds_in(system, algebra.size(), slices);
}

SatVerdict holds_in(const System& system, int size, const std::vector<CloneSlice>& slices) {
  const std::vector<Symbol> symbols = system.signature().symbols();
  Signature used = system.used_symbols();
  std::vector<Symbol> search;
  for (Symbol s : symbols) {
    if (used.contains(s)) search.push_back(s);
  }
  // Each identity is checked at the depth where its last symbol is assigned.
  std::vector<std::vector<const Identity*>> at_depth(search.size() + 1);
  for (const Identity& id : system.identities()) {
    int depth = 0;
    for (const TermRef& t : {id.left(), id.right()}) {
      if (t.is_var()) continue;
      int pos = static_cast<int>(std::find(search.begin(), search.end(), t.symbol()) - search.begin());
      depth = std::max(depth, pos + 1);
    }
    at_depth[depth].push_back(&id);
  }
  SatVerdict verdict;
  Witness w;
  for (Symbol s : symbols) w.emplace(s, slice_for(slices, arity(s)).members.front());
  for (const Identity* id : at_depth[0]) {
    if (!identity_holds(*id, w, size, system.num_vars())) return verdict;
  }
  auto search_from = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == search.size()) return true;
    Symbol s = search[depth];
    for (const OperationTable& op : slice_for(slices, arity(s)).members) {
      w.insert_or_assign(s, op);
      bool ok = true;
      for (const Identity* id : at_depth[depth + 1]) {
        if (!identity_holds(*id, w, size, system.num_vars())) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, depth + 1)) return true;
    }
    return false;
  };
  if (search_from(search_from, 0)) {
    verdict.satisfiable = true;
    verdict.witness = w;
  }
  return verdict;
}

Partition induced_partition(const Witness& witness, std::shared_ptr<const TermUniverse> universe,
                            int size) {
  const int nv = universe->num_vars();
  const int total = ipow(size, nv);
  std::vector<std::vector<int>> profiles(universe->size(), std::vector<int>(total));
  int a[kMaxVars] = {0, 0, 0};
  for (int code = 0; code < total; ++code) {
    for (int v = nv - 1, c = code; v >= 0; --v, c /= size) a[v] = c % size;
    for (int i = 0; i < universe->size(); ++i) profiles[i][code] = evaluate((*universe)[i], witness, a);
  }
  std::map<std::vector<int>, int> label_of;
  std::vector<int> labels(universe->size());
  for (int i = 0; i < universe->size(); ++i) {
    labels[i] = label_of.emplace(profiles[i], static_cast<int>(label_of.size())).first->second;
  }
  return Partition::from_labels(std::move(universe), labels);
}

bool check_wnu_bridge(const FiniteAlgebra& algebra) {
  const OperationTable* f = nullptr;
  for (const NamedOp& op : algebra.ops()) {
    if (op.table.arity() == 3) f = &op.table;
  }
  if (!f) throw std::invalid_argument("algebra has no ternary operation");
  const int m = algebra.size();
  std::vector<std::uint8_t> values;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int w = 0; w < m; ++w) {
        for (int z = 0; z < m; ++z) values.push_back(static_cast<std::uint8_t>((*f)({x, y, (*f)({x, w, z})})));
      }
    }
  }
  OperationTable g(m, 4, std::move(values));
  if (!g.is_idempotent()) return false;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      int v = g({y, x, x, x});
      if (g({x, y, x, x}) != v || g({x, x, y, x}) != v || g({x, x, x, y}) != v) return false;
      if (v != (*f)({y, x, x})) return false;
    }
  }
  return true;
}

nlohmann::json algebra_to_json(const FiniteAlgebra& algebra) {
  nlohmann::json ops = nlohmann::json::array();
  for (const NamedOp& op : algebra.ops()) {
    ops.push_back({{"name", op.name}, {"arity", op.table.arity()}, {"table", op.table.values()}});
  }
  return {{"size", algebra.size()}, {"ops", ops}};
}

nlohmann::json slice_to_json(const CloneSlice& slice, int size) {
  nlohmann::json ops = nlohmann::json::array();
  for (const OperationTable& op : slice.members) {
    ops.push_back({{"name", op.label()}, {"arity", op.arity()}, {"table", op.values()}});
  }
  return {{"size", size}, {"arity", slice.arity}, {"count", slice.members.size()}, {"ops", ops}};
}

}  // namespace lincond
