// Finite idempotent algebras given by operation tables, clone slices, and
// satisfaction of identity systems by witness search.
#ifndef LINCOND_ALGEBRA_H_
#define LINCOND_ALGEBRA_H_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "lincond/partition.h"
#include "lincond/term.h"

namespace lincond {

// Values of a k-ary operation on {0..m-1}, row-major over argument tuples
// with the last argument varying fastest.
class OperationTable {
 public:
  OperationTable(int size, int arity, std::vector<std::uint8_t> values);
  static OperationTable projection(int size, int arity, int index);

  int size() const { return size_; }
  int arity() const { return arity_; }
  int num_points() const { return static_cast<int>(values_.size()); }
  const std::vector<std::uint8_t>& values() const { return values_; }

  int at(int point) const { return values_[point]; }
  int operator()(std::initializer_list<int> args) const;
  int operator()(const int* args) const;
  // Argument tuple of a point index.
  std::vector<int> point(int index) const;

  bool is_idempotent() const;
  // Index of the projection this table equals, or -1.
  int projection_index() const;
  // f(x,x,y) = f(x,y,x) = f(y,x,x) = x for all x, y (ternary only).
  bool is_majority() const;
  // "pi1", "majority", "meet(x,z)" on two elements, otherwise the table.
  std::string label() const;

  friend auto operator<=>(const OperationTable&, const OperationTable&) = default;

 private:
  int size_;
  int arity_;
  std::vector<std::uint8_t> values_;
};

struct NamedOp {
  std::string name;
  OperationTable table;
};

class FiniteAlgebra {
 public:
  // Throws std::invalid_argument unless size >= 2 and every table matches
  // the size and is idempotent.
  FiniteAlgebra(std::string name, int size, std::vector<NamedOp> ops);

  const std::string& name() const { return name_; }
  int size() const { return size_; }
  const std::vector<NamedOp>& ops() const { return ops_; }

 private:
  std::string name_;
  int size_;
  std::vector<NamedOp> ops_;
};

// Two-element meet semilattice; 0 is absorbing.
FiniteAlgebra semilattice_b();
// One ternary op: the majority value when two arguments agree, otherwise
// the first argument.
FiniteAlgebra majority_a(int m = 3);
// All ternary ops ax+by+cz over Z_n with a+b+c = 1.
FiniteAlgebra reduct_algebra(int n);

// Term operations of one arity: projections first, then the rest in
// lexicographic table order.
struct CloneSlice {
  int arity = 0;
  std::vector<OperationTable> members;

  bool contains(const OperationTable& op) const;
};

class CloneCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CloneSlice clone_slice(const FiniteAlgebra& algebra, int arity, std::size_t cap = 100000);

using Witness = std::map<Symbol, OperationTable>;

struct SatVerdict {
  bool satisfiable = false;
  Witness witness;
};

// Value of a term under a witness for a variable assignment.
int evaluate(const TermRef& t, const Witness& witness, const int* assignment);
// Checks every identity at every assignment of the system's variables.
bool satisfies(const System& system, const Witness& witness, int size);

// Witness search over the clone slices of the symbol arities. Symbols
// declared but unused get the first slice member.
SatVerdict holds_in(const System& system, const FiniteAlgebra& algebra);
// Same search over precomputed slices (one per arity that occurs).
SatVerdict holds_in(const System& system, int size, const std::vector<CloneSlice>& slices);

// Terms share a block iff they agree under the witness at every assignment.
Partition induced_partition(const Witness& witness, std::shared_ptr<const TermUniverse> universe,
                            int size);

// For the single ternary op f: g(x,y,w,z) = f(x,y,f(x,w,z)) is a weak
// near-unanimity operation and g(y,x,x,x) = f(y,x,x).
bool check_wnu_bridge(const FiniteAlgebra& algebra);

nlohmann::json algebra_to_json(const FiniteAlgebra& algebra);
nlohmann::json slice_to_json(const CloneSlice& slice, int size);

}  // namespace lincond

#endif  // LINCOND_ALGEBRA_H_
