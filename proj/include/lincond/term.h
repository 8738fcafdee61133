// Linear terms, identities and systems over the symbols p, q (ternary) and
// t, s (binary) with variables x, y, z.
#ifndef LINCOND_TERM_H_
#define LINCOND_TERM_H_

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lincond {

enum class Symbol : std::uint8_t { P = 0, Q = 1, T = 2, S = 3 };

inline constexpr int kNumSymbols = 4;
inline constexpr int kMaxVars = 3;

int arity(Symbol s);
char symbol_char(Symbol s);
char var_char(int v);

// Bit set over Symbol.
class Signature {
 public:
  constexpr Signature() = default;
  constexpr Signature(std::initializer_list<Symbol> symbols) {
    for (Symbol s : symbols) bits_ |= bit(s);
  }

  bool contains(Symbol s) const { return (bits_ & bit(s)) != 0; }
  void insert(Symbol s) { bits_ |= bit(s); }
  bool empty() const { return bits_ == 0; }
  bool includes(Signature o) const { return (o.bits_ & ~bits_) == 0; }
  std::vector<Symbol> symbols() const;
  std::string to_string() const;

  friend bool operator==(Signature, Signature) = default;

 private:
  static constexpr std::uint8_t bit(Symbol s) {
    return static_cast<std::uint8_t>(1u << static_cast<int>(s));
  }
  std::uint8_t bits_ = 0;
};

// A variable or a symbol applied to variables. Constant applications are
// collapsed to the variable at construction.
class TermRef {
 public:
  static TermRef var(int v);
  static TermRef app(Symbol s, std::span<const int> pattern);
  static TermRef app(Symbol s, std::initializer_list<int> pattern) {
    return app(s, std::span<const int>(pattern.begin(), pattern.size()));
  }

  bool is_var() const { return kind_ == 0; }
  int variable() const { return args_[0]; }
  Symbol symbol() const { return static_cast<Symbol>(symbol_); }
  int size() const { return is_var() ? 0 : arity(symbol()); }
  int arg(int i) const { return args_[i]; }
  // Largest variable index occurring in the term.
  int max_var() const;

  std::string to_string() const;

  // Variables first (by index), then applications by (symbol, pattern).
  friend auto operator<=>(const TermRef&, const TermRef&) = default;

 private:
  TermRef() = default;
  std::uint8_t kind_ = 0;
  std::uint8_t symbol_ = 0;
  std::array<std::uint8_t, 3> args_{};
};

// Unordered pair of distinct terms, stored with left < right.
class Identity {
 public:
  // Throws std::invalid_argument when a == b.
  Identity(TermRef a, TermRef b);

  const TermRef& left() const { return left_; }
  const TermRef& right() const { return right_; }
  std::string to_string() const;

  friend auto operator<=>(const Identity&, const Identity&) = default;

 private:
  TermRef left_;
  TermRef right_;
};

// A set of identities plus the declared context (variable count and
// signature). Equality compares the identities only.
class System {
 public:
  System() = default;
  System(std::set<Identity> identities, int num_vars, Signature signature);
  // Infers the smallest context that covers the identities.
  explicit System(std::set<Identity> identities);

  const std::set<Identity>& identities() const { return identities_; }
  int num_vars() const { return num_vars_; }
  Signature signature() const { return signature_; }
  bool empty() const { return identities_.empty(); }
  std::size_t size() const { return identities_.size(); }

  // Inserts a == b unless the two terms coincide; widens the context.
  void add(TermRef a, TermRef b);
  System with_context(int num_vars, Signature signature) const;
  // Every term occurring in the system, sorted and deduplicated.
  std::vector<TermRef> terms() const;
  Signature used_symbols() const;
  int used_vars() const;

  friend bool operator==(const System& a, const System& b) {
    return a.identities_ == b.identities_;
  }

 private:
  std::set<Identity> identities_;
  int num_vars_ = 2;
  Signature signature_;
};

// Replaces every occurrence of variable `from` by `to`, collapsing constant
// applications and dropping identities that become trivial.
System substitute_variable(const System& system, int from, int to);

}  // namespace lincond

#endif  // LINCOND_TERM_H_
