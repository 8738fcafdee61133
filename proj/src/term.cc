#include "lincond/term.h"

#include <algorithm>
#include <stdexcept>

namespace lincond {

int arity(Symbol s) {
  return (s == Symbol::P || s == Symbol::Q) ? 3 : 2;
}

char symbol_char(Symbol s) {
  static constexpr char kNames[] = {'p', 'q', 't', 's'};
  return kNames[static_cast<int>(s)];
}

char var_char(int v) { return static_cast<char>('x' + v); }

std::vector<Symbol> Signature::symbols() const {
  std::vector<Symbol> out;
  for (int i = 0; i < kNumSymbols; ++i) {
    Symbol s = static_cast<Symbol>(i);
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::string Signature::to_string() const {
  std::string out = "{";
  for (Symbol s : symbols()) {
    if (out.size() > 1) out += ',';
    out += symbol_char(s);
  }
  return out + "}";
}

TermRef TermRef::var(int v) {
  if (v < 0 || v >= kMaxVars) throw std::invalid_argument("variable index out of range");
  TermRef t;
  t.args_[0] = static_cast<std::uint8_t>(v);
  return t;
}

TermRef TermRef::app(Symbol s, std::span<const int> pattern) {
  if (static_cast<int>(pattern.size()) != arity(s)) {
    throw std::invalid_argument(std::string("arity mismatch for ") + symbol_char(s));
  }
  for (int v : pattern) {
    if (v < 0 || v >= kMaxVars) throw std::invalid_argument("variable index out of range");
  }
  if (std::all_of(pattern.begin(), pattern.end(), [&](int v) { return v == pattern[0]; })) {
    return var(pattern[0]);
  }
  TermRef t;
  t.kind_ = 1;
  t.symbol_ = static_cast<std::uint8_t>(s);
  for (std::size_t i = 0; i < pattern.size(); ++i) t.args_[i] = static_cast<std::uint8_t>(pattern[i]);
  return t;
}

int TermRef::max_var() const {
  if (is_var()) return variable();
  int m = 0;
  for (int i = 0; i < size(); ++i) m = std::max(m, arg(i));
  return m;
}

std::string TermRef::to_string() const {
  if (is_var()) return std::string(1, var_char(variable()));
  std::string out(1, symbol_char(symbol()));
  out += '(';
  for (int i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += var_char(arg(i));
  }
  return out + ')';
}

Identity::Identity(TermRef a, TermRef b) : left_(a), right_(b) {
  if (a == b) throw std::invalid_argument("trivial identity " + a.to_string() + "=" + b.to_string());
  if (right_ < left_) std::swap(left_, right_);
}

std::string Identity::to_string() const {
  return left_.to_string() + "=" + right_.to_string();
}

System::System(std::set<Identity> identities, int num_vars, Signature signature)
    : identities_(std::move(identities)), num_vars_(num_vars), signature_(signature) {
  if (num_vars_ < 2 || num_vars_ > kMaxVars) throw std::invalid_argument("num_vars must be 2 or 3");
  if (used_vars() > num_vars_) throw std::invalid_argument("system uses undeclared variable");
  if (!signature_.includes(used_symbols())) throw std::invalid_argument("system uses undeclared symbol");
}

System::System(std::set<Identity> identities) : identities_(std::move(identities)) {
  num_vars_ = std::max(2, used_vars());
  signature_ = used_symbols();
}

void System::add(TermRef a, TermRef b) {
  if (a == b) return;
  identities_.insert(Identity(a, b));
  num_vars_ = std::max({num_vars_, a.max_var() + 1, b.max_var() + 1});
  if (!a.is_var()) signature_.insert(a.symbol());
  if (!b.is_var()) signature_.insert(b.symbol());
}

System System::with_context(int num_vars, Signature signature) const {
  return System(identities_, num_vars, signature);
}

std::vector<TermRef> System::terms() const {
  std::vector<TermRef> out;
  for (const Identity& id : identities_) {
    out.push_back(id.left());
    out.push_back(id.right());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Signature System::used_symbols() const {
  Signature sig;
  for (const Identity& id : identities_) {
    for (const TermRef& t : {id.left(), id.right()}) {
      if (!t.is_var()) sig.insert(t.symbol());
    }
  }
  return sig;
}

int System::used_vars() const {
  int n = 0;
  for (const Identity& id : identities_) {
    n = std::max({n, id.left().max_var() + 1, id.right().max_var() + 1});
  }
  return n;
}

System substitute_variable(const System& system, int from, int to) {
  auto rewrite = [&](const TermRef& t) {
    if (t.is_var()) return TermRef::var(t.variable() == from ? to : t.variable());
    std::vector<int> args(t.size());
    for (int i = 0; i < t.size(); ++i) args[i] = t.arg(i) == from ? to : t.arg(i);
    return TermRef::app(t.symbol(), args);
  };
  System out({}, system.num_vars(), system.signature());
  for (const Identity& id : system.identities()) out.add(rewrite(id.left()), rewrite(id.right()));
  return out;
}

}  // namespace lincond
