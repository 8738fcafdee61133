#include "lincond/symmetry.h"

#include <algorithm>
#include <map>
#include <mutex>

#include "lincond/partition.h"

namespace lincond {
namespace {

std::vector<Perm3> permutations(int k) {
  std::vector<Perm3> out;
  Perm3 p{0, 1, 2};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + k));
  return out;
}

Symbol partner(Symbol s) {
  switch (s) {
    case Symbol::P: return Symbol::Q;
    case Symbol::Q: return Symbol::P;
    case Symbol::T: return Symbol::S;
    case Symbol::S: return Symbol::T;
  }
  return s;
}

}  // namespace

SymmetryElement SymmetryElement::mirror() {
  SymmetryElement g;
  g.var_perm = {1, 0, 2};
  return g;
}

Symbol SymmetryElement::image(Symbol s) const {
  bool ternary = arity(s) == 3;
  return (ternary ? swap_pq : swap_ts) ? partner(s) : s;
}

TermRef SymmetryElement::apply(const TermRef& t) const {
  if (t.is_var()) return TermRef::var(var_perm[t.variable()]);
  const Perm3& perm = arg_perm[static_cast<int>(t.symbol())];
  int args[3] = {0, 0, 0};
  for (int i = 0; i < t.size(); ++i) args[perm[i]] = var_perm[t.arg(i)];
  return TermRef::app(image(t.symbol()), std::span<const int>(args, t.size()));
}

std::string SymmetryElement::to_string() const {
  auto perm_str = [](const Perm3& p, int k) {
    std::string s;
    for (int i = 0; i < k; ++i) s += static_cast<char>('1' + p[i]);
    return s;
  };
  std::string out = "vars:";
  for (int v = 0; v < kMaxVars; ++v) out += var_char(var_perm[v]);
  for (int s = 0; s < kNumSymbols; ++s) {
    Symbol sym = static_cast<Symbol>(s);
    out += ' ';
    out += symbol_char(sym);
    out += ':' + perm_str(arg_perm[s], arity(sym));
  }
  if (swap_pq) out += " swap_pq";
  if (swap_ts) out += " swap_ts";
  return out;
}

SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h) {
  SymmetryElement out;
  for (int v = 0; v < kMaxVars; ++v) out.var_perm[v] = g.var_perm[h.var_perm[v]];
  for (int s = 0; s < kNumSymbols; ++s) {
    int mid = static_cast<int>(h.image(static_cast<Symbol>(s)));
    for (int i = 0; i < 3; ++i) out.arg_perm[s][i] = g.arg_perm[mid][h.arg_perm[s][i]];
  }
  out.swap_pq = g.swap_pq != h.swap_pq;
  out.swap_ts = g.swap_ts != h.swap_ts;
  return out;
}

SymmetryElement inverse(const SymmetryElement& g) {
  SymmetryElement out;
  for (int v = 0; v < kMaxVars; ++v) out.var_perm[g.var_perm[v]] = static_cast<std::uint8_t>(v);
  for (int s = 0; s < kNumSymbols; ++s) {
    int target = static_cast<int>(g.image(static_cast<Symbol>(s)));
    for (int i = 0; i < 3; ++i) out.arg_perm[target][g.arg_perm[s][i]] = static_cast<std::uint8_t>(i);
  }
  out.swap_pq = g.swap_pq;
  out.swap_ts = g.swap_ts;
  return out;
}

System apply_symmetry(const System& system, const SymmetryElement& g) {
  System out({}, system.num_vars(), system.signature());
  for (const Identity& id : system.identities()) out.add(g.apply(id.left()), g.apply(id.right()));
  return out.with_context(system.num_vars(), system.signature());
}

const std::vector<SymmetryElement>& symmetry_group(Signature signature, int num_vars) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::vector<SymmetryElement>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(signature.to_string(), num_vars);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<SymmetryElement> group{SymmetryElement{}};
  auto extend = [&](auto&& make_variants) {
    std::vector<SymmetryElement> next;
    for (const SymmetryElement& g : group) make_variants(g, next);
    group = std::move(next);
  };
  extend([&](const SymmetryElement& g, std::vector<SymmetryElement>& next) {
    for (const Perm3& p : permutations(num_vars)) {
      SymmetryElement e = g;
      e.var_perm = p;
      next.push_back(e);
    }
  });
  for (Symbol s : signature.symbols()) {
    extend([&](const SymmetryElement& g, std::vector<SymmetryElement>& next) {
      for (const Perm3& p : permutations(arity(s))) {
        SymmetryElement e = g;
        e.arg_perm[static_cast<int>(s)] = p;
        next.push_back(e);
      }
    });
  }
  auto add_swap = [&](bool SymmetryElement::*flag) {
    extend([&](const SymmetryElement& g, std::vector<SymmetryElement>& next) {
      next.push_back(g);
      SymmetryElement e = g;
      e.*flag = true;
      next.push_back(e);
    });
  };
  if (signature.contains(Symbol::P) && signature.contains(Symbol::Q)) add_swap(&SymmetryElement::swap_pq);
  if (signature.contains(Symbol::T) && signature.contains(Symbol::S)) add_swap(&SymmetryElement::swap_ts);
  return cache.emplace(key, std::move(group)).first->second;
}

bool system_less(const System& a, const System& b) { return a.identities() < b.identities(); }

std::pair<System, SymmetryElement> canonicalize(const System& system) {
  const auto& group = symmetry_group(system.signature(), system.num_vars());
  System best = normal_form(system);
  SymmetryElement best_g;
  for (const SymmetryElement& g : group) {
    System candidate = normal_form(apply_symmetry(system, g));
    if (system_less(candidate, best)) {
      best = std::move(candidate);
      best_g = g;
    }
  }
  return {best.with_context(system.num_vars(), system.signature()), best_g};
}

System canonical_form(const System& system) { return canonicalize(system).first; }

}  // namespace lincond
