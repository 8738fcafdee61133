// The symmetry group acting on systems: renaming variables, permuting the
// argument positions of each symbol, and swapping p with q or t with s.
#ifndef LINCOND_SYMMETRY_H_
#define LINCOND_SYMMETRY_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lincond/term.h"

namespace lincond {

using Perm3 = std::array<std::uint8_t, 3>;

// Acts on a term s(a_0,..,a_{k-1}) by moving argument i to position
// arg_perm[s][i], renaming each variable v to var_perm[v], and then
// replacing s by its swap partner when the swap flag is set.
struct SymmetryElement {
  Perm3 var_perm{0, 1, 2};
  // Indexed by the source symbol. Binary symbols use the first two entries.
  std::array<Perm3, kNumSymbols> arg_perm{Perm3{0, 1, 2}, Perm3{0, 1, 2}, Perm3{0, 1, 2},
                                          Perm3{0, 1, 2}};
  bool swap_pq = false;
  bool swap_ts = false;

  static SymmetryElement identity() { return {}; }
  // x <-> y.
  static SymmetryElement mirror();

  Perm3& p_arg_perm() { return arg_perm[0]; }
  Perm3& q_arg_perm() { return arg_perm[1]; }

  Symbol image(Symbol s) const;
  TermRef apply(const TermRef& t) const;
  std::string to_string() const;

  friend bool operator==(const SymmetryElement&, const SymmetryElement&) = default;
};

// compose(g, h) acts as h followed by g.
SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h);
SymmetryElement inverse(const SymmetryElement& g);

System apply_symmetry(const System& system, const SymmetryElement& g);

// All elements for a signature and variable count: S_n on variables, S_k on
// the arguments of each declared symbol, and the swaps whose both partners
// are declared. Deterministic order, identity first.
const std::vector<SymmetryElement>& symmetry_group(Signature signature, int num_vars);

// Least normal form over the orbit of the system under its group, and an
// element g with normal_form(apply_symmetry(system, g)) == canonical.
std::pair<System, SymmetryElement> canonicalize(const System& system);
System canonical_form(const System& system);

// Total order used for the orbit minimum.
bool system_less(const System& a, const System& b);

}  // namespace lincond

#endif  // LINCOND_SYMMETRY_H_
