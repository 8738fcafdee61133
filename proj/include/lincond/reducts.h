// Satisfaction of identity systems in full idempotent reducts of modules:
// per modulus by search, and over all finite rings through the Smith normal
// form of the coefficient equations.
#ifndef LINCOND_REDUCTS_H_
#define LINCOND_REDUCTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lincond/smith.h"
#include "lincond/term.h"

namespace lincond {

// c_0 x + c_1 y + ... ; modulus 0 means plain integers.
struct AffineTerm {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> coeffs;

  // "3x+3y", zero coefficients omitted, unit coefficients bare.
  std::string to_string() const;
  friend bool operator==(const AffineTerm&, const AffineTerm&) = default;
};

using AffineWitness = std::map<Symbol, AffineTerm>;

// A u = b over the unknown coefficients u: arity(s) unknowns per declared
// symbol s, concatenated in symbol order. Identity rows come first (one per
// identity and variable), then one row per symbol forcing the sum to 1.
struct LinearSystem {
  std::vector<Symbol> symbols;
  std::vector<int> offsets;
  int num_unknowns = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;
  std::vector<std::string> row_labels;
};

LinearSystem coefficient_system(const System& system);

// Lexicographically least solution modulo n, by depth-first search over the
// unknowns. Throws std::invalid_argument when n < 2.
std::optional<std::vector<std::int64_t>> solve_mod(const LinearSystem& linsys, std::int64_t n);

bool check_solution(const LinearSystem& linsys, const std::vector<std::int64_t>& solution,
                    std::int64_t n);
AffineWitness witness_terms(const LinearSystem& linsys, const std::vector<std::int64_t>& solution,
                            std::int64_t n);

// Substitutes the affine terms into each identity and compares the
// coefficient of every variable modulo n. Also requires each term to be
// idempotent (coefficients sum to 1 mod n).
bool affine_satisfies(const System& system, const AffineWitness& witness, std::int64_t n);

struct PrimeExclusion {
  BigInt prime;
  // Row with prime | d_row and prime not dividing c_row.
  int row = -1;
};

struct SnfCertificate {
  std::vector<BigInt> diag;
  std::vector<BigInt> transformed_rhs;
  // gcd of the right-hand sides of the zero rows; 0 when all vanish.
  BigInt zero_row_gcd;
  std::vector<PrimeExclusion> excluded;
};

struct RingVerdict {
  bool satisfiable = false;
  std::int64_t prime = 0;
  std::vector<std::int64_t> solution;
  AffineWitness witness;
  SnfCertificate snf;
};

// Decides whether some Z_p (hence some finite ring) solves the system and
// returns the least such prime with the least solution mod p.
RingVerdict solve_some_finite_ring(const LinearSystem& linsys);
// Re-derives the verdict's claims: the solution for a satisfiable verdict;
// the Smith data and every prime exclusion for an unsatisfiable one.
bool verify_ring_verdict(const LinearSystem& linsys, const RingVerdict& verdict);

// All idempotent affine terms of the arity over Z_n: n^(k-1) of them.
std::vector<AffineTerm> affine_terms(std::int64_t n, int arity);

struct SubstitutionCase {
  char shape = 'a';
  std::string identity;
  std::int64_t prime = 0;
  AffineTerm witness;
};

struct SubstitutionReport {
  int shapes = 0;
  // Witnesses that satisfied both substituted identities.
  long long checked = 0;
  // Shapes whose substituted pair has no common witness for any prime.
  std::vector<std::string> unsatisfiable_shapes;
  std::vector<SubstitutionCase> counterexamples;
};

// Single ternary symbol p over {x,y,z}: (a) p(x,y,z) against each argument
// permutation and (b) identities with {x,y} on the left and {x,z} on the
// right. For every witness satisfying the z->x and z->y substitutions the
// original identity must hold.
SubstitutionReport substitution_lemma_check(const std::vector<std::int64_t>& primes);

std::vector<std::int64_t> prime_factors(BigInt n);
bool is_prime(std::int64_t n);

nlohmann::json ring_verdict_to_json(const RingVerdict& verdict);

}  // namespace lincond

#endif  // LINCOND_REDUCTS_H_
