// Shared fixtures: master and candidate systems on p and q, and a random
// system generator.
#ifndef LINCOND_TESTS_TEST_SUPPORT_H_
#define LINCOND_TESTS_TEST_SUPPORT_H_

#include <random>
#include <vector>

#include "lincond/dsl.h"
#include "lincond/partition.h"

namespace lincond::testing {

inline constexpr const char* kMasterProjMaj =
    "x=p(x,x,y)=p(x,y,y)=p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)";
inline constexpr const char* kMasterProjMajNoX =
    "p(x,x,y)=p(x,y,y)=p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)";
inline constexpr const char* kCandidateA =
    "p(x,x,y)=p(x,y,y); p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)";
inline constexpr const char* kCandidateB =
    "x=q(x,y,x); p(x,y,y)=p(x,y,x); p(x,x,y)=q(x,x,y)=q(y,x,x)";
inline constexpr const char* kMasterMajMaj =
    "x=p(x,x,y)=p(x,y,x)=p(y,x,x)=q(y,x,x)=q(x,y,x)=q(x,x,y)";
inline constexpr const char* kCandidateC =
    "x=p(x,x,y); p(x,y,x)=p(y,x,x)=q(y,x,x)=q(x,y,x)=q(x,x,y)";

// Random system over the universe of the given context: `count` random
// pairs of universe terms (pairs of equal terms are skipped).
inline System random_system(std::mt19937& rng, Signature sig, int num_vars, int count) {
  TermUniverse u(sig, num_vars);
  std::uniform_int_distribution<int> pick(0, u.size() - 1);
  System s({}, num_vars, sig);
  for (int i = 0; i < count; ++i) s.add(u[pick(rng)], u[pick(rng)]);
  return s;
}

}  // namespace lincond::testing

#endif  // LINCOND_TESTS_TEST_SUPPORT_H_
