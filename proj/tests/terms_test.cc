#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "lincond/dsl.h"
#include "lincond/partition.h"
#include "lincond/symmetry.h"
#include "test_support.h"

using namespace lincond;
using namespace lincond::testing;

namespace {

std::shared_ptr<const TermUniverse> pq2() {
  return std::make_shared<TermUniverse>(Signature{Symbol::P, Symbol::Q}, 2);
}

std::vector<std::string> block_strings(const Partition& p) {
  std::vector<std::string> out;
  for (const auto& b : p.blocks()) {
    if (b.size() < 2) continue;
    std::string s;
    for (int e : b) s += p.universe()[e].to_string() + " ";
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("parse expands chains and counts identities") {
  CHECK(parse_system(kCandidateA).size() == 4);
  // 1 + 1 + 2 pairwise identities.
  CHECK(parse_system(kCandidateB).size() == 4);
  CHECK(parse_system(kMasterProjMaj).size() == 6);
  CHECK(parse_system("p(x,y,z)=p(x,z,y)").num_vars() == 3);
  CHECK(parse_system("x=q(x,y,x)").signature() == Signature{Symbol::Q});
}

TEST_CASE("parse collapses idempotent applications") {
  auto r = parse_system_report("p(x,x,x)=x");
  CHECK(r.system.empty());
  CHECK(r.warnings.size() == 1);
  CHECK(parse_system("x=x").empty());
  CHECK(parse_system("").empty());
  CHECK_THROWS_AS(parse_system("  ;"), ParseError);
}

TEST_CASE("parse accepts the approx sign, comments and a trailing semicolon") {
  System a = parse_system("p(x,x,y) \xE2\x89\x88 p(x,y,y); # comment\n x = q(x,y,x);");
  System b = parse_system("p(x,x,y)=p(x,y,y); x=q(x,y,x)");
  CHECK(a == b);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_system("p(x,x,y)=r(x,y,x)");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 10);
    CHECK(std::string(e.what()).find("unknown symbol") != std::string::npos);
  }
  try {
    parse_system("x=p(x,y)");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("arity mismatch") != std::string::npos);
    CHECK(e.column() == 3);
  }
  try {
    parse_system("x=t(x,y)\n  p(x,y,x)=x");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_system("x=p(x,w,y)"), ParseError);
  CHECK_THROWS_AS(parse_system("x"), ParseError);
  CHECK_THROWS_AS(parse_system("x=p(x,y,x"), ParseError);
}

TEST_CASE("format round-trips") {
  CHECK(format_system(System{}) == "");
  for (const char* text : {kMasterProjMaj, kMasterProjMajNoX, kCandidateA, kCandidateB, kMasterMajMaj, kCandidateC}) {
    System s = parse_system(text);
    std::string f = format_system(s);
    CHECK(parse_system(f) == s);
    CHECK(format_system(parse_system(f)) == f);
  }
  CHECK(format_system(parse_system(kCandidateA)) ==
        "p(x,x,y)=p(x,y,y); p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)");
  CHECK(format_system(normal_form(parse_system(kCandidateC))) ==
        "x=p(x,x,y); p(x,y,x)=p(y,x,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)");
}

TEST_CASE("format round-trips random systems") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    System s = random_system(rng, Signature{Symbol::P, Symbol::Q, Symbol::T}, 3, 1 + i % 9);
    CHECK(parse_system(format_system(s)) == s);
  }
}

TEST_CASE("term universe") {
  auto u = pq2();
  CHECK(u->size() == 14);
  CHECK(TermUniverse(Signature{Symbol::T}, 2).size() == 4);
  CHECK(TermUniverse(Signature{Symbol::P}, 3).size() == 3 + 24);
  for (const TermRef& t : u->terms()) CHECK(u->index_of(mirror_term(t)) >= 0);
  CHECK(std::is_sorted(u->terms().begin(), u->terms().end()));
}

TEST_CASE("partition closure") {
  auto u = pq2();
  CHECK(partition_closure(System{}, u).num_blocks() == 14);

  Partition p4 = partition_closure(parse_system(kCandidateA), u);
  CHECK(p4.num_blocks() == 10);
  CHECK(block_strings(p4) == std::vector<std::string>{
                                 "p(x,x,y) p(x,y,y) ",
                                 "p(x,y,x) q(x,x,y) q(x,y,x) q(y,x,x) ",
                             });

  Partition p2 = partition_closure(parse_system(kMasterProjMaj), u);
  CHECK(block_strings(p2) ==
        std::vector<std::string>{"x p(x,x,y) p(x,y,x) p(x,y,y) q(x,x,y) q(x,y,x) q(y,x,x) "});

  CHECK_THROWS_AS(partition_closure(parse_system("x=t(x,y)"), u), std::invalid_argument);
}

TEST_CASE("closure ignores how chains are split") {
  auto u = pq2();
  System a = parse_system("x=p(x,x,y)=q(x,y,x)=p(y,x,x)");
  System b = parse_system("x=p(x,x,y); x=q(x,y,x); p(y,x,x)=p(x,x,y)");
  CHECK(partition_closure(a, u) == partition_closure(b, u));
}

TEST_CASE("closure commutes with the mirror") {
  auto u = pq2();
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    System s = random_system(rng, Signature{Symbol::P, Symbol::Q}, 2, 1 + i % 6);
    System m = apply_symmetry(s, SymmetryElement::mirror());
    CHECK(partition_closure(m, u) == partition_closure(s, u).mirror());
  }
}

TEST_CASE("substitute variable") {
  System s = parse_system("p(x,y,z)=p(x,z,y)");
  CHECK(substitute_variable(s, 2, 0) == parse_system("p(x,y,x)=p(x,x,y)"));
  CHECK(substitute_variable(s, 2, 1).empty());
  CHECK(substitute_variable(parse_system("x=q(x,y,x)"), 1, 0).empty());
}

TEST_CASE("group orders") {
  CHECK(symmetry_group(Signature{Symbol::P, Symbol::Q}, 2).size() == 144);
  CHECK(symmetry_group(Signature{Symbol::P}, 2).size() == 12);
  CHECK(symmetry_group(Signature{Symbol::T}, 2).size() == 4);
  CHECK(symmetry_group(Signature{Symbol::T, Symbol::S}, 2).size() == 16);
  CHECK(symmetry_group(Signature{Symbol::P, Symbol::T}, 2).size() == 24);
  CHECK(symmetry_group(Signature{Symbol::P, Symbol::Q}, 3).size() == 432);
  CHECK(symmetry_group(Signature{Symbol::P, Symbol::Q}, 2).front() == SymmetryElement::identity());
}

TEST_CASE("group action laws") {
  const auto& group = symmetry_group(Signature{Symbol::P, Symbol::Q, Symbol::T, Symbol::S}, 3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  System s = parse_system(kCandidateB);
  CHECK(apply_symmetry(s, SymmetryElement::identity()) == s);
  CHECK(apply_symmetry(apply_symmetry(s, SymmetryElement::mirror()), SymmetryElement::mirror()) == s);
  for (int i = 0; i < 500; ++i) {
    System r = random_system(rng, Signature{Symbol::P, Symbol::Q, Symbol::T, Symbol::S}, 3, 4);
    const SymmetryElement& g = group[pick(rng)];
    const SymmetryElement& h = group[pick(rng)];
    CHECK(apply_symmetry(apply_symmetry(r, g), h) == apply_symmetry(r, compose(h, g)));
    CHECK(apply_symmetry(apply_symmetry(r, g), inverse(g)) == r);
    CHECK(compose(g, inverse(g)) == SymmetryElement::identity());
  }
}

TEST_CASE("permuting the arguments of q fixes candidate A") {
  SymmetryElement g;
  g.q_arg_perm() = {1, 2, 0};
  System s4 = parse_system(kCandidateA);
  System subset1 = parse_system("p(x,x,y)=p(x,y,y); p(x,y,x)=q(y,x,x)=q(x,y,x)=q(x,x,y)");
  CHECK(partition_closure(apply_symmetry(s4, g), pq2()) == partition_closure(subset1, pq2()));
  CHECK(canonical_form(s4) == canonical_form(subset1));
}

TEST_CASE("canonical form is the orbit minimum") {
  std::mt19937 rng(5);
  const Signature sig{Symbol::P, Symbol::Q};
  const auto& group = symmetry_group(sig, 2);
  for (int i = 0; i < 120; ++i) {
    System s = random_system(rng, sig, 2, 1 + i % 7);
    // Oracle: explicit orbit of normal forms.
    std::vector<System> orbit;
    for (const auto& g : group) orbit.push_back(normal_form(apply_symmetry(s, g)));
    System least = *std::min_element(orbit.begin(), orbit.end(), system_less);
    auto [canon, g] = canonicalize(s);
    CHECK(canon == least);
    CHECK(normal_form(apply_symmetry(s, g)) == canon);
    CHECK(canonical_form(canon) == canon);
    for (std::size_t k = 0; k < group.size(); k += 7) {
      CHECK(canonical_form(apply_symmetry(s, group[k])) == canon);
    }
    System swapped = s;
    SymmetryElement sw;
    sw.swap_pq = true;
    CHECK(canonical_form(apply_symmetry(s, sw)) == canon);
  }
}

TEST_CASE("bell numbers and set partitions") {
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  for (int n = 0; n < 10; ++n) {
    CHECK(bell_number(n) == bell[n]);
    std::uint64_t count = 0;
    for_each_set_partition(n, [&](const std::vector<int>&) { ++count; });
    CHECK(count == bell[n]);
  }
  CHECK(bell_number(14) == 190899322);
}

TEST_CASE("weakenings") {
  auto u = pq2();
  CHECK(weakenings(Partition::discrete(u)).empty());
  CHECK(weakenings(partition_closure(parse_system("x=p(x,x,y)"), u)).size() == 1);
  CHECK(weakenings(partition_closure(parse_system(kCandidateA), u)).size() == 2 * 15 - 1);

  // Oracle: every labelling of the 7 block members into 7 labels, normalised.
  Partition master = partition_closure(parse_system(kMasterProjMaj), u);
  auto ws = weakenings(master);
  CHECK(ws.size() == 876);
  std::vector<int> block;
  for (const auto& b : master.blocks()) {
    if (b.size() == 7) block = b;
  }
  std::set<std::vector<std::vector<int>>> expected;
  std::vector<int> f(7, 0);
  for (int code = 0; code < 823543; ++code) {
    for (int i = 0, c = code; i < 7; ++i, c /= 7) f[i] = c % 7;
    std::vector<int> labels(u->size());
    for (int e = 0; e < u->size(); ++e) labels[e] = 100 + e;
    for (int i = 0; i < 7; ++i) labels[block[i]] = f[i];
    Partition p = Partition::from_labels(u, labels);
    if (!(p == master)) expected.insert(p.blocks());
  }
  std::set<std::vector<std::vector<int>>> got;
  for (const auto& w : ws) {
    CHECK(w.strictly_refines(master));
    got.insert(w.blocks());
  }
  CHECK(got.size() == 876);
  CHECK(got == expected);
}
