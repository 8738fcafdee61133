#include <sstream>

#include "doctest.h"
#include "lincond/verify.h"

using namespace lincond;

namespace {

std::vector<ManifestEntry> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in);
}

const std::string kManifest = std::string(LINCOND_DATA_DIR) + "/expected_results.txt";

}  // namespace

TEST_CASE("manifest parsing") {
  auto m = parse(
      "# comment\n\n"
      "TwoTernary | p(x,y,x)=q(x,x,y); p(x,x,y)=p(x,y,y)=q(x,y,x)=q(y,x,x) | witness | [5, (3,0,3), (3,3,0)]\n"
      "SingleBinary | - | no-candidates |\n"
      "- | 2x+4z | inventory | [5]\n");
  REQUIRE(m.size() == 3);
  CHECK(m[0].line == 3);
  CHECK(m[0].kind == Expectation::Witness);
  CHECK(*m[0].modulus == 5);
  CHECK(m[0].coeffs == std::vector<std::vector<std::int64_t>>{{3, 0, 3}, {3, 3, 0}});
  CHECK(m[1].kind == Expectation::NoCandidates);
  CHECK(m[2].system_text == "2x+4z");

  CHECK_THROWS_AS(parse("TwoTernary | x=p(x,x,y) | guess |\n"), ManifestError);
  CHECK_THROWS_AS(parse("TwoTernary | x=p(x,x,y)\n"), ManifestError);
  CHECK_THROWS_AS(parse("Ternary | x=p(x,x,y) | candidate |\n"), ManifestError);
  CHECK_THROWS_AS(parse("TwoTernary | x=p(x,x) | candidate |\n"), ManifestError);
  CHECK_THROWS_AS(parse("TwoTernary | x=p(x,x,y) | witness |\n"), ManifestError);
  CHECK_THROWS_AS(parse("TwoTernary | x=p(x,x,y) | witness | [5, (1,0,0)\n"), ManifestError);
  try {
    parse("\n\nTwoTernary | x=p(x,x,y) | nope |\n");
  } catch (const ManifestError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("affine term parsing") {
  CHECK(parse_affine_term("2x+4z", 5, 3).coeffs == std::vector<std::int64_t>{2, 0, 4});
  CHECK(parse_affine_term("x", 5, 3).coeffs == std::vector<std::int64_t>{1, 0, 0});
  CHECK(parse_affine_term("x + 4y + z", 5, 3).coeffs == std::vector<std::int64_t>{1, 4, 1});
  CHECK(parse_affine_term("2x-y", 5, 3).coeffs == std::vector<std::int64_t>{2, 4, 0});
  CHECK_THROWS_AS(parse_affine_term("2w", 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_affine_term("", 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_affine_term("z", 5, 2), std::invalid_argument);
}

TEST_CASE("single entries") {
  auto m = parse(
      "TwoTernary | p(x,y,x)=q(x,x,y); p(x,x,y)=p(x,y,y)=q(x,y,x)=q(y,x,x) | witness | [5, (3,0,3), (3,3,0)]\n"
      "TwoTernary | p(x,y,x)=q(x,x,y); p(x,x,y)=p(x,y,y)=q(x,y,x)=q(y,x,x) | witness | [5, (1,0,0), (3,3,0)]\n"
      "TwoTernary | p(x,y,x)=q(x,x,y)=p(x,y,y)=q(y,x,x)=q(x,y,x) | erratum | [5, (4,2,0), (2,2,3)]\n"
      "TwoTernary | p(x,x,y)=p(x,y,y) | ring-unsat |\n"
      "- | 2x+4z | inventory | [5]\n"
      "- | 2x+4z | inventory | [5]\n"
      "- | 2x+2z | inventory | [5]\n");
  VerifyReport r = verify_paper(m);
  REQUIRE(r.results.size() == 7);
  CHECK(r.results[0].ok);
  CHECK_FALSE(r.results[1].ok);
  CHECK(r.results[2].ok);
  CHECK_FALSE(r.results[3].ok);
  CHECK(r.results[4].ok);
  CHECK_FALSE(r.results[6].ok);
  CHECK(r.failures() == 3);
  REQUIRE(r.inventories.size() == 1);
  CHECK(r.inventories[0].duplicates == std::vector<std::string>{"2x+4z"});
  CHECK(r.inventories[0].missing.size() == 24);
  CHECK(r.inventories[0].not_terms == std::vector<std::string>{"2x+2z"});
}

TEST_CASE("a missing minimal candidate is reported") {
  auto m = parse("TwoTernary | p(x,x,y)=p(x,y,y); p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x) | minimal-set |\n");
  VerifyReport r = verify_paper(m);
  CHECK(r.results.size() == 3);
  CHECK(r.results[0].ok);
  CHECK(r.failures() == 2);
  for (std::size_t i = 1; i < r.results.size(); ++i) CHECK(r.results[i].certificate["is_candidate"] == true);
}

TEST_CASE("the shipped manifest verifies") {
  auto m = load_manifest(kManifest);
  CHECK(m.size() >= 60);
  VerifyReport r = verify_paper(m);
  for (const EntryResult& res : r.results) {
    CAPTURE(res.entry.line);
    CAPTURE(res.detail);
    CHECK(res.ok);
  }
  REQUIRE(r.inventories.size() == 1);
  const InventoryDiff& d = r.inventories[0];
  CHECK(d.expected_count == 25);
  CHECK(d.listed == 22);
  CHECK(d.duplicates == std::vector<std::string>{"2x+4z"});
  CHECK(d.missing.size() == 4);
  CHECK(d.not_terms.empty());
  auto text = verify_report_to_markdown(r);
  CHECK(text.find("## Witness ledger") != std::string::npos);
  CHECK(verify_report_to_json(r)["ok"] == true);
}
