// Expected-results manifest and the end-to-end check against it.
#ifndef LINCOND_VERIFY_H_
#define LINCOND_VERIFY_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lincond/classify.h"

namespace lincond {

class ManifestError : public std::runtime_error {
 public:
  ManifestError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class Expectation {
  MinimalSet,    // the system belongs to the family's minimal candidate set
  NoCandidates,  // the family has no candidates
  Candidate,     // ring-unsatisfiable by both routes, holds in A and B
  Minimal,       // every strict weakening is ring-satisfiable
  RingUnsat,     // unsatisfiable in every finite-ring reduct
  Witness,       // the given affine terms satisfy the system
  Erratum,       // the given terms fail, but the system is ring-satisfiable
  Inventory,     // the term occurs among the affine terms of the modulus
};

std::string expectation_name(Expectation e);

struct ManifestEntry {
  int line = 0;
  std::string family;
  std::string system_text;  // "-" when the entry is not about a system
  Expectation kind = Expectation::Witness;
  std::optional<std::int64_t> modulus;
  std::vector<std::vector<std::int64_t>> coeffs;  // one vector per symbol, p first
};

// Lines are `family | system | expectation | [n, (a,b,c), (d,e,f)]`; `#`
// starts a comment and blank lines are skipped.
std::vector<ManifestEntry> parse_manifest(std::istream& in);
std::vector<ManifestEntry> load_manifest(const std::string& path);

// Parses terms such as "2x+4z" or "x" into a coefficient vector.
AffineTerm parse_affine_term(const std::string& text, std::int64_t modulus, int arity);

struct EntryResult {
  ManifestEntry entry;
  bool ok = false;
  std::string detail;
  nlohmann::json certificate;
};

struct InventoryDiff {
  std::int64_t modulus = 0;
  std::size_t expected_count = 0;
  std::size_t listed = 0;
  std::vector<std::string> duplicates;
  std::vector<std::string> missing;
  std::vector<std::string> not_terms;
};

struct VerifyReport {
  std::vector<EntryResult> results;
  std::vector<CandidateReport> families;
  std::vector<InventoryDiff> inventories;
  bool all_ok() const;
  std::size_t failures() const;
};

VerifyReport verify_paper(const std::vector<ManifestEntry>& manifest, const RunOptions& options = {},
                          std::int64_t bound = 64);

nlohmann::json verify_report_to_json(const VerifyReport& r);
std::string verify_report_to_markdown(const VerifyReport& r);

}  // namespace lincond

#endif  // LINCOND_VERIFY_H_
