// Families of two-variable systems, their classification against B, A and
// the module reducts, and minimal candidates.
#ifndef LINCOND_CLASSIFY_H_
#define LINCOND_CLASSIFY_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lincond/algebra.h"
#include "lincond/partition.h"
#include "lincond/reducts.h"
#include "lincond/symmetry.h"

namespace lincond {

enum class Family { TwoTernary, SingleTernary, BinaryPlusTernary, SingleBinary, TwoBinary };

class MasterFamily {
 public:
  explicit MasterFamily(Family tag);
  // Accepts the tag names, e.g. "TwoTernary". Throws std::invalid_argument.
  static MasterFamily parse(const std::string& name);
  static std::vector<MasterFamily> all();

  Family tag() const { return tag_; }
  const std::string& name() const { return name_; }
  Signature signature() const { return signature_; }
  const std::shared_ptr<const TermUniverse>& universe() const { return universe_; }

 private:
  Family tag_;
  std::string name_;
  Signature signature_;
  std::shared_ptr<const TermUniverse> universe_;
};

enum class WitnessType { Pi1, Pi2, Pi3, Majority };
std::string witness_type_name(WitnessType t);

struct TypedPartition {
  std::vector<std::pair<Symbol, WitnessType>> types;
  Partition partition;

  std::string label() const;
  // Block containing the bare variable x.
  const std::vector<int>& x_block() const;
};

// One entry per assignment of witness types to the family's symbols, with
// the partition the assignment induces in the majority algebra on 3
// elements.
std::vector<TypedPartition> master_partitions(const MasterFamily& family);

struct EnumeratedSystem {
  System system;       // canonical x-side system
  std::string origin;  // witness-type assignment that produced it first
};

// Every partition of the x-block of every master partition, as canonical
// systems without duplicates, sorted by system_less.
std::vector<EnumeratedSystem> enumerate_family(const MasterFamily& family);

// Adds the x <-> y image of every identity.
System mirror_completion(const System& system);

struct Classification {
  System system;
  System canonical;
  RingVerdict ring;
  SatVerdict in_b;
  // One verdict per majority algebra size.
  std::vector<std::pair<int, SatVerdict>> in_a;
  bool holds_in_b = false;
  bool holds_in_a = false;
  bool is_candidate = false;

  std::string class_key() const;
};

class Classifier {
 public:
  explicit Classifier(std::vector<int> a_sizes = {2, 3, 4});
  Classification classify(const System& system) const;
  const std::vector<int>& a_sizes() const { return a_sizes_; }

 private:
  std::vector<int> a_sizes_;
  std::vector<CloneSlice> b_slices_;
  std::vector<std::vector<CloneSlice>> a_slices_;
};

Classification classify_system(const System& system);

struct WeakeningCheck {
  System system;
  RingVerdict ring;
};

struct CandidateInfo {
  Classification classification;
  bool minimal = false;
  // For a non-minimal candidate: a minimal candidate it contains.
  std::optional<System> contains;
  std::vector<WeakeningCheck> weakenings;
};

struct CandidateReport {
  std::string family;
  std::size_t total = 0;
  std::map<std::string, int> class_counts;
  std::vector<CandidateInfo> candidates;
  std::vector<System> minimal;
};

struct RunOptions {
  std::vector<int> a_sizes{2, 3, 4};
  int jobs = 1;
};

std::vector<Classification> classify_all(const std::vector<System>& systems, const RunOptions& options);

// Strict refinements of the system's closure over the universe, each with
// its ring verdict, in the order for_each_weakening produces them.
std::vector<WeakeningCheck> check_weakenings(const System& system,
                                             std::shared_ptr<const TermUniverse> universe,
                                             int jobs = 1);

CandidateReport minimal_candidates(const MasterFamily& family, const RunOptions& options = {});

nlohmann::json classification_to_json(const Classification& c);
nlohmann::json candidate_report_to_json(const CandidateReport& r);
std::string candidate_report_to_markdown(const CandidateReport& r);
std::string witness_to_string(const Witness& w);

}  // namespace lincond

#endif  // LINCOND_CLASSIFY_H_
