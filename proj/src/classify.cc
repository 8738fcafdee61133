#include "lincond/classify.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lincond/dsl.h"

namespace lincond {
namespace {

struct FamilyInfo {
  Family tag;
  const char* name;
  Signature signature;
};

const FamilyInfo kFamilies[] = {
    {Family::TwoTernary, "TwoTernary", Signature{Symbol::P, Symbol::Q}},
    {Family::SingleTernary, "SingleTernary", Signature{Symbol::P}},
    {Family::BinaryPlusTernary, "BinaryPlusTernary", Signature{Symbol::P, Symbol::T}},
    {Family::SingleBinary, "SingleBinary", Signature{Symbol::T}},
    {Family::TwoBinary, "TwoBinary", Signature{Symbol::T, Symbol::S}},
};

// Runs fn(i) for i in [0, n) on `jobs` threads. Results must be written by
// index so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<CloneSlice> slices_for(const FiniteAlgebra& alg) {
  return {clone_slice(alg, 2), clone_slice(alg, 3)};
}

nlohmann::json sat_to_json(const SatVerdict& v) {
  nlohmann::json j{{"satisfiable", v.satisfiable}};
  if (v.satisfiable) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [sym, op] : v.witness) w[std::string(1, symbol_char(sym))] = op.label();
    j["witness"] = w;
  }
  return j;
}

std::string affine_witness_string(const AffineWitness& w) {
  std::string out;
  for (const auto& [sym, term] : w) {
    if (!out.empty()) out += ", ";
    out += std::string(1, symbol_char(sym)) + "=" + term.to_string();
  }
  return out;
}

}  // namespace

MasterFamily::MasterFamily(Family tag) : tag_(tag) {
  for (const FamilyInfo& f : kFamilies) {
    if (f.tag == tag) {
      name_ = f.name;
      signature_ = f.signature;
    }
  }
  universe_ = std::make_shared<TermUniverse>(signature_, 2);
}

MasterFamily MasterFamily::parse(const std::string& name) {
  for (const FamilyInfo& f : kFamilies) {
    if (name == f.name) return MasterFamily(f.tag);
  }
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected TwoTernary, SingleTernary, BinaryPlusTernary, SingleBinary "
                              "or TwoBinary)");
}

std::vector<MasterFamily> MasterFamily::all() {
  std::vector<MasterFamily> out;
  for (const FamilyInfo& f : kFamilies) out.emplace_back(f.tag);
  return out;
}

std::string witness_type_name(WitnessType t) {
  switch (t) {
    case WitnessType::Pi1: return "pi1";
    case WitnessType::Pi2: return "pi2";
    case WitnessType::Pi3: return "pi3";
    case WitnessType::Majority: return "majority";
  }
  return "?";
}

std::string TypedPartition::label() const {
  std::string out;
  for (const auto& [sym, type] : types) {
    if (!out.empty()) out += ", ";
    out += std::string(1, symbol_char(sym)) + "=" + witness_type_name(type);
  }
  return out;
}

const std::vector<int>& TypedPartition::x_block() const {
  int x = partition.universe().index_of(TermRef::var(0));
  return partition.blocks()[partition.block_of(x)];
}

std::vector<TypedPartition> master_partitions(const MasterFamily& family) {
  const FiniteAlgebra a = majority_a(3);
  const OperationTable& f = a.ops()[0].table;
  const std::vector<Symbol> symbols = family.signature().symbols();
  std::vector<std::vector<WitnessType>> options;
  for (Symbol s : symbols) {
    if (arity(s) == 3) {
      options.push_back({WitnessType::Pi1, WitnessType::Pi2, WitnessType::Pi3, WitnessType::Majority});
    } else {
      options.push_back({WitnessType::Pi1, WitnessType::Pi2});
    }
  }
  std::vector<TypedPartition> out;
  std::vector<std::size_t> choice(symbols.size(), 0);
  for (;;) {
    Witness w;
    std::vector<std::pair<Symbol, WitnessType>> types;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      WitnessType t = options[i][choice[i]];
      types.emplace_back(symbols[i], t);
      w.emplace(symbols[i], t == WitnessType::Majority
                                ? f
                                : OperationTable::projection(3, arity(symbols[i]), static_cast<int>(t)));
    }
    out.push_back({types, induced_partition(w, family.universe(), 3)});
    std::size_t i = symbols.size();
    while (i > 0 && ++choice[i - 1] == options[i - 1].size()) choice[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<EnumeratedSystem> enumerate_family(const MasterFamily& family) {
  const TermUniverse& u = *family.universe();
  auto less = [](const System& a, const System& b) { return system_less(a, b); };
  std::map<System, std::string, decltype(less)> seen(less);
  for (const TypedPartition& tp : master_partitions(family)) {
    const std::vector<int>& block = tp.x_block();
    for_each_set_partition(static_cast<int>(block.size()), [&](const std::vector<int>& rgs) {
      System s({}, 2, family.signature());
      std::vector<int> last(block.size(), -1);
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (last[rgs[i]] >= 0) s.add(u[last[rgs[i]]], u[block[i]]);
        last[rgs[i]] = block[i];
      }
      seen.emplace(canonical_form(s), tp.label());
    });
  }
  std::vector<EnumeratedSystem> out;
  for (auto& [system, origin] : seen) out.push_back({system, origin});
  return out;
}

System mirror_completion(const System& system) {
  System out = system;
  System m = apply_symmetry(system, SymmetryElement::mirror());
  for (const Identity& id : m.identities()) out.add(id.left(), id.right());
  return out.with_context(system.num_vars(), system.signature());
}

std::string Classification::class_key() const {
  return std::string("ring:") + (ring.satisfiable ? "sat" : "unsat") + " B:" + (holds_in_b ? "sat" : "unsat") +
         " A:" + (holds_in_a ? "sat" : "unsat");
}

Classifier::Classifier(std::vector<int> a_sizes) : a_sizes_(std::move(a_sizes)) {
  if (a_sizes_.empty()) throw std::invalid_argument("need at least one size for A");
  b_slices_ = slices_for(semilattice_b());
  for (int m : a_sizes_) a_slices_.push_back(slices_for(majority_a(m)));
}

Classification Classifier::classify(const System& system) const {
  Classification c;
  c.system = system;
  c.canonical = canonical_form(system);
  c.ring = solve_some_finite_ring(coefficient_system(system));
  c.in_b = holds_in(system, 2, b_slices_);
  c.holds_in_b = c.in_b.satisfiable;
  c.holds_in_a = true;
  for (std::size_t i = 0; i < a_sizes_.size(); ++i) {
    SatVerdict v = holds_in(system, a_sizes_[i], a_slices_[i]);
    c.holds_in_a = c.holds_in_a && v.satisfiable;
    c.in_a.emplace_back(a_sizes_[i], std::move(v));
  }
  c.is_candidate = !c.ring.satisfiable && c.holds_in_b && c.holds_in_a;
  return c;
}

Classification classify_system(const System& system) {
  static const Classifier classifier;
  return classifier.classify(system);
}

std::vector<Classification> classify_all(const std::vector<System>& systems, const RunOptions& options) {
  Classifier classifier(options.a_sizes);
  std::vector<Classification> out(systems.size());
  parallel_for(systems.size(), options.jobs, [&](std::size_t i) { out[i] = classifier.classify(systems[i]); });
  return out;
}

std::vector<WeakeningCheck> check_weakenings(const System& system,
                                             std::shared_ptr<const TermUniverse> universe, int jobs) {
  std::vector<System> systems;
  for_each_weakening(partition_closure(system, universe), [&](const Partition& p) {
    systems.push_back(p.to_system().with_context(system.num_vars(), system.signature()));
  });
  std::vector<WeakeningCheck> out(systems.size());
  parallel_for(systems.size(), jobs, [&](std::size_t i) {
    out[i] = {systems[i], solve_some_finite_ring(coefficient_system(systems[i]))};
  });
  return out;
}

CandidateReport minimal_candidates(const MasterFamily& family, const RunOptions& options) {
  CandidateReport report;
  report.family = family.name();
  std::vector<System> systems;
  for (const EnumeratedSystem& e : enumerate_family(family)) systems.push_back(e.system);
  report.total = systems.size();
  std::vector<Classification> classes = classify_all(systems, options);
  for (Classification& c : classes) {
    ++report.class_counts[c.class_key()];
    if (!c.is_candidate) continue;
    CandidateInfo info;
    info.classification = std::move(c);
    info.weakenings = check_weakenings(info.classification.system, family.universe(), options.jobs);
    const WeakeningCheck* finest_unsat = nullptr;
    int finest_blocks = -1;
    for (const WeakeningCheck& w : info.weakenings) {
      if (w.ring.satisfiable) continue;
      int blocks = partition_closure(w.system, family.universe()).num_blocks();
      if (blocks > finest_blocks) {
        finest_blocks = blocks;
        finest_unsat = &w;
      }
    }
    info.minimal = finest_unsat == nullptr;
    if (!info.minimal) {
      // The finest ring-unsatisfiable weakening has only satisfiable strict
      // refinements, so it is itself a minimal candidate.
      info.contains = canonical_form(finest_unsat->system);
      info.weakenings.clear();
    } else {
      report.minimal.push_back(info.classification.canonical);
    }
    report.candidates.push_back(std::move(info));
  }
  return report;
}

std::string witness_to_string(const Witness& w) {
  std::string out;
  for (const auto& [sym, op] : w) {
    if (!out.empty()) out += ", ";
    out += std::string(1, symbol_char(sym)) + "=" + op.label();
  }
  return out;
}

nlohmann::json classification_to_json(const Classification& c) {
  nlohmann::json j = ring_verdict_to_json(c.ring);
  j["system"] = format_system(c.system);
  j["canonical_system"] = format_system(c.canonical);
  j["holds_in_B"] = sat_to_json(c.in_b);
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [m, v] : c.in_a) {
    nlohmann::json e = sat_to_json(v);
    e["size"] = m;
    a.push_back(e);
  }
  j["holds_in_A"] = a;
  j["is_candidate"] = c.is_candidate;
  return j;
}

nlohmann::json candidate_report_to_json(const CandidateReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["total_enumerated"] = r.total;
  j["class_counts"] = r.class_counts;
  nlohmann::json cands = nlohmann::json::array();
  for (const CandidateInfo& info : r.candidates) {
    nlohmann::json c = classification_to_json(info.classification);
    c["minimal"] = info.minimal;
    if (info.contains) c["contains_minimal"] = format_system(*info.contains);
    if (info.minimal) {
      nlohmann::json ws = nlohmann::json::array();
      std::map<std::int64_t, int> primes;
      for (const WeakeningCheck& w : info.weakenings) {
        ++primes[w.ring.prime];
        ws.push_back({{"system", format_system(w.system)},
                      {"prime", w.ring.prime},
                      {"witness", affine_witness_string(w.ring.witness)}});
      }
      nlohmann::json hist = nlohmann::json::object();
      for (const auto& [p, n] : primes) hist[std::to_string(p)] = n;
      c["weakenings_checked"] = info.weakenings.size();
      c["weakening_least_primes"] = hist;
      c["weakenings"] = ws;
    }
    cands.push_back(c);
  }
  j["candidates"] = cands;
  nlohmann::json minimal = nlohmann::json::array();
  for (const System& s : r.minimal) minimal.push_back(format_system(s));
  j["minimal_candidates"] = minimal;
  return j;
}

std::string candidate_report_to_markdown(const CandidateReport& r) {
  std::ostringstream out;
  out << "## Family " << r.family << "\n\n";
  out << "Systems enumerated up to symmetry: " << r.total << "\n\n";
  out << "| class | count |\n|---|---|\n";
  for (const auto& [k, n] : r.class_counts) out << "| " << k << " | " << n << " |\n";
  out << "\nCandidates: " << r.candidates.size() << ", minimal: " << r.minimal.size() << "\n\n";
  for (const CandidateInfo& info : r.candidates) {
    const Classification& c = info.classification;
    out << "- `" << format_system(c.canonical) << "`";
    if (info.minimal) {
      std::map<std::int64_t, int> primes;
      for (const WeakeningCheck& w : info.weakenings) ++primes[w.ring.prime];
      out << " minimal; " << info.weakenings.size() << " strict weakenings, all ring-satisfiable (least primes:";
      for (const auto& [p, n] : primes) out << " Z" << p << " x" << n;
      out << ")";
    } else if (info.contains) {
      out << " not minimal; contains `" << format_system(*info.contains) << "`";
    }
    out << "\n  - B: " << witness_to_string(c.in_b.witness);
    for (const auto& [m, v] : c.in_a) {
      if (m == 3 || c.in_a.size() == 1) out << "; A" << m << ": " << witness_to_string(v.witness);
    }
    out << "\n";
  }
  out << "\n";
  return out.str();
}

}  // namespace lincond
