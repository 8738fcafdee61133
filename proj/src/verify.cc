#include "lincond/verify.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lincond/dsl.h"

namespace lincond {
namespace {

const std::pair<const char*, Expectation> kExpectations[] = {
    {"minimal-set", Expectation::MinimalSet}, {"no-candidates", Expectation::NoCandidates},
    {"candidate", Expectation::Candidate},    {"minimal", Expectation::Minimal},
    {"ring-unsat", Expectation::RingUnsat},   {"witness", Expectation::Witness},
    {"erratum", Expectation::Erratum},        {"inventory", Expectation::Inventory},
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& text, int line) {
  std::string t = trim(text);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ManifestError(line, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) throw ManifestError(line, "expected an integer, got '" + t + "'");
  return v;
}

// "[5, (3,0,3), (3,3,0)]" or "[5]".
void parse_parameters(const std::string& text, ManifestEntry& e) {
  std::string t = trim(text);
  if (t.empty()) return;
  if (t.front() != '[' || t.back() != ']') throw ManifestError(e.line, "parameters must be enclosed in [ ]");
  t = t.substr(1, t.size() - 2);
  std::size_t paren = t.find('(');
  std::string head = paren == std::string::npos ? t : t.substr(0, paren);
  head = trim(head);
  if (!head.empty() && head.back() == ',') head.pop_back();
  e.modulus = parse_int(head, e.line);
  if (*e.modulus < 2) throw ManifestError(e.line, "modulus must be at least 2");
  while (paren != std::string::npos) {
    std::size_t close = t.find(')', paren);
    if (close == std::string::npos) throw ManifestError(e.line, "unbalanced parenthesis");
    std::vector<std::int64_t> v;
    for (const std::string& part : split(t.substr(paren + 1, close - paren - 1), ',')) {
      v.push_back(parse_int(part, e.line));
    }
    e.coeffs.push_back(std::move(v));
    paren = t.find('(', close);
  }
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

AffineWitness witness_from(const ManifestEntry& e, const std::vector<Symbol>& symbols) {
  if (e.coeffs.size() != symbols.size()) {
    throw std::invalid_argument("expected " + std::to_string(symbols.size()) + " coefficient vectors, got " +
                                std::to_string(e.coeffs.size()));
  }
  AffineWitness w;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (static_cast<int>(e.coeffs[i].size()) != arity(symbols[i])) {
      throw std::invalid_argument(std::string("wrong number of coefficients for ") + symbol_char(symbols[i]));
    }
    AffineTerm t{*e.modulus, {}};
    for (std::int64_t c : e.coeffs[i]) t.coeffs.push_back(mod(c, *e.modulus));
    w.emplace(symbols[i], t);
  }
  return w;
}

std::string witness_string(const AffineWitness& w) {
  std::string out;
  for (const auto& [sym, term] : w) {
    if (!out.empty()) out += ", ";
    out += std::string(1, symbol_char(sym)) + "=" + term.to_string();
  }
  return out;
}

System entry_system(const ManifestEntry& e) {
  System s = parse_system(e.system_text);
  return s.with_context(2, MasterFamily::parse(e.family).signature());
}

class Verifier {
 public:
  Verifier(const RunOptions& options, std::int64_t bound) : options_(options), bound_(bound) {}

  const CandidateReport& family(const std::string& name) {
    auto it = families_.find(name);
    if (it == families_.end()) {
      it = families_.emplace(name, minimal_candidates(MasterFamily::parse(name), options_)).first;
    }
    return it->second;
  }

  std::map<std::string, CandidateReport>& families() { return families_; }

  EntryResult check(const ManifestEntry& e) {
    EntryResult r{e, false, "", nlohmann::json::object()};
    try {
      switch (e.kind) {
        case Expectation::MinimalSet: minimal_set(e, r); break;
        case Expectation::NoCandidates: no_candidates(e, r); break;
        case Expectation::Candidate: candidate(e, r); break;
        case Expectation::Minimal: minimal(e, r); break;
        case Expectation::RingUnsat: ring_unsat(e, r); break;
        case Expectation::Witness: witness(e, r, false); break;
        case Expectation::Erratum: witness(e, r, true); break;
        case Expectation::Inventory: inventory(e, r); break;
      }
    } catch (const std::exception& ex) {
      r.ok = false;
      r.detail = std::string("error: ") + ex.what();
    }
    return r;
  }

 private:
  void minimal_set(const ManifestEntry& e, EntryResult& r) {
    const CandidateReport& rep = family(e.family);
    System canon = canonical_form(entry_system(e));
    r.ok = std::find(rep.minimal.begin(), rep.minimal.end(), canon) != rep.minimal.end();
    r.detail = r.ok ? "computed minimal candidate" : "not among the computed minimal candidates";
    r.certificate = classification_to_json(classify_system(canon));
  }

  void no_candidates(const ManifestEntry& e, EntryResult& r) {
    const CandidateReport& rep = family(e.family);
    r.ok = rep.candidates.empty();
    r.detail = std::to_string(rep.total) + " systems enumerated, " + std::to_string(rep.candidates.size()) +
               " candidates";
    nlohmann::json cands = nlohmann::json::array();
    for (const CandidateInfo& c : rep.candidates) cands.push_back(classification_to_json(c.classification));
    r.certificate = {{"class_counts", rep.class_counts}, {"candidates", cands}};
  }

  void candidate(const ManifestEntry& e, EntryResult& r) {
    System s = entry_system(e);
    Classification c = classify_system(s);
    LinearSystem ls = coefficient_system(s);
    bool snf_ok = verify_ring_verdict(ls, c.ring);
    std::vector<std::int64_t> solvable;
    for (std::int64_t n = 2; n <= bound_; ++n) {
      if (solve_mod(ls, n)) solvable.push_back(n);
    }
    bool routes_agree = c.ring.satisfiable != solvable.empty();
    r.ok = c.is_candidate && snf_ok && solvable.empty();
    std::ostringstream d;
    d << c.class_key() << "; solve_mod fails for n in 2.." << bound_ << ": " << (solvable.empty() ? "yes" : "no")
      << "; routes agree: " << (routes_agree ? "yes" : "no");
    r.detail = d.str();
    r.certificate = classification_to_json(c);
    r.certificate["solvable_moduli"] = solvable;
  }

  void minimal(const ManifestEntry& e, EntryResult& r) {
    System s = entry_system(e);
    std::vector<WeakeningCheck> ws =
        check_weakenings(s, MasterFamily::parse(e.family).universe(), options_.jobs);
    std::map<std::int64_t, int> primes;
    nlohmann::json unsat = nlohmann::json::array();
    bool all_small = true;
    for (const WeakeningCheck& w : ws) {
      if (!w.ring.satisfiable) {
        unsat.push_back(format_system(w.system));
        continue;
      }
      ++primes[w.ring.prime];
      all_small = all_small && (w.ring.prime == 2 || w.ring.prime == 3 || w.ring.prime == 5);
      if (!affine_satisfies(w.system, w.ring.witness, w.ring.prime)) all_small = false;
    }
    r.ok = unsat.empty() && all_small && ws.size() <= static_cast<std::size_t>(bell_number(7) - 1);
    std::ostringstream d;
    d << ws.size() << " strict weakenings, " << unsat.size() << " ring-unsatisfiable; least primes:";
    for (const auto& [p, n] : primes) d << " Z" << p << " x" << n;
    r.detail = d.str();
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [p, n] : primes) hist[std::to_string(p)] = n;
    r.certificate = {{"weakenings", ws.size()}, {"least_primes", hist}, {"ring_unsatisfiable", unsat}};
  }

  void ring_unsat(const ManifestEntry& e, EntryResult& r) {
    System s = entry_system(e);
    LinearSystem ls = coefficient_system(s);
    RingVerdict v = solve_some_finite_ring(ls);
    r.ok = !v.satisfiable && verify_ring_verdict(ls, v);
    r.detail = v.satisfiable ? "satisfiable over Z" + std::to_string(v.prime) : "unsatisfiable in every finite ring";
    r.certificate = ring_verdict_to_json(v);
  }

  void witness(const ManifestEntry& e, EntryResult& r, bool erratum) {
    if (!e.modulus) throw std::invalid_argument("missing modulus");
    System s = entry_system(e);
    AffineWitness w = witness_from(e, MasterFamily::parse(e.family).signature().symbols());
    bool holds = affine_satisfies(s, w, *e.modulus);
    RingVerdict v = solve_some_finite_ring(coefficient_system(s));
    std::string printed = witness_string(w) + " over Z" + std::to_string(*e.modulus);
    if (erratum) {
      r.ok = !holds && v.satisfiable;
      r.detail = "printed " + printed + (holds ? " holds" : " fails") + "; system is " +
                 (v.satisfiable ? "satisfiable over Z" + std::to_string(v.prime) : "ring-unsatisfiable");
    } else {
      r.ok = holds;
      r.detail = printed + (holds ? " verified by substitution" : " fails substitution");
    }
    r.certificate = ring_verdict_to_json(v);
    auto least = solve_mod(coefficient_system(s), *e.modulus);
    if (least) r.certificate["least_witness_at_modulus"] = witness_string(witness_terms(coefficient_system(s), *least, *e.modulus));
  }

  void inventory(const ManifestEntry& e, EntryResult& r) {
    std::int64_t n = e.modulus.value_or(5);
    AffineTerm t = parse_affine_term(e.system_text, n, 3);
    std::vector<AffineTerm> all = affine_terms(n, 3);
    r.ok = std::find(all.begin(), all.end(), t) != all.end();
    r.detail = t.to_string() + (r.ok ? " is" : " is not") + " an idempotent affine term over Z" + std::to_string(n);
  }

  RunOptions options_;
  std::int64_t bound_;
  std::map<std::string, CandidateReport> families_;
};

std::vector<InventoryDiff> inventory_diffs(const std::vector<ManifestEntry>& manifest) {
  std::map<std::int64_t, std::vector<std::string>> listed;
  for (const ManifestEntry& e : manifest) {
    if (e.kind == Expectation::Inventory) listed[e.modulus.value_or(5)].push_back(e.system_text);
  }
  std::vector<InventoryDiff> out;
  for (const auto& [n, texts] : listed) {
    InventoryDiff d;
    d.modulus = n;
    std::vector<AffineTerm> all = affine_terms(n, 3);
    d.expected_count = all.size();
    d.listed = texts.size();
    std::map<std::vector<std::int64_t>, int> count;
    for (const std::string& text : texts) {
      AffineTerm t;
      try {
        t = parse_affine_term(text, n, 3);
      } catch (const std::exception&) {
        d.not_terms.push_back(text);
        continue;
      }
      if (std::find(all.begin(), all.end(), t) == all.end()) d.not_terms.push_back(t.to_string());
      if (++count[t.coeffs] == 2) d.duplicates.push_back(t.to_string());
    }
    for (const AffineTerm& t : all) {
      if (!count.count(t.coeffs)) d.missing.push_back(t.to_string());
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string escape_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

}  // namespace

ManifestError::ManifestError(int line, const std::string& message)
    : std::runtime_error("manifest line " + std::to_string(line) + ": " + message), line_(line) {}

std::string expectation_name(Expectation e) {
  for (const auto& [name, kind] : kExpectations) {
    if (kind == e) return name;
  }
  return "?";
}

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    std::vector<std::string> fields = split(text, '|');
    if (fields.size() < 3 || fields.size() > 4) {
      throw ManifestError(line, "expected 3 or 4 fields separated by '|'");
    }
    ManifestEntry e;
    e.line = line;
    e.family = trim(fields[0]);
    e.system_text = trim(fields[1]);
    std::string kind = trim(fields[2]);
    bool known = false;
    for (const auto& [name, k] : kExpectations) {
      if (kind == name) {
        e.kind = k;
        known = true;
      }
    }
    if (!known) throw ManifestError(line, "unknown expectation '" + kind + "'");
    if (fields.size() == 4) parse_parameters(fields[3], e);
    if (e.kind != Expectation::Inventory) {
      try {
        MasterFamily::parse(e.family);
      } catch (const std::invalid_argument& ex) {
        throw ManifestError(line, ex.what());
      }
    }
    bool needs_system = e.kind != Expectation::NoCandidates;
    if (needs_system && (e.system_text.empty() || e.system_text == "-")) {
      throw ManifestError(line, "expectation '" + kind + "' needs a system");
    }
    if (needs_system && e.kind != Expectation::Inventory) {
      try {
        parse_system(e.system_text);
      } catch (const ParseError& ex) {
        throw ManifestError(line, std::string("bad system: ") + ex.what());
      }
    }
    if ((e.kind == Expectation::Witness || e.kind == Expectation::Erratum) && (!e.modulus || e.coeffs.empty())) {
      throw ManifestError(line, "expectation '" + kind + "' needs [modulus, coefficients]");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  return parse_manifest(in);
}

AffineTerm parse_affine_term(const std::string& text, std::int64_t modulus, int arity) {
  AffineTerm t{modulus, std::vector<std::int64_t>(arity, 0)};
  std::size_t i = 0;
  auto bad = [&] { return std::invalid_argument("cannot parse affine term '" + text + "'"); };
  bool any = false;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    } else if (any) {
      throw bad();
    }
    std::int64_t c = 0;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = c * 10 + (text[i++] - '0');
      digits = true;
    }
    if (!digits) c = 1;
    if (i >= text.size()) throw bad();
    int var = text[i] == 'x' ? 0 : text[i] == 'y' ? 1 : text[i] == 'z' ? 2 : -1;
    if (var < 0 || var >= arity) throw bad();
    ++i;
    t.coeffs[var] = mod(t.coeffs[var] + sign * c, modulus);
    any = true;
  }
  if (!any) throw bad();
  return t;
}

bool VerifyReport::all_ok() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return std::count_if(results.begin(), results.end(), [](const EntryResult& r) { return !r.ok; });
}

VerifyReport verify_paper(const std::vector<ManifestEntry>& manifest, const RunOptions& options, std::int64_t bound) {
  Verifier v(options, bound);
  VerifyReport report;
  std::map<std::string, std::set<std::string>> listed_minimal;
  for (const ManifestEntry& e : manifest) {
    report.results.push_back(v.check(e));
    if (e.kind == Expectation::MinimalSet) {
      try {
        listed_minimal[e.family].insert(format_system(canonical_form(entry_system(e))));
      } catch (const std::exception&) {
      }
    }
  }
  // Computed minimal candidates absent from the manifest are findings too.
  for (const auto& [name, listed] : listed_minimal) {
    const CandidateReport& rep = v.family(name);
    for (const CandidateInfo& c : rep.candidates) {
      if (!c.minimal || listed.count(format_system(c.classification.canonical))) continue;
      ManifestEntry e;
      e.family = name;
      e.system_text = format_system(c.classification.canonical);
      e.kind = Expectation::MinimalSet;
      report.results.push_back(
          {e, false, "computed minimal candidate missing from the manifest", classification_to_json(c.classification)});
    }
  }
  for (auto& [name, rep] : v.families()) report.families.push_back(rep);
  report.inventories = inventory_diffs(manifest);
  return report;
}

nlohmann::json verify_report_to_json(const VerifyReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const EntryResult& res : r.results) {
    entries.push_back({{"line", res.entry.line},
                       {"family", res.entry.family},
                       {"system", res.entry.system_text},
                       {"expectation", expectation_name(res.entry.kind)},
                       {"ok", res.ok},
                       {"detail", res.detail},
                       {"certificate", res.certificate}});
  }
  nlohmann::json families = nlohmann::json::array();
  for (const CandidateReport& f : r.families) families.push_back(candidate_report_to_json(f));
  nlohmann::json inventories = nlohmann::json::array();
  for (const InventoryDiff& d : r.inventories) {
    inventories.push_back({{"modulus", d.modulus},
                           {"expected_count", d.expected_count},
                           {"listed", d.listed},
                           {"duplicates", d.duplicates},
                           {"missing", d.missing},
                           {"not_terms", d.not_terms}});
  }
  return {{"ok", r.all_ok()},
          {"entries_checked", r.results.size()},
          {"failures", r.failures()},
          {"entries", entries},
          {"families", families},
          {"inventories", inventories}};
}

std::string verify_report_to_markdown(const VerifyReport& r) {
  std::ostringstream out;
  out << "# Verification report\n\n";
  out << "Entries checked: " << r.results.size() << ", failures: " << r.failures() << "\n\n";
  for (const CandidateReport& f : r.families) out << candidate_report_to_markdown(f);

  auto section = [&](const std::string& title, std::initializer_list<Expectation> kinds) {
    std::vector<const EntryResult*> rows;
    for (const EntryResult& res : r.results) {
      if (std::find(kinds.begin(), kinds.end(), res.entry.kind) != kinds.end()) rows.push_back(&res);
    }
    if (rows.empty()) return;
    out << "## " << title << "\n\n| line | family | system | expectation | result | detail |\n|---|---|---|---|---|---|\n";
    for (const EntryResult* res : rows) {
      out << "| " << (res->entry.line ? std::to_string(res->entry.line) : "-") << " | " << res->entry.family << " | `"
          << escape_cell(res->entry.system_text) << "` | " << expectation_name(res->entry.kind) << " | "
          << (res->ok ? "ok" : "FAIL") << " | " << escape_cell(res->detail) << " |\n";
    }
    out << "\n";
  };
  section("Families", {Expectation::MinimalSet, Expectation::NoCandidates});
  section("Candidates and minimality", {Expectation::Candidate, Expectation::Minimal, Expectation::RingUnsat});
  section("Witness ledger", {Expectation::Witness});
  section("Errata", {Expectation::Erratum});
  section("Term inventory", {Expectation::Inventory});
  for (const InventoryDiff& d : r.inventories) {
    auto list = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& t : v) s += (s.empty() ? "" : ", ") + t;
      return s.empty() ? std::string("none") : s;
    };
    out << "Z" << d.modulus << " inventory: " << d.expected_count << " terms, " << d.listed
        << " listed. Duplicates: " << list(d.duplicates) << ". Missing: " << list(d.missing)
        << ". Not terms: " << list(d.not_terms) << ".\n\n";
  }
  return out.str();
}

}  // namespace lincond
