#include "lincond/cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lincond/classify.h"
#include "lincond/dsl.h"
#include "lincond/verify.h"

namespace lincond {
namespace {

namespace fs = std::filesystem;

struct Config {
  std::string format = "json";
  std::string out_dir;
  int jobs = 1;
  std::int64_t bound = 64;
  std::vector<int> a_sizes{2, 3, 4};
  bool recheck = false;
  std::string manifest = std::string(LINCOND_DATA_DIR) + "/expected_results.txt";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(const Config& config, std::ostream& out) : config_(config), out_(out) {}

  bool json() const { return config_.format != "markdown"; }
  bool markdown() const { return config_.format != "json"; }

  // Prints the report and, with an output directory, writes it to
  // <name>.json and <name>.md.
  void emit(const nlohmann::json& j, const std::string& md, const std::string& name) {
    if (json()) out_ << j.dump(2) << "\n";
    if (markdown()) out_ << md;
    if (config_.out_dir.empty()) return;
    if (json()) write(name + ".json", j.dump(2) + "\n");
    if (markdown()) write(name + ".md", md);
  }

  // Persists a certificate under the hash of its canonical system and
  // returns the path, or "" without an output directory.
  std::string persist(const nlohmann::json& cert) {
    if (config_.out_dir.empty()) return "";
    std::string name = "certificates/" + content_hash(cert["canonical_system"].get<std::string>()) + ".json";
    write(name, cert.dump(2) + "\n");
    return (fs::path(config_.out_dir) / name).string();
  }

 private:
  void write(const std::string& name, const std::string& text) {
    fs::path p = fs::path(config_.out_dir) / name;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
    f << text;
  }

  const Config& config_;
  std::ostream& out_;
};

std::string read_system_argument(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    std::ifstream f(arg);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  return arg;
}

Symbol symbol_from_char(char c) {
  for (int i = 0; i < kNumSymbols; ++i) {
    if (symbol_char(static_cast<Symbol>(i)) == c) return static_cast<Symbol>(i);
  }
  throw std::invalid_argument(std::string("unknown symbol '") + c + "'");
}

bool recheck_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) return false;
  try {
    return recheck_certificate(nlohmann::json::parse(f));
  } catch (const std::exception&) {
    return false;
  }
}

std::string shown(const System& s) {
  return s.identities().empty() ? std::string("(empty system)") : "`" + format_system(s) + "`";
}

std::string shown(const Witness& w) { return w.empty() ? std::string("no symbols") : witness_to_string(w); }

std::string classification_markdown(const Classification& c, std::int64_t bound,
                                     const std::optional<std::int64_t>& least_modulus) {
  std::ostringstream out;
  out << "## System\n\n" << shown(c.system) << "\n\n";
  out << "Canonical form: " << shown(c.canonical) << "\n\n";
  if (c.ring.satisfiable) {
    out << "- Module reducts: satisfiable over Z" << c.ring.prime;
    std::string w;
    for (const auto& [sym, term] : c.ring.witness) {
      w += (w.empty() ? "" : ", ") + std::string(1, symbol_char(sym)) + "=" + term.to_string();
    }
    out << " (" << (w.empty() ? "no symbols" : w) << ")\n";
  } else {
    out << "- Module reducts: unsatisfiable in every finite ring (Smith diagonal:";
    for (const BigInt& d : c.ring.snf.diag) out << " " << d;
    out << ")\n";
  }
  out << "- Least modulus up to " << bound << ": "
      << (least_modulus ? std::to_string(*least_modulus) : std::string("none")) << "\n";
  out << "- B: " << (c.holds_in_b ? "holds (" + shown(c.in_b.witness) + ")" : std::string("fails"))
      << "\n";
  for (const auto& [m, v] : c.in_a) {
    out << "- A" << m << ": " << (v.satisfiable ? "holds (" + shown(v.witness) + ")" : std::string("fails"))
        << "\n";
  }
  out << "- Candidate: " << (c.is_candidate ? "yes" : "no") << "\n";
  return out.str();
}

int cmd_check(const Config& config, Context& ctx, const std::string& arg, std::ostream& err) {
  System s = parse_system(read_system_argument(arg));
  Classifier classifier(config.a_sizes);
  Classification c = classifier.classify(s);
  LinearSystem ls = coefficient_system(s);
  std::optional<std::int64_t> least;
  for (std::int64_t n = 2; n <= config.bound && !least; ++n) {
    if (solve_mod(ls, n)) least = n;
  }
  nlohmann::json j = classification_to_json(c);
  j["least_modulus"] = least ? nlohmann::json(*least) : nlohmann::json(nullptr);
  j["modulus_bound"] = config.bound;
  std::string path = ctx.persist(j);
  ctx.emit(j, classification_markdown(c, config.bound, least), "check-" + content_hash(format_system(c.canonical)));
  if (config.recheck) {
    bool ok = path.empty() ? recheck_certificate(j) : recheck_file(path);
    if (!ok) {
      err << "error: certificate failed recheck\n";
      return kExitMismatch;
    }
  }
  return kExitOk;
}

FiniteAlgebra parse_algebra(const std::string& spec) {
  auto number = [&](std::size_t from) {
    try {
      std::size_t used = 0;
      int v = std::stoi(spec.substr(from), &used);
      if (used == spec.size() - from) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("bad algebra '" + spec + "' (expected b, a, a:<m> or reduct:<n>)");
  };
  if (spec == "b") return semilattice_b();
  if (spec == "a") return majority_a(3);
  if (spec.rfind("a:", 0) == 0) {
    int m = number(2);
    if (m < 2) throw UsageError("majority algebra size must be at least 2");
    return majority_a(m);
  }
  if (spec.rfind("reduct:", 0) == 0) {
    int n = number(7);
    if (n < 2) throw UsageError("reduct modulus must be at least 2");
    return reduct_algebra(n);
  }
  throw UsageError("bad algebra '" + spec + "' (expected b, a, a:<m> or reduct:<n>)");
}

int cmd_clone(Context& ctx, const std::string& spec, int k) {
  if (k < 1 || k > 4) throw UsageError("arity must be between 1 and 4");
  FiniteAlgebra alg = parse_algebra(spec);
  CloneSlice slice = clone_slice(alg, k);
  nlohmann::json j = slice_to_json(slice, alg.size());
  j["algebra"] = spec;
  std::ostringstream md;
  md << "## Clone slice of " << spec << ", arity " << k << "\n\n" << slice.members.size() << " members\n\n";
  for (const OperationTable& op : slice.members) md << "- " << op.label() << "\n";
  std::string name = spec;
  std::replace(name.begin(), name.end(), ':', '-');
  ctx.emit(j, md.str(), "clone-" + name + "-" + std::to_string(k));
  return kExitOk;
}

int cmd_reduct_terms(Context& ctx, std::int64_t n, int k) {
  if (n < 2) throw UsageError("modulus must be at least 2");
  if (k < 1 || k > 3) throw UsageError("arity must be between 1 and 3");
  std::vector<AffineTerm> terms = affine_terms(n, k);
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream md;
  md << "## Idempotent affine terms over Z" << n << ", arity " << k << "\n\n" << terms.size() << " terms\n\n";
  for (const AffineTerm& t : terms) {
    list.push_back(t.to_string());
    md << "- " << t.to_string() << "\n";
  }
  nlohmann::json j{{"modulus", n}, {"arity", k}, {"count", terms.size()}, {"terms", list}};
  ctx.emit(j, md.str(), "reduct-terms-" + std::to_string(n));
  return kExitOk;
}

int cmd_enumerate(Context& ctx, const std::string& name) {
  MasterFamily f = MasterFamily::parse(name);
  std::vector<EnumeratedSystem> systems = enumerate_family(f);
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream md;
  md << "## Family " << f.name() << "\n\n" << systems.size() << " systems up to symmetry\n\n";
  for (const EnumeratedSystem& e : systems) {
    list.push_back({{"system", format_system(e.system)}, {"origin", e.origin}});
    md << "- `" << format_system(e.system) << "` (" << e.origin << ")\n";
  }
  nlohmann::json j{{"family", f.name()}, {"count", systems.size()}, {"systems", list}};
  ctx.emit(j, md.str(), "enumerate-" + f.name());
  return kExitOk;
}

int cmd_minimal(const Config& config, Context& ctx, const std::string& name, std::ostream& err) {
  MasterFamily f = MasterFamily::parse(name);
  CandidateReport r = minimal_candidates(f, {config.a_sizes, config.jobs});
  bool ok = true;
  for (const CandidateInfo& c : r.candidates) {
    std::string path = ctx.persist(classification_to_json(c.classification));
    if (config.recheck && !path.empty() && !recheck_file(path)) ok = false;
  }
  ctx.emit(candidate_report_to_json(r), candidate_report_to_markdown(r), "minimal-" + f.name());
  if (!ok) {
    err << "error: certificate failed recheck\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_verify(const Config& config, Context& ctx, std::ostream& err) {
  std::vector<ManifestEntry> manifest = load_manifest(config.manifest);
  VerifyReport r = verify_paper(manifest, {config.a_sizes, config.jobs}, config.bound);
  ctx.emit(verify_report_to_json(r), verify_report_to_markdown(r), "verify-paper");
  if (!r.all_ok()) {
    err << "findings: " << r.failures() << " of " << r.results.size() << " entries disagree\n";
    for (const EntryResult& res : r.results) {
      if (res.ok) continue;
      err << "  line " << res.entry.line << ": " << expectation_name(res.entry.kind) << " " << res.entry.system_text
          << ": " << res.detail << "\n";
    }
    return kExitMismatch;
  }
  return kExitOk;
}

}  // namespace

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool recheck_certificate(const nlohmann::json& cert) {
  System s = parse_system(cert.at("system").get<std::string>());
  LinearSystem ls = coefficient_system(s);
  const std::string status = cert.at("status").get<std::string>();
  if (status == "satisfiable") {
    std::int64_t p = cert.at("prime").get<std::int64_t>();
    AffineWitness w;
    for (const auto& [key, value] : cert.at("witness").items()) {
      if (key.size() != 1) continue;
      w.emplace(symbol_from_char(key[0]), AffineTerm{p, value.get<std::vector<std::int64_t>>()});
    }
    for (Symbol sym : s.used_symbols().symbols()) {
      if (!w.count(sym)) return false;
    }
    return is_prime(p) && affine_satisfies(s, w, p);
  }
  if (status != "unsatisfiable_all_finite_rings") return false;
  RingVerdict v = solve_some_finite_ring(ls);
  return !v.satisfiable && verify_ring_verdict(ls, v) && ring_verdict_to_json(v)["snf"] == cert.at("snf");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config config;
  if (const char* env = std::getenv("LINCOND_OUT_DIR")) config.out_dir = env;

  CLI::App app{"Linear idempotent conditions: reduct, semilattice and majority checks", "lincond"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"json", "markdown", "both"}))
      ->capture_default_str();
  app.add_option("--out", config.out_dir, "Directory for reports and certificates (default $LINCOND_OUT_DIR)");
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--bound", config.bound, "Largest modulus for direct modular search")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20))
      ->capture_default_str();
  app.add_option("--a-sizes", config.a_sizes, "Sizes of the majority algebras A")
      ->delimiter(',')
      ->check(CLI::Range(2, 6))
      ->capture_default_str();
  app.add_flag("--recheck", config.recheck, "Reload persisted certificates and re-verify them");

  std::string system_arg, algebra_arg, family_arg;
  int arity_arg = 3;
  std::int64_t modulus_arg = 0;

  auto* check = app.add_subcommand("check", "Classify one system (DSL text or a file)");
  check->add_option("system", system_arg, "System DSL or path")->required();
  auto* clone = app.add_subcommand("clone", "Print a clone slice");
  clone->add_option("algebra", algebra_arg, "b, a, a:<m> or reduct:<n>")->required();
  clone->add_option("arity", arity_arg, "Arity")->required();
  auto* reduct = app.add_subcommand("reduct-terms", "List idempotent affine terms over Z_n");
  reduct->add_option("n", modulus_arg, "Modulus")->required();
  reduct->add_option("--arity", arity_arg, "Arity")->capture_default_str();
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate a family up to symmetry");
  enumerate->add_option("family", family_arg, "Family tag")->required();
  auto* minimal = app.add_subcommand("minimal", "Minimal candidates of a family");
  minimal->add_option("family", family_arg, "Family tag")->required();
  auto* verify = app.add_subcommand("verify-paper", "Check every entry of the expected-results manifest");
  verify->add_option("--manifest", config.manifest, "Manifest path")->capture_default_str();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (config.a_sizes.empty()) {
    err << "error: --a-sizes needs at least one size\n";
    return kExitUsage;
  }

  Context ctx(config, out);
  try {
    if (*check) return cmd_check(config, ctx, system_arg, err);
    if (*clone) return cmd_clone(ctx, algebra_arg, arity_arg);
    if (*reduct) return cmd_reduct_terms(ctx, modulus_arg, arity_arg);
    if (*enumerate) return cmd_enumerate(ctx, family_arg);
    if (*minimal) return cmd_minimal(config, ctx, family_arg, err);
    if (*verify) return cmd_verify(config, ctx, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lincond
