#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lincond/cli.h"

using namespace lincond;

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lincond");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("lincond_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kCandidate = "p(x,x,y)=p(x,y,y); p(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)";

}  // namespace

TEST_CASE("content hash") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("x=p(x,x,y)") != content_hash("x=p(x,y,x)"));
}

TEST_CASE("check a candidate") {
  Result r = run_cli({"check", kCandidate});
  CHECK(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["is_candidate"] == true);
  CHECK(j["status"] == "unsatisfiable_all_finite_rings");
  CHECK(j["least_modulus"].is_null());
  CHECK(j["snf"]["diag"].size() > 0);
}

TEST_CASE("check the trivial system") {
  Result r = run_cli({"check", "x=x", "--format", "markdown"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("(empty system)") != std::string::npos);
  CHECK(r.out.find("Candidate: no") != std::string::npos);
}

TEST_CASE("check reads a file") {
  fs::path dir = temp_dir("file");
  std::ofstream(dir / "sys.txt") << "# reduct-satisfiable\np(x,y,x)=q(x,x,y)=q(x,y,x)=q(y,x,x)\n";
  Result r = run_cli({"check", (dir / "sys.txt").string()});
  CHECK(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "satisfiable");
  CHECK(j["is_candidate"] == false);
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run_cli({}).code == kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == kExitUsage);
  Result r = run_cli({"check", "p(x,x)=x"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(r.out.empty());
  CHECK(run_cli({"check", "w=p(x,x,y)"}).code == kExitUsage);
  CHECK(run_cli({"minimal", "Ternary"}).code == kExitUsage);
  CHECK(run_cli({"clone", "c", "2"}).code == kExitUsage);
  CHECK(run_cli({"clone", "reduct:1", "2"}).code == kExitUsage);
  CHECK(run_cli({"reduct-terms", "1"}).code == kExitUsage);
  CHECK(run_cli({"check", kCandidate, "--format", "xml"}).code == kExitUsage);
  CHECK(run_cli({"check", kCandidate, "--bound", "1"}).code == kExitUsage);
  CHECK(run_cli({"check", kCandidate, "--jobs", "0"}).code == kExitUsage);
  CHECK(run_cli({"verify-paper", "--manifest", "/nonexistent/manifest.txt"}).code == kExitUsage);
  CHECK(run_cli({"--help"}).code == kExitOk);
}

TEST_CASE("reduct terms and clone slices") {
  auto j = nlohmann::json::parse(run_cli({"reduct-terms", "5"}).out);
  CHECK(j["count"] == 25);
  auto terms = j["terms"].get<std::vector<std::string>>();
  for (const char* t : {"x", "3x+3z", "2x+4z", "x+2y+3z", "2x+2y+2z"}) {
    CHECK(std::find(terms.begin(), terms.end(), t) != terms.end());
  }
  auto b = nlohmann::json::parse(run_cli({"clone", "b", "3"}).out);
  CHECK(b["count"] == 7);
  auto a = nlohmann::json::parse(run_cli({"clone", "a", "2"}).out);
  CHECK(a["count"] == 2);
  auto z = nlohmann::json::parse(run_cli({"clone", "reduct:3", "3"}).out);
  CHECK(z["count"] == 9);
}

TEST_CASE("enumerate and minimal") {
  Result e = run_cli({"enumerate", "SingleBinary"});
  CHECK(e.code == kExitOk);
  CHECK(nlohmann::json::parse(e.out)["count"] == 2);
  Result m = run_cli({"minimal", "SingleTernary", "--format", "both"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("## Family SingleTernary") != std::string::npos);
}

TEST_CASE("output is identical across runs and job counts") {
  Result a = run_cli({"minimal", "TwoTernary"});
  Result b = run_cli({"minimal", "TwoTernary", "--jobs", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(run_cli({"check", kCandidate}).out == run_cli({"check", kCandidate}).out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["minimal_candidates"].size() == 3);
}

TEST_CASE("certificates persist and recheck") {
  fs::path dir = temp_dir("certs");
  Result r = run_cli({"minimal", "TwoTernary", "--out", dir.string(), "--recheck", "--format", "both"});
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir / "minimal-TwoTernary.json"));
  CHECK(fs::exists(dir / "minimal-TwoTernary.md"));
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir / "certificates")) {
    std::ifstream f(entry.path());
    auto cert = nlohmann::json::parse(f);
    CHECK(entry.path().stem().string() == content_hash(cert["canonical_system"].get<std::string>()));
    CHECK(recheck_certificate(cert));
    ++count;
  }
  CHECK(count > 0);

  Result c = run_cli({"check", "p(x,y,x)=q(x,x,y)", "--out", dir.string(), "--recheck"});
  CHECK(c.code == kExitOk);
  auto cert = nlohmann::json::parse(c.out);
  CHECK(recheck_certificate(cert));
  cert["witness"]["p"] = std::vector<int>{0, 1, 0};
  CHECK_FALSE(recheck_certificate(cert));
  auto unsat = nlohmann::json::parse(run_cli({"check", kCandidate}).out);
  CHECK(recheck_certificate(unsat));
  unsat["snf"]["diag"] = std::vector<std::string>{"2"};
  CHECK_FALSE(recheck_certificate(unsat));
}

TEST_CASE("output directory from the environment") {
  fs::path dir = temp_dir("env");
  setenv("LINCOND_OUT_DIR", dir.string().c_str(), 1);
  Result r = run_cli({"reduct-terms", "3"});
  unsetenv("LINCOND_OUT_DIR");
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir / "reduct-terms-3.json"));
}

TEST_CASE("verify-paper exit codes") {
  Result ok = run_cli({"verify-paper", "--format", "markdown"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("failures: 0") != std::string::npos);

  fs::path dir = temp_dir("manifest");
  std::ofstream(dir / "bad.txt")
      << "TwoTernary | p(x,y,x)=q(x,x,y); p(x,x,y)=p(x,y,y)=q(x,y,x)=q(y,x,x) | witness | [5, (1,0,0), (3,3,0)]\n";
  Result mismatch = run_cli({"verify-paper", "--manifest", (dir / "bad.txt").string()});
  CHECK(mismatch.code == kExitMismatch);
  CHECK(mismatch.err.find("findings: 1 of 1") != std::string::npos);
  CHECK(nlohmann::json::parse(mismatch.out)["ok"] == false);

  std::ofstream(dir / "broken.txt") << "TwoTernary | p(x,x,y) |\n";
  Result broken = run_cli({"verify-paper", "--manifest", (dir / "broken.txt").string()});
  CHECK(broken.code == kExitUsage);
  CHECK(broken.err.find("manifest line 1") != std::string::npos);
}
