// Command-line front end. Exit codes: 0 success or full agreement, 1
// verification mismatch, 2 usage or parse error.
#ifndef LINCOND_CLI_H_
#define LINCOND_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>

#include "json.hpp"

namespace lincond {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// FNV-1a 64-bit hash of the text, as 16 hex digits.
std::string content_hash(const std::string& text);

// Re-verifies a persisted system certificate: satisfiable verdicts by
// substitution, unsatisfiable ones by recomputing the Smith route.
bool recheck_certificate(const nlohmann::json& certificate);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lincond

#endif  // LINCOND_CLI_H_
