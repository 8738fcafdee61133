// Text form of identity systems.
//
//   system   := identity (";" identity)* ";"?
//   identity := term ("=" term)+
//   term     := var | sym "(" var "," var ["," var] ")"
//   sym      := "p" | "q" | "t" | "s"
//   var      := "x" | "y" | "z"
//
// Whitespace is insignificant, "≈" is a synonym of "=", and "#" starts a
// comment that runs to the end of the line.
#ifndef LINCOND_DSL_H_
#define LINCOND_DSL_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lincond/term.h"

namespace lincond {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseResult {
  System system;
  // One message per identity dropped because both sides collapsed to the
  // same term.
  std::vector<std::string> warnings;
};

ParseResult parse_system_report(std::string_view text);
System parse_system(std::string_view text);

// Identities in sorted order, merged into chains a=b=c wherever consecutive
// identities share an endpoint; chains separated by "; ".
std::string format_system(const System& system);

}  // namespace lincond

#endif  // LINCOND_DSL_H_
