#include "lincond/dsl.h"

#include <cctype>
#include <map>

namespace lincond {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    ParseResult result;
    skip_space();
    while (!at_end()) {
      parse_identity(result);
      skip_space();
      if (at_end()) break;
      expect(';', "expected ';' between identities");
      skip_space();
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, column_, message);
  }

  void advance(std::size_t bytes = 1) {
    for (std::size_t i = 0; i < bytes && pos_ < text_.size(); ++i) {
      unsigned char c = static_cast<unsigned char>(text_[pos_++]);
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  void skip_space() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* message) {
    if (at_end() || text_[pos_] != c) fail(message);
    advance();
  }

  // Accepts "=" or the UTF-8 encoding of "≈".
  bool accept_equals() {
    if (!at_end() && text_[pos_] == '=') {
      advance();
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x89\x88") {
      advance(3);
      return true;
    }
    return false;
  }

  int parse_var() {
    skip_space();
    if (at_end()) fail("expected variable");
    char c = text_[pos_];
    if (c < 'x' || c > 'z') fail(std::string("unknown variable '") + c + "'");
    advance();
    return c - 'x';
  }

  TermRef parse_term() {
    skip_space();
    if (at_end()) fail("expected term");
    char c = text_[pos_];
    if (c >= 'x' && c <= 'z') return TermRef::var(parse_var());
    Symbol sym;
    switch (c) {
      case 'p': sym = Symbol::P; break;
      case 'q': sym = Symbol::Q; break;
      case 't': sym = Symbol::T; break;
      case 's': sym = Symbol::S; break;
      default:
        if (std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unknown symbol '") + c + "'");
        fail("expected term");
    }
    int sym_line = line_, sym_column = column_;
    advance();
    skip_space();
    expect('(', "expected '('");
    std::vector<int> args{parse_var()};
    skip_space();
    while (!at_end() && text_[pos_] == ',') {
      advance();
      args.push_back(parse_var());
      skip_space();
    }
    expect(')', "expected ')'");
    if (static_cast<int>(args.size()) != arity(sym)) {
      throw ParseError(sym_line, sym_column,
                       std::string("arity mismatch: ") + symbol_char(sym) + " takes " +
                           std::to_string(arity(sym)) + " arguments, got " +
                           std::to_string(args.size()));
    }
    return TermRef::app(sym, args);
  }

  void parse_identity(ParseResult& result) {
    int start_line = line_, start_column = column_;
    TermRef prev = parse_term();
    skip_space();
    if (!accept_equals()) fail("expected '='");
    do {
      TermRef next = parse_term();
      if (prev == next) {
        result.warnings.push_back("dropped trivial identity " + prev.to_string() + "=" +
                                  next.to_string() + " at " + std::to_string(start_line) +
                                  ":" + std::to_string(start_column));
      } else {
        result.system.add(prev, next);
      }
      prev = next;
      skip_space();
    } while (accept_equals());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

ParseResult parse_system_report(std::string_view text) { return Parser(text).run(); }

System parse_system(std::string_view text) { return parse_system_report(text).system; }

std::string format_system(const System& system) {
  // Greedy chaining: start at the least unused identity and keep following
  // an unused identity whose left side is the current chain end.
  std::multimap<TermRef, const Identity*> by_left;
  for (const Identity& id : system.identities()) by_left.emplace(id.left(), &id);
  std::set<const Identity*> used;
  std::string out;
  for (const Identity& id : system.identities()) {
    if (used.count(&id)) continue;
    used.insert(&id);
    if (!out.empty()) out += "; ";
    out += id.left().to_string() + "=" + id.right().to_string();
    TermRef end = id.right();
    for (;;) {
      const Identity* next = nullptr;
      auto [lo, hi] = by_left.equal_range(end);
      for (auto it = lo; it != hi; ++it) {
        if (!used.count(it->second)) {
          next = it->second;
          break;
        }
      }
      if (!next) break;
      used.insert(next);
      out += "=" + next->right().to_string();
      end = next->right();
    }
  }
  return out;
}

}  // namespace lincond
