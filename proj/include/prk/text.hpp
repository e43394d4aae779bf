#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prk/prop.hpp"
#include "prk/term.hpp"

namespace prk {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct ParseOptions {
  // Accept the reserved falsity variable (needed to read back embedded proofs).
  bool allow_reserved = false;
};

PureProp parse_pure(std::string_view text, ParseOptions opts = {});
MProp parse_mprop(std::string_view text, ParseOptions opts = {});
Mode parse_mode(std::string_view text);
Term parse_term(std::string_view text, ParseOptions opts = {});

bool is_identifier(std::string_view s);

std::string to_string(Mode m);
std::string to_string(const PureProp& a);
std::string to_string(const MProp& p);
std::string to_string(const Term& t);

// Incremental reader used by the file formats built on top of the grammar.
class Reader {
 public:
  explicit Reader(std::string_view text, ParseOptions opts = {}, int line = 1, int column = 1)
      : text_(text), opts_(opts), line_(line), col_(column) {}

  PureProp pure();
  Mode mode();
  MProp mprop();
  Term term();
  std::string ident();

  void skip_ws();
  bool at_end();
  bool peek(std::string_view s);
  bool accept(std::string_view s);
  void expect(std::string_view s);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance(std::size_t n = 1);
  std::string raw_ident();
  Sign sign_suffix(const std::string& kw);
  Term binder_body(std::string& name, MProp& type);

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  int line_, col_;
};

}  // namespace prk
