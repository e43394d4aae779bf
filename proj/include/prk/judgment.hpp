#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "prk/term.hpp"
#include "prk/typing.hpp"

namespace prk {

// Judgment files: one "x : P" line per assumption, then "|- t", "|- t : P" or "|- : P".
// '#' starts a comment running to the end of the line.
struct Judgment {
  Context ctx;
  std::optional<Term> term;
  std::optional<MProp> type;
};

Judgment parse_judgment(std::string_view text);
std::string to_string(const Judgment& j);

}  // namespace prk
