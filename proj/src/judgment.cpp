#include "prk/judgment.hpp"

#include "prk/text.hpp"

namespace prk {

Judgment parse_judgment(std::string_view text) {
  std::string clean(text);
  bool comment = false;
  for (char& c : clean) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  Reader r(clean);
  Judgment j;
  while (!r.peek("|-")) {
    if (r.at_end()) r.fail("expected '|-'");
    std::string x = r.ident();
    if (j.ctx.contains(x)) r.fail("'" + x + "' is assumed twice");
    r.expect(":");
    j.ctx.add(x, r.mprop());
  }
  r.expect("|-");
  if (!r.peek(":")) j.term = r.term();
  if (r.accept(":")) j.type = r.mprop();
  if (!j.term && !j.type) r.fail("expected a term or ': P' after '|-'");
  if (!r.at_end()) r.fail("trailing input");
  return j;
}

std::string to_string(const Judgment& j) {
  std::string out;
  for (const auto& [x, p] : j.ctx.entries()) out += x + " : " + to_string(p) + "\n";
  out += "|-";
  if (j.term) out += " " + to_string(*j.term);
  if (j.type) out += " : " + to_string(*j.type);
  return out + "\n";
}

}  // namespace prk
