#include "prk/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace prk {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"abs",  "pair", "proj1", "proj2", "in1",  "in2",
                                          "case", "negi", "nege",  "clam",  "capp"};
  return k;
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

void Reader::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
}

void Reader::fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

void Reader::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
}

bool Reader::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

bool Reader::peek(std::string_view s) {
  skip_ws();
  return text_.substr(pos_, s.size()) == s;
}

bool Reader::accept(std::string_view s) {
  if (!peek(s)) return false;
  advance(s.size());
  return true;
}

void Reader::expect(std::string_view s) {
  if (!accept(s)) {
    if (at_end()) fail("expected '" + std::string(s) + "' but reached end of input");
    fail("expected '" + std::string(s) + "'");
  }
}

std::string Reader::raw_ident() {
  skip_ws();
  std::size_t start = pos_;
  bool reserved = opts_.allow_reserved && text_.substr(pos_, 5) == kBotVar;
  if (reserved) {
    advance(5);
  } else {
    if (!ident_start(cur())) fail("expected identifier");
  }
  while (ident_char(cur())) advance();
  return std::string(text_.substr(start, pos_ - start));
}

std::string Reader::ident() {
  int l = line_, c = col_;
  std::string id = raw_ident();
  if (keywords().count(id)) throw ParseError("'" + id + "' is a reserved word", l, c);
  if (id.rfind("_", 0) == 0 && id != kBotVar) throw ParseError("bad identifier", l, c);
  return id;
}

PureProp Reader::pure() {
  skip_ws();
  if (accept("(")) {
    PureProp l = pure();
    if (peek("^")) fail("modes cannot be nested");
    bool is_and;
    if (accept("&"))
      is_and = true;
    else if (accept("|"))
      is_and = false;
    else
      fail("expected '&' or '|'");
    PureProp r = pure();
    if (peek("^")) fail("modes cannot be nested");
    expect(")");
    return is_and ? PureProp::conj(l, r) : PureProp::disj(l, r);
  }
  if (accept("~")) return PureProp::neg(pure());
  if (!opts_.allow_reserved && peek("_")) fail("'_bot0' and other '_' names are reserved");
  return PureProp::var(ident());
}

Mode Reader::mode() {
  expect("^");
  Mode m;
  if (cur() == 's')
    m.strength = Strength::Strong;
  else if (cur() == 'c')
    m.strength = Strength::Classical;
  else
    fail("expected mode strength 's' or 'c'");
  advance();
  if (cur() == '+')
    m.sign = Sign::Plus;
  else if (cur() == '-')
    m.sign = Sign::Minus;
  else
    fail("expected mode sign '+' or '-'");
  advance();
  return m;
}

MProp Reader::mprop() {
  PureProp a = pure();
  skip_ws();
  if (!peek("^")) fail("expected mode (^s+, ^s-, ^c+ or ^c-)");
  Mode m = mode();
  if (peek("^")) fail("modes cannot be nested");
  return {a, m};
}

Sign Reader::sign_suffix(const std::string& kw) {
  if (cur() == '+') {
    advance();
    return Sign::Plus;
  }
  if (cur() == '-') {
    advance();
    return Sign::Minus;
  }
  fail("expected '+' or '-' after '" + kw + "'");
}

Term Reader::binder_body(std::string& name, MProp& type) {
  name = ident();
  expect(":");
  type = mprop();
  expect(".");
  return term();
}

Term Reader::term() {
  skip_ws();
  int l = line_, c = col_;
  if (!ident_start(cur())) fail("expected term");
  std::string id = raw_ident();
  if (id == "abs") {
    expect("[");
    MProp q = mprop();
    expect("]");
    expect("(");
    Term t = term();
    expect(",");
    Term s = term();
    expect(")");
    return Term::abs(q, t, s);
  }
  bool proj_like = (id.rfind("proj", 0) == 0 || id.rfind("in", 0) == 0) &&
                   (cur() == '+' || cur() == '-');
  if (proj_like && !keywords().count(id)) {
    std::string digits = id.substr(id[0] == 'p' ? 4 : 2);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ParseError(std::string(id[0] == 'p' ? "projection" : "injection") +
                           " index must be 1 or 2",
                       l, c);
  }
  if (!keywords().count(id)) {
    if (id.rfind("_", 0) == 0 && !opts_.allow_reserved) throw ParseError("bad identifier", l, c);
    return Term::var(id);
  }
  Sign sg = sign_suffix(id);
  expect("(");
  Term result;
  if (id == "pair" || id == "capp") {
    Term t = term();
    expect(",");
    Term s = term();
    result = id == "pair" ? Term::pair(sg, t, s) : Term::capp(sg, t, s);
  } else if (id == "proj1" || id == "proj2") {
    result = Term::proj(sg, id.back() - '0', term());
  } else if (id == "in1" || id == "in2") {
    result = Term::inj(sg, id.back() - '0', term());
  } else if (id == "negi") {
    result = Term::negi(sg, term());
  } else if (id == "nege") {
    result = Term::nege(sg, term());
  } else if (id == "clam") {
    std::string x;
    MProp p;
    Term body = binder_body(x, p);
    result = Term::clam(sg, x, p, body);
  } else if (id == "case") {
    Term scrut = term();
    expect(",");
    std::string x, y;
    MProp p1, p2;
    Term b1 = binder_body(x, p1);
    expect(",");
    Term b2 = binder_body(y, p2);
    result = Term::case_of(sg, scrut, x, p1, b1, y, p2, b2);
  }
  expect(")");
  return result;
}

namespace {
template <class T, class F>
T parse_whole(std::string_view text, ParseOptions opts, F f) {
  Reader r(text, opts);
  T v = f(r);
  if (!r.at_end()) {
    if (r.peek("^")) r.fail("modes cannot be nested");
    r.fail("unexpected trailing input");
  }
  return v;
}
}  // namespace

PureProp parse_pure(std::string_view text, ParseOptions opts) {
  return parse_whole<PureProp>(text, opts, [](Reader& r) { return r.pure(); });
}
MProp parse_mprop(std::string_view text, ParseOptions opts) {
  return parse_whole<MProp>(text, opts, [](Reader& r) { return r.mprop(); });
}
Mode parse_mode(std::string_view text) {
  return parse_whole<Mode>(text, {}, [](Reader& r) { return r.mode(); });
}
Term parse_term(std::string_view text, ParseOptions opts) {
  return parse_whole<Term>(text, opts, [](Reader& r) { return r.term(); });
}

std::string to_string(Mode m) {
  std::string s = "^";
  s += m.strong() ? 's' : 'c';
  s += sign_char(m.sign);
  return s;
}

std::string to_string(const PureProp& a) {
  switch (a.kind()) {
    case PureProp::Kind::Var:
      return a.name();
    case PureProp::Kind::Neg:
      return "~" + to_string(a.inner());
    case PureProp::Kind::And:
      return "(" + to_string(a.left()) + " & " + to_string(a.right()) + ")";
    case PureProp::Kind::Or:
      return "(" + to_string(a.left()) + " | " + to_string(a.right()) + ")";
  }
  return {};
}

std::string to_string(const MProp& p) { return to_string(p.base) + to_string(p.mode); }

namespace {

class Printer {
 public:
  explicit Printer(const Term& t) : free_(fv(t)) {}

  void print(const Term& t, std::string& out) {
    std::string sg(1, sign_char(t.sign()));
    switch (t.kind()) {
      case TermKind::Free:
        out += t.name();
        return;
      case TermKind::Bound: {
        std::size_t k = t.bound_index();
        out += k < stack_.size() ? stack_[stack_.size() - 1 - k] : "#" + std::to_string(k);
        return;
      }
      case TermKind::Abs:
        out += "abs[" + to_string(t.annot()) + "](";
        print(t.child(0), out);
        out += ", ";
        print(t.child(1), out);
        out += ")";
        return;
      case TermKind::Pair:
      case TermKind::CApp:
        out += (t.kind() == TermKind::Pair ? "pair" : "capp") + sg + "(";
        print(t.child(0), out);
        out += ", ";
        print(t.child(1), out);
        out += ")";
        return;
      case TermKind::Proj:
      case TermKind::Inj:
      case TermKind::NegI:
      case TermKind::NegE: {
        std::string kw = t.kind() == TermKind::Proj  ? "proj" + std::to_string(t.index())
                         : t.kind() == TermKind::Inj ? "in" + std::to_string(t.index())
                         : t.kind() == TermKind::NegI ? "negi"
                                                      : "nege";
        out += kw + sg + "(";
        print(t.child(0), out);
        out += ")";
        return;
      }
      case TermKind::CLam:
        out += "clam" + sg + "(";
        binder(t.hint(0), t.annot(0), t.child(0), out);
        out += ")";
        return;
      case TermKind::Case:
        out += "case" + sg + "(";
        print(t.child(0), out);
        out += ", ";
        binder(t.hint(0), t.annot(0), t.child(1), out);
        out += ", ";
        binder(t.hint(1), t.annot(1), t.child(2), out);
        out += ")";
        return;
    }
  }

 private:
  void binder(const std::string& hint, const MProp& p, const Term& body, std::string& out) {
    std::set<std::string> avoid = free_;
    avoid.insert(stack_.begin(), stack_.end());
    for (const auto& k : keywords()) avoid.insert(k);
    std::string h = is_identifier(hint) ? hint : "k";
    std::string name = fresh_name(h, avoid);
    out += name + " : " + to_string(p) + ". ";
    stack_.push_back(name);
    print(body, out);
    stack_.pop_back();
  }

  std::set<std::string> free_;
  std::vector<std::string> stack_;
};

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  Printer(t).print(t, out);
  return out;
}

}  // namespace prk
