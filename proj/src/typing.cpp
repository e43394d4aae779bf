#include "prk/typing.hpp"

#include "prk/text.hpp"

namespace prk {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::Abs: return "Abs";
    case Rule::AndIPlus: return "I&+";
    case Rule::OrIMinus: return "I|-";
    case Rule::AndEPlus: return "E&+";
    case Rule::OrEMinus: return "E|-";
    case Rule::OrIPlus: return "I|+";
    case Rule::AndIMinus: return "I&-";
    case Rule::OrEPlus: return "E|+";
    case Rule::AndEMinus: return "E&-";
    case Rule::NegIPlus: return "I~+";
    case Rule::NegIMinus: return "I~-";
    case Rule::NegEPlus: return "E~+";
    case Rule::NegEMinus: return "E~-";
    case Rule::CIPlus: return "IC+";
    case Rule::CIMinus: return "IC-";
    case Rule::CEPlus: return "EC+";
    case Rule::CEMinus: return "EC-";
  }
  return "?";
}

Rule dual(Rule r) {
  switch (r) {
    case Rule::AndIPlus: return Rule::OrIMinus;
    case Rule::OrIMinus: return Rule::AndIPlus;
    case Rule::AndEPlus: return Rule::OrEMinus;
    case Rule::OrEMinus: return Rule::AndEPlus;
    case Rule::OrIPlus: return Rule::AndIMinus;
    case Rule::AndIMinus: return Rule::OrIPlus;
    case Rule::OrEPlus: return Rule::AndEMinus;
    case Rule::AndEMinus: return Rule::OrEPlus;
    case Rule::NegIPlus: return Rule::NegIMinus;
    case Rule::NegIMinus: return Rule::NegIPlus;
    case Rule::NegEPlus: return Rule::NegEMinus;
    case Rule::NegEMinus: return Rule::NegEPlus;
    case Rule::CIPlus: return Rule::CIMinus;
    case Rule::CIMinus: return Rule::CIPlus;
    case Rule::CEPlus: return Rule::CEMinus;
    case Rule::CEMinus: return Rule::CEPlus;
    default: return r;
  }
}

const char* error_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::ModeMismatch: return "ModeMismatch";
    case TypeErrorKind::NotStrong: return "NotStrong";
    case TypeErrorKind::AnnotationMismatch: return "AnnotationMismatch";
    case TypeErrorKind::SignMismatch: return "SignMismatch";
    case TypeErrorKind::CannotInfer: return "CannotInfer";
    case TypeErrorKind::DuplicateVariable: return "DuplicateVariable";
    case TypeErrorKind::TypesNotOpposite: return "TypesNotOpposite";
    case TypeErrorKind::NotClassical: return "NotClassical";
    case TypeErrorKind::NoSuchAssumption: return "NoSuchAssumption";
    case TypeErrorKind::InvalidDerivation: return "InvalidDerivation";
  }
  return "?";
}

Context::Context(std::initializer_list<Entry> entries) {
  for (const auto& [x, p] : entries) add(x, p);
}

void Context::add(const std::string& x, const MProp& p) {
  if (contains(x)) throw TypeError(TypeErrorKind::DuplicateVariable, "'" + x + "' already bound");
  entries_.emplace_back(x, p);
}

Context Context::extended(const std::string& x, const MProp& p) const {
  Context c = *this;
  c.add(x, p);
  return c;
}

Context Context::with_type(const std::string& x, const MProp& p) const {
  Context c = *this;
  for (auto& e : c.entries_)
    if (e.first == x) e.second = p;
  return c;
}

Context Context::without(const std::string& x) const {
  Context c;
  for (const auto& e : entries_)
    if (e.first != x) c.entries_.push_back(e);
  return c;
}

std::optional<MProp> Context::lookup(const std::string& x) const {
  for (const auto& e : entries_)
    if (e.first == x) return e.second;
  return std::nullopt;
}

std::set<std::string> Context::names() const {
  std::set<std::string> s;
  for (const auto& e : entries_) s.insert(e.first);
  return s;
}

Context dual(const Context& c) {
  Context d;
  for (const auto& [x, p] : c.entries()) d.add(x, dual(p));
  return d;
}

std::pair<std::string, Term> open_binder(const Term& t, std::size_t child, const Context& ctx) {
  std::set<std::string> avoid = ctx.names();
  collect_fv(t, avoid);
  std::string hint = t.hint(t.kind() == TermKind::Case ? static_cast<int>(child) - 1 : 0);
  std::string x = fresh_name(is_identifier(hint) ? hint : "k", avoid);
  return {x, instantiate(t.child(child), Term::var(x))};
}

namespace {

[[noreturn]] void fail(TypeErrorKind k, const std::string& msg) { throw TypeError(k, msg); }

std::string show(const MProp& p) { return to_string(p); }

using PK = PureProp::Kind;

MProp at(const PureProp& a, Strength st, Sign sg) { return {a, {st, sg}}; }

// Premise type must be classical with the given sign.
void need_classical(const MProp& p, Sign sg, const char* what) {
  if (!p.classical())
    fail(TypeErrorKind::ModeMismatch, std::string(what) + " must be classical, got " + show(p));
  if (p.sign() != sg)
    fail(TypeErrorKind::SignMismatch,
         std::string(what) + " has the wrong sign: " + show(p));
}

void need_strong(const MProp& p, Sign sg, PK kind, const char* what) {
  if (p.sign() != sg) fail(TypeErrorKind::SignMismatch, std::string(what) + ": " + show(p));
  if (!p.strong() || p.base.kind() != kind)
    fail(TypeErrorKind::ModeMismatch, std::string(what) + ": unexpected type " + show(p));
}

void mismatch(const MProp& expected, const MProp& got) {
  if (expected == got) return;
  if (expected.base == got.base && expected.mode.strength == got.mode.strength)
    fail(TypeErrorKind::SignMismatch, "expected " + show(expected) + ", got " + show(got));
  fail(TypeErrorKind::ModeMismatch, "expected " + show(expected) + ", got " + show(got));
}

bool cannot_infer(const TypeError& e) { return e.kind() == TypeErrorKind::CannotInfer; }

class Checker {
 public:
  Derivation synth(const Context& ctx, const Term& t);
  Derivation check(const Context& ctx, const Term& t, const MProp& p);

 private:
  Derivation node(Rule r, const Context& ctx, const Term& t, MProp concl,
                  std::vector<Derivation> prem, std::vector<std::string> opened = {}) {
    if (opened.empty()) opened.assign(prem.size(), "");
    return Derivation{r, ctx, t, std::move(concl), std::move(prem), std::move(opened)};
  }
  // Synthesizes one of two sibling premises and checks the other against f(type).
  template <class F>
  std::pair<Derivation, Derivation> either(const Context& c1, const Term& t1, const Context& c2,
                                           const Term& t2, F other_type);
  Derivation case_node(const Context& ctx, const Term& t, const std::optional<MProp>& expected);
};

template <class F>
std::pair<Derivation, Derivation> Checker::either(const Context& c1, const Term& t1,
                                                  const Context& c2, const Term& t2,
                                                  F other_type) {
  try {
    Derivation d1 = synth(c1, t1);
    Derivation d2 = check(c2, t2, other_type(d1.conclusion));
    return {std::move(d1), std::move(d2)};
  } catch (const TypeError& e) {
    if (!cannot_infer(e)) throw;
  }
  Derivation d2 = synth(c2, t2);
  Derivation d1 = check(c1, t1, other_type(d2.conclusion));
  return {std::move(d1), std::move(d2)};
}

Derivation Checker::case_node(const Context& ctx, const Term& t,
                              const std::optional<MProp>& expected) {
  Sign sg = t.sign();
  const MProp& p1 = t.annot(0);
  const MProp& p2 = t.annot(1);
  if (!p1.classical() || p1.sign() != sg || !p2.classical() || p2.sign() != sg)
    fail(TypeErrorKind::AnnotationMismatch,
         "case binders must be classical with sign " + std::string(1, sign_char(sg)));
  PureProp scrut_base = sg == Sign::Plus ? PureProp::disj(p1.base, p2.base)
                                         : PureProp::conj(p1.base, p2.base);
  MProp scrut_type = at(scrut_base, Strength::Strong, sg);
  Derivation ds;
  try {
    ds = synth(ctx, t.child(0));
    if (!(ds.conclusion == scrut_type))
      fail(TypeErrorKind::AnnotationMismatch, "case binders " + show(p1) + ", " + show(p2) +
                                                  " disagree with scrutinee type " +
                                                  show(ds.conclusion));
  } catch (const TypeError& e) {
    if (!cannot_infer(e)) throw;
    ds = check(ctx, t.child(0), scrut_type);
  }
  auto [x, b1] = open_binder(t, 1, ctx);
  auto [y, b2] = open_binder(t, 2, ctx);
  Context c1 = ctx.extended(x, p1), c2 = ctx.extended(y, p2);
  Derivation d1, d2;
  if (expected) {
    d1 = check(c1, b1, *expected);
    d2 = check(c2, b2, *expected);
  } else {
    std::tie(d1, d2) = either(c1, b1, c2, b2, [](const MProp& p) { return p; });
  }
  MProp concl = d1.conclusion;
  return node(sg == Sign::Plus ? Rule::OrEPlus : Rule::AndEMinus, ctx, t, concl,
              {std::move(ds), std::move(d1), std::move(d2)}, {"", x, y});
}

Derivation Checker::synth(const Context& ctx, const Term& t) {
  Sign sg = t.kind() == TermKind::Free || t.kind() == TermKind::Bound ? Sign::Plus : t.sign();
  bool plus = sg == Sign::Plus;
  switch (t.kind()) {
    case TermKind::Free: {
      auto p = ctx.lookup(t.name());
      if (!p) fail(TypeErrorKind::UnboundVariable, "'" + t.name() + "' is not in the context");
      return node(Rule::Ax, ctx, t, *p, {});
    }
    case TermKind::Bound:
      fail(TypeErrorKind::InvalidDerivation, "dangling bound variable");
    case TermKind::Abs: {
      auto [d1, d2] = either(ctx, t.child(0), ctx, t.child(1),
                             [](const MProp& p) { return opposite(p); });
      if (!d1.conclusion.strong())
        fail(TypeErrorKind::NotStrong, "absurdity needs a strong premise, got " +
                                           show(d1.conclusion));
      return node(Rule::Abs, ctx, t, t.annot(), {std::move(d1), std::move(d2)});
    }
    case TermKind::Pair: {
      Derivation d1 = synth(ctx, t.child(0));
      Derivation d2 = synth(ctx, t.child(1));
      need_classical(d1.conclusion, sg, "pair component");
      need_classical(d2.conclusion, sg, "pair component");
      PureProp b = plus ? PureProp::conj(d1.conclusion.base, d2.conclusion.base)
                        : PureProp::disj(d1.conclusion.base, d2.conclusion.base);
      MProp c = at(b, Strength::Strong, sg);
      return node(plus ? Rule::AndIPlus : Rule::OrIMinus, ctx, t, c,
                  {std::move(d1), std::move(d2)});
    }
    case TermKind::Proj: {
      Derivation d = synth(ctx, t.child(0));
      need_strong(d.conclusion, sg, plus ? PK::And : PK::Or, "projection argument");
      MProp c = at(t.index() == 1 ? d.conclusion.base.left() : d.conclusion.base.right(),
                   Strength::Classical, sg);
      return node(plus ? Rule::AndEPlus : Rule::OrEMinus, ctx, t, c, {std::move(d)});
    }
    case TermKind::Inj:
      fail(TypeErrorKind::CannotInfer,
           "injection " + to_string(t) + " needs an expected type");
    case TermKind::Case:
      return case_node(ctx, t, std::nullopt);
    case TermKind::NegI: {
      Derivation d = synth(ctx, t.child(0));
      need_classical(d.conclusion, flip(sg), "negation-introduction argument");
      MProp c = at(PureProp::neg(d.conclusion.base), Strength::Strong, sg);
      return node(plus ? Rule::NegIPlus : Rule::NegIMinus, ctx, t, c, {std::move(d)});
    }
    case TermKind::NegE: {
      Derivation d = synth(ctx, t.child(0));
      need_strong(d.conclusion, sg, PK::Neg, "negation-elimination argument");
      MProp c = at(d.conclusion.base.inner(), Strength::Classical, flip(sg));
      return node(plus ? Rule::NegEPlus : Rule::NegEMinus, ctx, t, c, {std::move(d)});
    }
    case TermKind::CLam: {
      const MProp& p = t.annot();
      if (!p.classical() || p.sign() != flip(sg))
        fail(TypeErrorKind::AnnotationMismatch,
             "clam" + std::string(1, sign_char(sg)) + " binder must be ^c" +
                 sign_char(flip(sg)) + ", got " + show(p));
      auto [x, body] = open_binder(t, 0, ctx);
      Derivation d = check(ctx.extended(x, p), body, at(p.base, Strength::Strong, sg));
      return node(plus ? Rule::CIPlus : Rule::CIMinus, ctx, t,
                  at(p.base, Strength::Classical, sg), {std::move(d)}, {x});
    }
    case TermKind::CApp: {
      auto [d1, d2] = either(ctx, t.child(0), ctx, t.child(1),
                             [](const MProp& p) { return opposite(p); });
      need_classical(d1.conclusion, sg, "classical application head");
      MProp c = at(d1.conclusion.base, Strength::Strong, sg);
      return node(plus ? Rule::CEPlus : Rule::CEMinus, ctx, t, c, {std::move(d1), std::move(d2)});
    }
  }
  fail(TypeErrorKind::InvalidDerivation, "unknown term");
}

Derivation Checker::check(const Context& ctx, const Term& t, const MProp& p) {
  bool plus = p.sign() == Sign::Plus;
  switch (t.kind()) {
    case TermKind::Inj: {
      if (t.sign() != p.sign())
        fail(TypeErrorKind::SignMismatch, to_string(t) + " cannot have type " + show(p));
      if (!p.strong() || p.base.kind() != (plus ? PK::Or : PK::And))
        fail(TypeErrorKind::ModeMismatch, to_string(t) + " cannot have type " + show(p));
      const PureProp& b = t.index() == 1 ? p.base.left() : p.base.right();
      Derivation d = check(ctx, t.child(0), at(b, Strength::Classical, p.sign()));
      return node(plus ? Rule::OrIPlus : Rule::AndIMinus, ctx, t, p, {std::move(d)});
    }
    case TermKind::Pair: {
      if (t.sign() != p.sign())
        fail(TypeErrorKind::SignMismatch, to_string(t) + " cannot have type " + show(p));
      if (!p.strong() || p.base.kind() != (plus ? PK::And : PK::Or))
        fail(TypeErrorKind::ModeMismatch, to_string(t) + " cannot have type " + show(p));
      Derivation d1 = check(ctx, t.child(0), at(p.base.left(), Strength::Classical, p.sign()));
      Derivation d2 = check(ctx, t.child(1), at(p.base.right(), Strength::Classical, p.sign()));
      return node(plus ? Rule::AndIPlus : Rule::OrIMinus, ctx, t, p,
                  {std::move(d1), std::move(d2)});
    }
    case TermKind::NegI: {
      if (t.sign() != p.sign())
        fail(TypeErrorKind::SignMismatch, to_string(t) + " cannot have type " + show(p));
      if (!p.strong() || p.base.kind() != PK::Neg)
        fail(TypeErrorKind::ModeMismatch, to_string(t) + " cannot have type " + show(p));
      Derivation d =
          check(ctx, t.child(0), at(p.base.inner(), Strength::Classical, flip(p.sign())));
      return node(plus ? Rule::NegIPlus : Rule::NegIMinus, ctx, t, p, {std::move(d)});
    }
    case TermKind::Case:
      return case_node(ctx, t, p);
    case TermKind::Abs: {
      if (!(t.annot() == p))
        fail(TypeErrorKind::AnnotationMismatch,
             "absurdity annotated " + show(t.annot()) + " used at " + show(p));
      return synth(ctx, t);
    }
    default: {
      Derivation d = synth(ctx, t);
      mismatch(p, d.conclusion);
      return d;
    }
  }
}

}  // namespace

Derivation infer_type(const Context& ctx, const Term& t) { return Checker().synth(ctx, t); }

Derivation check_type(const Context& ctx, const Term& t, const MProp& expected) {
  return Checker().check(ctx, t, expected);
}

std::optional<MProp> type_of(const Context& ctx, const Term& t) {
  try {
    return infer_type(ctx, t).conclusion;
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

namespace {

bool bad(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

Rule rule_for(const Term& t) {
  bool plus = t.sign() == Sign::Plus;
  switch (t.kind()) {
    case TermKind::Free: return Rule::Ax;
    case TermKind::Abs: return Rule::Abs;
    case TermKind::Pair: return plus ? Rule::AndIPlus : Rule::OrIMinus;
    case TermKind::Proj: return plus ? Rule::AndEPlus : Rule::OrEMinus;
    case TermKind::Inj: return plus ? Rule::OrIPlus : Rule::AndIMinus;
    case TermKind::Case: return plus ? Rule::OrEPlus : Rule::AndEMinus;
    case TermKind::NegI: return plus ? Rule::NegIPlus : Rule::NegIMinus;
    case TermKind::NegE: return plus ? Rule::NegEPlus : Rule::NegEMinus;
    case TermKind::CLam: return plus ? Rule::CIPlus : Rule::CIMinus;
    case TermKind::CApp: return plus ? Rule::CEPlus : Rule::CEMinus;
    default: return Rule::Ax;
  }
}

bool validate_node(const Derivation& d, std::string* why) {
  const Term& t = d.subject;
  if (t.empty() || t.kind() == TermKind::Bound) return bad(why, "subject is not a term");
  if (rule_for(t) != d.rule) return bad(why, "rule does not match subject");
  if (d.premises.size() != t.arity() || d.opened.size() != t.arity())
    return bad(why, "wrong number of premises");
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Derivation& p = d.premises[i];
    if (t.binds(i)) {
      const std::string& x = d.opened[i];
      if (d.context.contains(x) || occurs_free(t, x)) return bad(why, "binder not fresh");
      MProp bt = t.kind() == TermKind::Case ? t.annot(static_cast<int>(i) - 1) : t.annot();
      if (!(p.context == d.context.extended(x, bt))) return bad(why, "premise context");
      if (!(p.subject == instantiate(t.child(i), Term::var(x))))
        return bad(why, "premise subject");
    } else {
      if (!(p.context == d.context)) return bad(why, "premise context");
      if (!(p.subject == t.child(i))) return bad(why, "premise subject");
    }
  }
  auto concl = [&](std::size_t i) -> const MProp& { return d.premises[i].conclusion; };
  const MProp& c = d.conclusion;
  Sign sg = t.kind() == TermKind::Free || t.kind() == TermKind::Abs ? Sign::Plus : t.sign();
  bool plus = sg == Sign::Plus;
  MProp want;
  auto cls = [](const PureProp& a, Sign s) { return at(a, Strength::Classical, s); };
  auto str = [](const PureProp& a, Sign s) { return at(a, Strength::Strong, s); };
  switch (t.kind()) {
    case TermKind::Free: {
      auto p = d.context.lookup(t.name());
      if (!p || !(*p == c)) return bad(why, "Ax: context disagrees");
      return true;
    }
    case TermKind::Abs:
      if (!concl(0).strong() || !(concl(1) == opposite(concl(0))) || !(c == t.annot()))
        return bad(why, "Abs premises");
      return true;
    case TermKind::Pair: {
      if (!concl(0).classical() || concl(0).sign() != sg || !concl(1).classical() ||
          concl(1).sign() != sg)
        return bad(why, "pair premises");
      auto b = plus ? PureProp::conj(concl(0).base, concl(1).base)
                    : PureProp::disj(concl(0).base, concl(1).base);
      want = str(b, sg);
      break;
    }
    case TermKind::Proj: {
      const MProp& p = concl(0);
      if (!p.strong() || p.sign() != sg || p.base.kind() != (plus ? PK::And : PK::Or))
        return bad(why, "projection premise");
      want = cls(t.index() == 1 ? p.base.left() : p.base.right(), sg);
      break;
    }
    case TermKind::Inj: {
      if (!c.strong() || c.sign() != sg || c.base.kind() != (plus ? PK::Or : PK::And))
        return bad(why, "injection conclusion");
      if (!(concl(0) == cls(t.index() == 1 ? c.base.left() : c.base.right(), sg)))
        return bad(why, "injection premise");
      return true;
    }
    case TermKind::Case: {
      auto b = plus ? PureProp::disj(t.annot(0).base, t.annot(1).base)
                    : PureProp::conj(t.annot(0).base, t.annot(1).base);
      if (!(t.annot(0) == cls(t.annot(0).base, sg)) || !(t.annot(1) == cls(t.annot(1).base, sg)))
        return bad(why, "case binder modes");
      if (!(concl(0) == str(b, sg))) return bad(why, "case scrutinee");
      if (!(concl(1) == c) || !(concl(2) == c)) return bad(why, "case branches");
      return true;
    }
    case TermKind::NegI:
      if (!concl(0).classical() || concl(0).sign() != flip(sg)) return bad(why, "negi premise");
      want = str(PureProp::neg(concl(0).base), sg);
      break;
    case TermKind::NegE:
      if (!concl(0).strong() || concl(0).sign() != sg || concl(0).base.kind() != PK::Neg)
        return bad(why, "nege premise");
      want = cls(concl(0).base.inner(), flip(sg));
      break;
    case TermKind::CLam:
      if (!(t.annot() == cls(t.annot().base, flip(sg)))) return bad(why, "clam binder");
      if (!(concl(0) == str(t.annot().base, sg))) return bad(why, "clam body");
      want = cls(t.annot().base, sg);
      break;
    case TermKind::CApp:
      if (!concl(0).classical() || concl(0).sign() != sg || !(concl(1) == opposite(concl(0))))
        return bad(why, "capp premises");
      want = str(concl(0).base, sg);
      break;
    default:
      return bad(why, "unknown");
  }
  if (!(want == c)) return bad(why, "conclusion should be " + to_string(want));
  return true;
}

}  // namespace

bool validate(const Derivation& d, bool deep, std::string* why) {
  if (!validate_node(d, why)) return false;
  if (deep)
    for (const auto& p : d.premises)
      if (!validate(p, true, why)) return false;
  return true;
}

Derivation dual(const Derivation& d) {
  Derivation r;
  r.rule = dual(d.rule);
  r.context = dual(d.context);
  r.subject = dual(d.subject);
  r.conclusion = dual(d.conclusion);
  r.opened = d.opened;
  for (const auto& p : d.premises) r.premises.push_back(dual(p));
  return r;
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

}  // namespace prk
