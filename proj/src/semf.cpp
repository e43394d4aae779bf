#include "prk/semf.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "prk/rewrite.hpp"

namespace prk {

namespace {
using PK = PureProp::Kind;
using f::Type;

MProp cls(const PureProp& a, Sign s) { return {a, {Strength::Classical, s}}; }
MProp str(const PureProp& a, Sign s) { return {a, {Strength::Strong, s}}; }

// Strong types whose translation is a product (the others with two parts are sums).
bool product_like(const MProp& p) {
  return p.base.kind() == (p.sign() == Sign::Plus ? PK::And : PK::Or);
}
}  // namespace

f::Type translate_prop(const MProp& p) {
  const PureProp& a = p.base;
  Sign s = p.sign();
  if (p.classical()) {
    Type pl = translate_prop(str(a, Sign::Plus)), mi = translate_prop(str(a, Sign::Minus));
    return s == Sign::Plus ? Type::pos(pl, mi) : Type::neg(pl, mi);
  }
  switch (a.kind()) {
    case PK::Var:
      return s == Sign::Plus ? Type::var(a.name()) : Type::arrow(Type::var(a.name()), f::zero());
    case PK::Neg:
      return Type::arrow(f::one(), translate_prop(cls(a.inner(), flip(s))));
    default: {
      Type l = translate_prop(cls(a.left(), s)), r = translate_prop(cls(a.right(), s));
      return product_like(p) ? f::times(l, r) : f::plus(l, r);
    }
  }
}

f::Context translate_context(const Context& ctx) {
  f::Context out;
  for (const auto& [x, p] : ctx.entries()) out[x] = translate_prop(p);
  return out;
}

const f::Term& Translator::funabs(const MProp& p, const MProp& q) {
  auto key = std::make_pair(p, q);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  using f::Term;
  Type tp = translate_prop(p), tn = translate_prop(opposite(p)), tq = translate_prop(q);
  Term x = Term::var("%x"), y = Term::var("%y"), z = Term::var("%z");
  Sign s = p.sign();
  const PureProp& a = p.base;
  Term body;
  if (p.classical()) {
    body = Term::app(Term::app(funabs(str(a, s), q), Term::app(x, y)), Term::app(y, x));
  } else if (a.kind() == PK::Var) {
    body = s == Sign::Plus ? f::abort(tq, Term::app(y, x)) : f::abort(tq, Term::app(x, y));
  } else if (a.kind() == PK::Neg) {
    Term tr = f::triv();
    body = Term::app(Term::app(funabs(cls(a.inner(), flip(s)), q), Term::app(x, tr)),
                     Term::app(y, tr));
  } else {
    MProp sl = cls(a.left(), s), sr = cls(a.right(), s);
    MProp ol = cls(a.left(), flip(s)), orr = cls(a.right(), flip(s));
    Type tsl = translate_prop(sl), tsr = translate_prop(sr);
    Type tol = translate_prop(ol), tor = translate_prop(orr);
    Term b1, b2;
    if (product_like(p)) {
      b1 = Term::app(Term::app(funabs(sl, q), f::proj(1, tsl, tsr, x)), z);
      b2 = Term::app(Term::app(funabs(sr, q), f::proj(2, tsl, tsr, x)), z);
      body = f::case_of(y, tol, tor, tq, "%z", b1, "%z", b2);
    } else {
      b1 = Term::app(Term::app(funabs(sl, q), z), f::proj(1, tol, tor, y));
      b2 = Term::app(Term::app(funabs(sr, q), z), f::proj(2, tol, tor, y));
      body = f::case_of(x, tsl, tsr, tq, "%z", b1, "%z", b2);
    }
  }
  Term result = Term::lam("%x", tp, Term::lam("%y", tn, body));
  return memo_.emplace(key, std::move(result)).first->second;
}

f::Term Translator::term(const Derivation& d) {
  using f::Term;
  const prk::Term& t = d.subject;
  auto prem = [&](std::size_t i) { return term(d.premises[i]); };
  auto pty = [&](std::size_t i) { return translate_prop(d.premises[i].conclusion); };
  auto parts = [&](const MProp& p) {
    Sign s = p.sign();
    return std::make_pair(translate_prop(cls(p.base.left(), s)),
                          translate_prop(cls(p.base.right(), s)));
  };
  switch (d.rule) {
    case Rule::Ax:
      return Term::var(t.name());
    case Rule::Abs:
      return Term::app(Term::app(funabs(d.premises[0].conclusion, d.conclusion), prem(0)),
                       prem(1));
    case Rule::AndIPlus:
    case Rule::OrIMinus:
      return f::pair(pty(0), pty(1), prem(0), prem(1));
    case Rule::AndEPlus:
    case Rule::OrEMinus: {
      auto [l, r] = parts(d.premises[0].conclusion);
      return f::proj(t.index(), l, r, prem(0));
    }
    case Rule::OrIPlus:
    case Rule::AndIMinus: {
      auto [l, r] = parts(d.conclusion);
      return f::inj(t.index(), l, r, prem(0));
    }
    case Rule::OrEPlus:
    case Rule::AndEMinus:
      return f::case_of(prem(0), translate_prop(t.annot(0)), translate_prop(t.annot(1)),
                        translate_prop(d.conclusion), d.opened[1], prem(1), d.opened[2],
                        prem(2));
    case Rule::NegIPlus:
    case Rule::NegIMinus:
      return Term::lam_raw("u", f::one(), f::shift_terms(prem(0), 1));
    case Rule::NegEPlus:
    case Rule::NegEMinus:
      return Term::app(prem(0), f::triv());
    case Rule::CIPlus:
    case Rule::CIMinus:
      return Term::lam(d.opened[0], translate_prop(t.annot()), prem(0));
    case Rule::CEPlus:
    case Rule::CEMinus:
      return Term::app(prem(0), prem(1));
  }
  throw TypeError(TypeErrorKind::InvalidDerivation, "unknown rule");
}

f::Term translate_term(const Derivation& d) { return Translator().term(d); }

namespace {
void target_subterms(const f::Term& t, std::unordered_set<f::Term>& out) {
  if (t.size() > 1 && t.loose() == 0 && t.loose_type() == 0) out.insert(t);
  for (std::size_t i = 0; i < t.arity(); ++i) target_subterms(t.child(i), out);
}

void successors(const f::Term& t, const std::unordered_set<f::Term>& frozen,
                std::vector<f::Term>& out) {
  if (t.loose() == 0 && t.loose_type() == 0 && frozen.count(t)) return;
  if (f::is_redex(t)) out.push_back(f::contract(t));
  // weak reduction: binder bodies are left alone
  if (t.kind() == f::TmKind::Lam || t.kind() == f::TmKind::TLam) return;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    std::vector<f::Term> sub;
    successors(t.child(i), frozen, sub);
    for (auto& r : sub) {
      std::vector<f::Term> kids;
      for (std::size_t j = 0; j < t.arity(); ++j) kids.push_back(j == i ? r : t.child(j));
      out.push_back(t.with_children(std::move(kids)));
    }
  }
}

Simulation search(const f::Term& from, const f::Term& to, std::size_t depth,
                  std::size_t max_states) {
  Simulation res;
  std::unordered_set<f::Term> frozen;
  target_subterms(to, frozen);
  std::unordered_set<f::Term> seen{from};
  std::deque<std::pair<f::Term, std::size_t>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [cur, n] = queue.front();
    queue.pop_front();
    ++res.states;
    if (n == depth) continue;
    std::vector<f::Term> next;
    successors(cur, frozen, next);
    for (auto& u : next) {
      if (u == to) {
        res.found = true;
        res.steps = n + 1;
        return res;
      }
      if (seen.size() >= max_states) {
        res.truncated = true;
        continue;
      }
      if (seen.insert(u).second) queue.emplace_back(u, n + 1);
    }
  }
  return res;
}
}  // namespace

Simulation check_simulation(const Derivation& d, const Term& s, std::size_t depth,
                            std::size_t max_states) {
  Translator tr;
  // The translation is compositional, so a root step inside the redex's own derivation
  // lifts to the whole term.
  for (const auto& r : redexes(d.subject, RewriteMode::Plain)) {
    if (!(contract_at(d.subject, r.pos, RewriteMode::Plain) == s)) continue;
    const Derivation* sub = &d;
    for (auto i : r.pos) sub = &sub->premises[i];
    Term reduct = contract_root(sub->subject, RewriteMode::Plain)->second;
    Derivation target = check_type(sub->context, reduct, sub->conclusion);
    return search(tr.term(*sub), tr.term(target), depth, max_states);
  }
  Derivation target = check_type(d.context, s, d.conclusion);
  return search(tr.term(d), tr.term(target), depth, max_states);
}

Simulation check_simulation(const Term& t, const Term& s, const Derivation& d, std::size_t depth) {
  if (!(d.subject == t))
    throw TypeError(TypeErrorKind::InvalidDerivation, "DerivationMismatch");
  return check_simulation(d, s, depth);
}

}  // namespace prk
