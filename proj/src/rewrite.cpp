#include "prk/rewrite.hpp"

#include <deque>
#include <unordered_set>

#include "prk/admissible.hpp"

namespace prk {

const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::Proj: return "proj";
    case RuleName::Case: return "case";
    case RuleName::Neg: return "neg";
    case RuleName::Beta: return "beta";
    case RuleName::AbsPairInj: return "absPairInj";
    case RuleName::AbsInjPair: return "absInjPair";
    case RuleName::AbsNeg: return "absNeg";
    case RuleName::Eta: return "eta";
  }
  return "?";
}

namespace {
Mode classical(Sign s) { return {Strength::Classical, s}; }
}  // namespace

std::optional<RuleName> redex_rule(const Term& t, RewriteMode mode) {
  switch (t.kind()) {
    case TermKind::Proj:
      if (t.child(0).kind() == TermKind::Pair && t.child(0).sign() == t.sign())
        return RuleName::Proj;
      break;
    case TermKind::Case:
      if (t.child(0).kind() == TermKind::Inj && t.child(0).sign() == t.sign())
        return RuleName::Case;
      break;
    case TermKind::NegE:
      if (t.child(0).kind() == TermKind::NegI && t.child(0).sign() == t.sign())
        return RuleName::Neg;
      break;
    case TermKind::CApp:
      if (t.child(0).kind() == TermKind::CLam && t.child(0).sign() == t.sign())
        return RuleName::Beta;
      break;
    case TermKind::Abs: {
      const Term& l = t.child(0);
      const Term& r = t.child(1);
      if (l.kind() == TermKind::Pair && r.kind() == TermKind::Inj && l.sign() != r.sign())
        return RuleName::AbsPairInj;
      if (l.kind() == TermKind::Inj && r.kind() == TermKind::Pair && l.sign() != r.sign())
        return RuleName::AbsInjPair;
      if (l.kind() == TermKind::NegI && r.kind() == TermKind::NegI && l.sign() != r.sign())
        return RuleName::AbsNeg;
      break;
    }
    case TermKind::CLam:
      if (mode == RewriteMode::Eta) {
        const Term& b = t.child(0);
        if (b.kind() == TermKind::CApp && b.sign() == t.sign() &&
            b.child(1).kind() == TermKind::Bound && b.child(1).bound_index() == 0 &&
            !has_loose(b.child(0), 0))
          return RuleName::Eta;
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<std::pair<RuleName, Term>> contract_root(const Term& t, RewriteMode mode) {
  auto r = redex_rule(t, mode);
  if (!r) return std::nullopt;
  switch (*r) {
    case RuleName::Proj:
      return std::pair{*r, t.child(0).child(t.index() - 1)};
    case RuleName::Case: {
      const Term& inj = t.child(0);
      return std::pair{*r, instantiate(t.child(inj.index()), inj.child(0))};
    }
    case RuleName::Neg:
      return std::pair{*r, t.child(0).child(0)};
    case RuleName::Beta:
      return std::pair{*r, instantiate(t.child(0).child(0), t.child(1))};
    case RuleName::AbsPairInj: {
      const Term& pair = t.child(0);
      const Term& inj = t.child(1);
      return std::pair{*r, abs_general(t.annot(), classical(pair.sign()),
                                       pair.child(inj.index() - 1), inj.child(0))};
    }
    case RuleName::AbsInjPair: {
      const Term& inj = t.child(0);
      const Term& pair = t.child(1);
      return std::pair{*r, abs_general(t.annot(), classical(inj.sign()), inj.child(0),
                                       pair.child(inj.index() - 1))};
    }
    case RuleName::AbsNeg: {
      const Term& l = t.child(0);
      return std::pair{*r, abs_general(t.annot(), classical(flip(l.sign())), l.child(0),
                                       t.child(1).child(0))};
    }
    case RuleName::Eta:
      return std::pair{*r, shift(t.child(0).child(0), -1, 0)};
  }
  return std::nullopt;
}

namespace {
void collect_redexes(const Term& t, RewriteMode mode, Position& pos, std::vector<Redex>& out) {
  if (auto r = redex_rule(t, mode)) out.push_back({*r, pos});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    collect_redexes(t.child(i), mode, pos, out);
    pos.pop_back();
  }
}

std::optional<TraceEntry> first_redex(const Term& t, RewriteMode mode, Position& pos,
                                      bool innermost) {
  if (!innermost) {
    if (auto c = contract_root(t, mode)) return TraceEntry{pos, c->first, t, c->second};
  }
  for (std::size_t k = 0; k < t.arity(); ++k) {
    std::size_t i = innermost ? t.arity() - 1 - k : k;
    pos.push_back(static_cast<std::uint8_t>(i));
    auto r = first_redex(t.child(i), mode, pos, innermost);
    pos.pop_back();
    if (r) return r;
  }
  if (innermost) {
    if (auto c = contract_root(t, mode)) return TraceEntry{pos, c->first, t, c->second};
  }
  return std::nullopt;
}
}  // namespace

std::vector<Redex> redexes(const Term& t, RewriteMode mode) {
  std::vector<Redex> out;
  Position pos;
  collect_redexes(t, mode, pos, out);
  return out;
}

Term contract_at(const Term& t, const Position& p, RewriteMode mode) {
  auto c = contract_root(subterm(t, p), mode);
  if (!c) throw std::invalid_argument("no redex at " + position_string(p));
  return replace_at(t, p, c->second);
}

std::optional<TraceEntry> step(const Term& t, RewriteMode mode) {
  Position pos;
  return first_redex(t, mode, pos, false);
}

std::optional<TraceEntry> step_innermost(const Term& t, RewriteMode mode) {
  Position pos;
  return first_redex(t, mode, pos, true);
}

Term apply(const Term& t, const TraceEntry& e) { return replace_at(t, e.pos, e.reduct); }

Normalized normalize(const Term& t, RewriteMode mode, std::size_t fuel, bool keep_trace) {
  Normalized out{t, {}, 0};
  while (auto s = step(out.term, mode)) {
    if (out.steps == fuel) throw FuelExhausted(fuel);
    out.term = apply(out.term, *s);
    ++out.steps;
    if (keep_trace) out.trace.push_back(std::move(*s));
  }
  return out;
}

Term normalize_innermost(const Term& t, RewriteMode mode, std::size_t fuel) {
  Term cur = t;
  std::size_t n = 0;
  while (auto s = step_innermost(cur, mode)) {
    if (n++ == fuel) throw FuelExhausted(fuel);
    cur = apply(cur, *s);
  }
  return cur;
}

Term replay(const Term& start, const Trace& trace) {
  Term cur = start;
  for (const auto& e : trace) {
    if (!(subterm(cur, e.pos) == e.redex)) throw std::invalid_argument("trace does not replay");
    cur = apply(cur, e);
  }
  return cur;
}

bool reachable(const Term& from, const Term& to, RewriteMode mode, std::size_t depth,
               std::size_t max_states, std::optional<RuleName> only, bool at_least_one) {
  if (!at_least_one && from == to) return true;
  std::unordered_set<Term> seen{from};
  std::deque<std::pair<Term, std::size_t>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d == depth) continue;
    for (const auto& r : redexes(cur, mode)) {
      if (only && r.rule != *only) continue;
      Term next = contract_at(cur, r.pos, mode);
      if (next == to) return true;
      if (seen.size() >= max_states) return false;
      if (seen.insert(next).second) queue.emplace_back(next, d + 1);
    }
  }
  return false;
}

bool is_canonical(const Term& t) {
  switch (t.kind()) {
    case TermKind::Pair:
    case TermKind::Inj:
    case TermKind::NegI:
    case TermKind::CLam:
      return true;
    default:
      return false;
  }
}

bool is_explosion(const Term& t) {
  return t.kind() == TermKind::Abs || t.kind() == TermKind::CApp;
}

bool is_neutral(const Term& t) {
  switch (t.kind()) {
    case TermKind::Free:
    case TermKind::Bound:
      return true;
    case TermKind::Proj:
    case TermKind::NegE:
      return is_neutral(t.child(0));
    case TermKind::Case:
      return is_neutral(t.child(0)) && is_normal(t.child(1)) && is_normal(t.child(2));
    case TermKind::CApp:
      return is_neutral(t.child(0)) && is_normal(t.child(1));
    case TermKind::Abs:
      return (is_neutral(t.child(0)) && is_normal(t.child(1))) ||
             (is_normal(t.child(0)) && is_neutral(t.child(1)));
    default:
      return false;
  }
}

bool is_normal(const Term& t) {
  switch (t.kind()) {
    case TermKind::Pair:
      return is_normal(t.child(0)) && is_normal(t.child(1));
    case TermKind::Inj:
    case TermKind::NegI:
    case TermKind::CLam:
      return is_normal(t.child(0));
    default:
      return is_neutral(t);
  }
}

bool case_context_open_explosion(const Term& t) {
  const Term* cur = &t;
  while (cur->kind() == TermKind::Case) cur = &cur->child(0);
  return is_explosion(*cur) && !fv(*cur).empty();
}

bool elim_context_var_or_open_explosion(const Term& t) {
  const Term* cur = &t;
  while (cur->kind() == TermKind::Case || cur->kind() == TermKind::Proj ||
         cur->kind() == TermKind::NegE)
    cur = &cur->child(0);
  if (cur->kind() == TermKind::Free) return true;
  return is_explosion(*cur) && !fv(*cur).empty();
}

ShapeReport classify(const Term& t, const Derivation* d) {
  ShapeReport r;
  r.normal = is_normal(t);
  r.neutral = is_neutral(t);
  r.canonical = is_canonical(t);
  r.shape = r.canonical ? "canonical" : r.neutral ? "neutral" : r.normal ? "normal" : "reducible";
  if (d) {
    if (!(d->subject == t))
      throw TypeError(TypeErrorKind::InvalidDerivation, "DerivationMismatch: subject differs");
    bool closed = fv(t).empty();
    bool classical_ctx = true;
    for (const auto& [x, p] : d->context.entries()) classical_ctx &= p.classical();
    if (closed) {
      r.clause = 1;
      r.clause_holds = r.normal && r.canonical;
    } else if (classical_ctx && d->conclusion.strong()) {
      r.clause = 2;
      r.clause_holds = r.normal && (r.canonical || case_context_open_explosion(t));
    } else if (classical_ctx) {
      r.clause = 3;
      r.clause_holds = r.normal && (t.kind() == TermKind::CLam ||
                                    elim_context_var_or_open_explosion(t));
    }
  }
  return r;
}

}  // namespace prk
