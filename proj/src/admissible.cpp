#include "prk/admissible.hpp"

#include "prk/text.hpp"

namespace prk {

namespace {
MProp at(const PureProp& a, Strength st, Sign sg) { return {a, {st, sg}}; }

std::string fresh_for(const std::string& hint, const Context& ctx,
                      std::initializer_list<const Term*> terms) {
  std::set<std::string> avoid = ctx.names();
  for (const Term* t : terms) collect_fv(*t, avoid);
  return fresh_name(hint, avoid);
}
}  // namespace

Term abs_general(const MProp& q, Mode left_mode, const Term& t, const Term& s) {
  if (left_mode.strong()) return Term::abs(q, t, s);
  Sign sg = left_mode.sign;
  return Term::abs(q, Term::capp(sg, t, s), Term::capp(flip(sg), s, t));
}

Term mk_abs_general(const MProp& q, const MProp& p, const MProp& p_opp, const Term& t,
                    const Term& s) {
  if (!(p_opp == opposite(p)))
    throw TypeError(TypeErrorKind::TypesNotOpposite, to_string(p) + " vs " + to_string(p_opp));
  return abs_general(q, p.mode, t, s);
}

Term mk_abs_general(const Context& ctx, const MProp& q, const Term& t, const Term& s) {
  MProp p = infer_type(ctx, t).conclusion;
  MProp p2 = infer_type(ctx, s).conclusion;
  return mk_abs_general(q, p, p2, t, s);
}

Term mk_contrapose(const std::string& x, const MProp& p, const std::string& y, const Term& t,
                   const MProp& q) {
  if (!p.classical())
    throw TypeError(TypeErrorKind::NotClassical, "contraposition needs a classical assumption");
  MProp target = at(p.base, Strength::Strong, flip(p.sign()));
  return Term::clam(flip(p.sign()), x, p, abs_general(target, q.mode, t, Term::var(y)));
}

Term mk_contrapose(const Context& ctx, const std::string& x, const std::string& y,
                   const Term& t) {
  auto p = ctx.lookup(x);
  if (!p) throw TypeError(TypeErrorKind::UnboundVariable, x);
  MProp q = infer_type(ctx, t).conclusion;
  return mk_contrapose(x, *p, y, t, q);
}

Term vacuous_clam(Sign sg, const MProp& binder, const Term& body) {
  return Term::clam_raw(sg, "k", binder, shift(body, 1));
}

MProp lem_type(const PureProp& a, Sign sign) {
  PureProp na = PureProp::neg(a);
  return sign == Sign::Plus ? at(PureProp::disj(a, na), Strength::Classical, Sign::Plus)
                            : at(PureProp::conj(a, na), Strength::Classical, Sign::Minus);
}

namespace {
// lemP; lemN is its dual.
Term lem_plus(const PureProp& a) {
  const Sign P = Sign::Plus, M = Sign::Minus;
  PureProp na = PureProp::neg(a);
  PureProp lem = PureProp::disj(a, na);
  MProp lem_minus = at(lem, Strength::Classical, M);
  MProp na_minus = at(na, Strength::Classical, M);
  MProp a_minus = at(a, Strength::Classical, M);
  Term y = Term::var("y"), z = Term::var("z"), x = Term::var("x");
  Term witness = vacuous_clam(P, na_minus, Term::negi(P, z));
  Term inner = vacuous_clam(
      P, lem_minus,
      Term::inj(P, 1,
                Term::clam(P, "z", a_minus,
                           abs_general(at(a, Strength::Strong, P), na_minus.mode, y, witness))));
  Term body = Term::inj(
      P, 2,
      Term::clam(P, "y", na_minus,
                 Term::negi(P, Term::proj(M, 1, Term::capp(M, x, inner)))));
  return Term::clam(P, "x", lem_minus, body);
}
}  // namespace

Term mk_lem(const PureProp& a, Sign sign) {
  if (sign == Sign::Plus) return lem_plus(a);
  return dual(lem_plus(dual(a)));
}

Term project_conclusion(const Term& t, const MProp& p) {
  if (p.classical()) return t;
  return vacuous_clam(p.sign(), at(p.base, Strength::Classical, flip(p.sign())), t);
}

Term strengthen(const std::string& k, const MProp& p, const Term& t) {
  Sign sg = p.sign();
  return Term::clam(sg, k, opposite(p), Term::capp(sg, t, Term::var(k)));
}

namespace {

bool negative_rule(Rule r) {
  switch (r) {
    case Rule::OrIMinus:
    case Rule::OrEMinus:
    case Rule::AndIMinus:
    case Rule::AndEMinus:
    case Rule::NegIMinus:
    case Rule::NegEMinus:
    case Rule::CIMinus:
    case Rule::CEMinus:
      return true;
    default:
      return false;
  }
}

class Projector {
 public:
  explicit Projector(std::string target) : x_(std::move(target)) {}

  Term run(const Derivation& d) {
    if (negative_rule(d.rule)) return dual(run(dual(d)));
    const Sign P = Sign::Plus, M = Sign::Minus;
    const Term& t = d.subject;
    const MProp& q = d.conclusion;
    auto prem = [&](std::size_t i) { return run(d.premises[i]); };
    auto pconcl = [&](std::size_t i) -> const MProp& { return d.premises[i].conclusion; };
    switch (d.rule) {
      case Rule::Ax:
        if (t.name() == x_) return t;
        return project_conclusion(t, q);
      case Rule::Abs:
        return abs_general(truncate(q), truncate(pconcl(0)).mode, prem(0), prem(1));
      case Rule::AndIPlus:
        return project_conclusion(Term::pair(P, prem(0), prem(1)), q);
      case Rule::OrIPlus:
        return project_conclusion(Term::inj(P, t.index(), prem(0)), q);
      case Rule::NegIPlus:
        return project_conclusion(Term::negi(P, prem(0)), q);
      case Rule::AndEPlus: {
        Term tp = prem(0);
        const MProp& conj = pconcl(0);
        std::string w = fresh_for("w", d.context, {&tp});
        Term inj = vacuous_clam(M, at(conj.base, Strength::Classical, P),
                                Term::inj(M, t.index(), Term::var(w)));
        Term body = Term::proj(P, t.index(), Term::capp(P, tp, inj));
        return strengthen(w, q, body);
      }
      case Rule::OrEPlus: {
        Term tp = prem(0);
        Term u1 = prem(1), u2 = prem(2);
        MProp qc = truncate(q);
        const std::string& n1 = d.opened[1];
        const std::string& n2 = d.opened[2];
        std::string r = fresh_for("r", d.context, {&tp, &u1, &u2});
        if (r == n1 || r == n2) r = fresh_name(r + "r", {n1, n2});
        Term c1 = mk_contrapose(n1, t.annot(0), r, u1, qc);
        Term c2 = mk_contrapose(n2, t.annot(1), r, u2, qc);
        Term xi = vacuous_clam(M, at(pconcl(0).base, Strength::Classical, P),
                               Term::pair(M, c1, c2));
        Term body = Term::case_of(P, Term::capp(P, tp, xi), n1, t.annot(0), u1, n2, t.annot(1),
                                  u2);
        return strengthen(r, qc, body);
      }
      case Rule::NegEPlus: {
        Term tp = prem(0);
        std::string w = fresh_for("w", d.context, {&tp});
        PureProp a = q.base;
        Term xi = vacuous_clam(M, at(PureProp::neg(a), Strength::Classical, P),
                               Term::negi(M, Term::var(w)));
        return strengthen(w, q, Term::nege(P, Term::capp(P, tp, xi)));
      }
      case Rule::CIPlus: {
        Term u = prem(0);
        const std::string& y = d.opened[0];
        return Term::clam(P, y, t.annot(), Term::capp(P, u, Term::var(y)));
      }
      case Rule::CEPlus:
        return prem(0);
      default:
        throw TypeError(TypeErrorKind::InvalidDerivation, "unexpected rule");
    }
  }

 private:
  std::string x_;
};

}  // namespace

Derivation project_derivation(const Derivation& d, const std::string& target) {
  auto p = d.context.lookup(target);
  if (!p) throw TypeError(TypeErrorKind::NoSuchAssumption, "'" + target + "' is not assumed");
  Term t = p->classical() ? project_conclusion(d.subject, d.conclusion)
                          : Projector(target).run(d);
  Context ctx = d.context.with_type(target, truncate(*p));
  return check_type(ctx, t, truncate(d.conclusion));
}

}  // namespace prk
