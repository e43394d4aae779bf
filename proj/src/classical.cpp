#include "prk/classical.hpp"

#include <algorithm>

#include "json.hpp"
#include "prk/admissible.hpp"
#include "prk/text.hpp"

namespace prk {

namespace {

const Sign P = Sign::Plus, N = Sign::Minus;

MProp cplus(const PureProp& a) { return {a, kClassicalPlus}; }
MProp cminus(const PureProp& a) { return {a, kClassicalMinus}; }

std::string fresh_for(const std::string& hint, std::initializer_list<const Term*> terms,
                      std::set<std::string> avoid = {}) {
  for (const Term* t : terms) collect_fv(*t, avoid);
  return fresh_name(hint, avoid);
}

[[noreturn]] void invalid(const std::string& msg) {
  throw ClassicalError(ClassicalErrorKind::InvalidNKProof, msg);
}

}  // namespace

PureProp classem(const MProp& p) {
  return p.sign() == Sign::Plus ? p.base : PureProp::neg(p.base);
}

PureProp implies(const PureProp& a, const PureProp& b) {
  return PureProp::disj(PureProp::neg(a), b);
}

bool tt_eval(const PureProp& a, const std::vector<std::string>& vars, std::uint32_t valuation) {
  switch (a.kind()) {
    case PureProp::Kind::Var: {
      auto it = std::lower_bound(vars.begin(), vars.end(), a.name());
      return (valuation >> (it - vars.begin())) & 1u;
    }
    case PureProp::Kind::Neg:
      return !tt_eval(a.inner(), vars, valuation);
    case PureProp::Kind::And:
      return tt_eval(a.left(), vars, valuation) && tt_eval(a.right(), vars, valuation);
    case PureProp::Kind::Or:
      return tt_eval(a.left(), vars, valuation) || tt_eval(a.right(), vars, valuation);
  }
  return false;
}

bool tt_valid(const std::vector<PureProp>& hyps, const PureProp& goal) {
  std::set<std::string> vs;
  for (const auto& h : hyps) collect_vars(h, vs);
  collect_vars(goal, vs);
  if (vs.size() > 20) throw std::invalid_argument("truth table over more than 20 variables");
  std::vector<std::string> vars(vs.begin(), vs.end());
  for (std::uint32_t v = 0; v < (1u << vars.size()); ++v) {
    bool all = std::all_of(hyps.begin(), hyps.end(), [&](const PureProp& h) { return tt_eval(h, vars, v); });
    if (all && !tt_eval(goal, vars, v)) return false;
  }
  return true;
}

bool decide_oplus(const std::vector<MProp>& gamma, const MProp& p) {
  std::vector<PureProp> hyps;
  for (const auto& q : gamma) {
    if (!(q.mode == kClassicalPlus))
      throw ClassicalError(ClassicalErrorKind::WrongMode, "hypothesis " + to_string(q) + " is not ^c+");
    hyps.push_back(classem(q));
  }
  if (!(p.mode == kClassicalPlus))
    throw ClassicalError(ClassicalErrorKind::WrongMode, "goal " + to_string(p) + " is not ^c+");
  return tt_valid(hyps, classem(p));
}

const char* nk_rule_name(NKRule r) {
  switch (r) {
    case NKRule::Hyp: return "Hyp";
    case NKRule::AndI: return "AndI";
    case NKRule::AndE: return "AndE";
    case NKRule::OrI: return "OrI";
    case NKRule::OrE: return "OrE";
    case NKRule::NegI: return "NegI";
    case NKRule::NegE: return "NegE";
    case NKRule::Explosion: return "Explosion";
    case NKRule::LEM: return "LEM";
    case NKRule::ImpI: return "ImpI";
    case NKRule::ImpE: return "ImpE";
  }
  return "?";
}

// ---------------------------------------------------------------- NK checking

namespace {

using K = PureProp::Kind;

void check_node(const NKProof& p) {
  const std::string where = std::string(nk_rule_name(p.rule)) + " concluding " + to_string(p.concl);
  auto arity = [&](std::size_t n) {
    if (p.premises.size() != n) invalid(where + ": expected " + std::to_string(n) + " premises");
  };
  auto same_hyps = [&](const NKProof& q, std::optional<PureProp> extra) {
    std::vector<PureProp> want = p.hyps;
    if (extra) want.push_back(*extra);
    if (q.hyps != want) invalid(where + ": premise hypotheses do not match");
  };
  auto concl = [&](std::size_t i) -> const PureProp& { return p.premises[i].concl; };
  auto need = [&](bool ok, const char* msg) {
    if (!ok) invalid(where + ": " + msg);
  };
  switch (p.rule) {
    case NKRule::Hyp:
      arity(0);
      need(p.index >= 1 && static_cast<std::size_t>(p.index) <= p.hyps.size(), "no such hypothesis");
      need(p.hyps[p.index - 1] == p.concl, "hypothesis does not match");
      return;
    case NKRule::LEM:
      arity(0);
      need(p.concl.kind() == K::Or && p.concl.right().kind() == K::Neg &&
               p.concl.right().inner() == p.concl.left(),
           "not of the form A | ~A");
      return;
    case NKRule::AndI:
      arity(2);
      need(p.concl.kind() == K::And && concl(0) == p.concl.left() && concl(1) == p.concl.right(),
           "premises do not match");
      break;
    case NKRule::AndE:
      arity(1);
      need(p.index == 1 || p.index == 2, "index must be 1 or 2");
      need(concl(0).kind() == K::And &&
               (p.index == 1 ? concl(0).left() : concl(0).right()) == p.concl,
           "premise does not match");
      break;
    case NKRule::OrI:
      arity(1);
      need(p.index == 1 || p.index == 2, "index must be 1 or 2");
      need(p.concl.kind() == K::Or && (p.index == 1 ? p.concl.left() : p.concl.right()) == concl(0),
           "premise does not match");
      break;
    case NKRule::OrE:
      arity(3);
      need(concl(0).kind() == K::Or && concl(1) == p.concl && concl(2) == p.concl,
           "premises do not match");
      same_hyps(p.premises[0], std::nullopt);
      same_hyps(p.premises[1], concl(0).left());
      same_hyps(p.premises[2], concl(0).right());
      for (const auto& q : p.premises) check_node(q);
      return;
    case NKRule::NegI:
      arity(1);
      need(p.concl.kind() == K::Neg && concl(0) == bottom(), "premise must conclude falsity");
      same_hyps(p.premises[0], p.concl.inner());
      check_node(p.premises[0]);
      return;
    case NKRule::NegE:
      arity(2);
      need(p.concl == bottom() && concl(0).kind() == K::Neg && concl(0).inner() == concl(1),
           "premises do not match");
      break;
    case NKRule::Explosion:
      arity(1);
      need(concl(0) == bottom(), "premise must conclude falsity");
      break;
    case NKRule::ImpI:
      arity(1);
      need(p.concl.kind() == K::Or && p.concl.left().kind() == K::Neg &&
               concl(0) == p.concl.right(),
           "not of the form A => B");
      same_hyps(p.premises[0], p.concl.left().inner());
      check_node(p.premises[0]);
      return;
    case NKRule::ImpE:
      arity(2);
      need(concl(0) == implies(concl(1), p.concl), "premises do not match");
      break;
  }
  for (const auto& q : p.premises) {
    same_hyps(q, std::nullopt);
    check_node(q);
  }
}

}  // namespace

void check_nk(const NKProof& p) { check_node(p); }

std::string nk_hyp_name(std::size_t i) { return "x" + std::to_string(i); }

Context nk_context(const NKProof& p) {
  Context ctx;
  for (std::size_t i = 0; i < p.hyps.size(); ++i) ctx.add(nk_hyp_name(i + 1), cplus(p.hyps[i]));
  return ctx;
}

// ---------------------------------------------------------------- NK JSON

namespace {

PureProp read_prop(const std::string& s) {
  if (s == "_|_") return bottom();
  return parse_pure(s);
}

std::string show_prop(const PureProp& a) {
  if (a == bottom()) return "_|_";
  return to_string(a);
}

std::optional<NKRule> rule_of(const std::string& s) {
  for (int r = 0; r <= static_cast<int>(NKRule::ImpE); ++r)
    if (s == nk_rule_name(static_cast<NKRule>(r))) return static_cast<NKRule>(r);
  return std::nullopt;
}

NKProof read_node(const nlohmann::json& j, const std::vector<PureProp>& hyps) {
  NKProof p;
  auto r = rule_of(j.at("rule").get<std::string>());
  if (!r) throw ClassicalError(ClassicalErrorKind::BadFile, "unknown rule " + j.at("rule").dump());
  p.rule = *r;
  p.index = j.value("index", 0);
  p.concl = read_prop(j.at("concl").get<std::string>());
  p.hyps = hyps;
  std::vector<nlohmann::json> prem;
  if (j.contains("premises")) prem = j.at("premises").get<std::vector<nlohmann::json>>();
  for (std::size_t i = 0; i < prem.size(); ++i) {
    std::vector<PureProp> h = hyps;
    // discharged hypotheses are read off the premises that need them
    if (p.rule == NKRule::OrE && i > 0) {
      PureProp d = read_prop(prem[0].at("concl").get<std::string>());
      if (d.kind() == K::Or) h.push_back(i == 1 ? d.left() : d.right());
    } else if (p.rule == NKRule::NegI && p.concl.kind() == K::Neg) {
      h.push_back(p.concl.inner());
    } else if (p.rule == NKRule::ImpI && p.concl.kind() == K::Or && p.concl.left().kind() == K::Neg) {
      h.push_back(p.concl.left().inner());
    }
    p.premises.push_back(read_node(prem[i], h));
  }
  return p;
}

nlohmann::ordered_json write_node(const NKProof& p) {
  nlohmann::ordered_json j;
  j["rule"] = nk_rule_name(p.rule);
  if (p.rule == NKRule::Hyp || p.rule == NKRule::AndE || p.rule == NKRule::OrI) j["index"] = p.index;
  j["concl"] = show_prop(p.concl);
  if (!p.premises.empty()) {
    j["premises"] = nlohmann::ordered_json::array();
    for (const auto& q : p.premises) j["premises"].push_back(write_node(q));
  }
  return j;
}

}  // namespace

NKProof nk_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    std::vector<PureProp> hyps;
    if (j.contains("hyps"))
      for (const auto& h : j.at("hyps")) hyps.push_back(read_prop(h.get<std::string>()));
    NKProof p = read_node(j.at("proof"), hyps);
    check_nk(p);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ClassicalError(ClassicalErrorKind::BadFile, std::string("proof file: ") + e.what());
  }
}

std::string nk_to_json(const NKProof& p) {
  nlohmann::ordered_json j;
  j["hyps"] = nlohmann::ordered_json::array();
  for (const auto& h : p.hyps) j["hyps"].push_back(show_prop(h));
  j["proof"] = write_node(p);
  return j.dump(2);
}

// ---------------------------------------------------------------- combinators

Term pairc(const PureProp& a, const PureProp& b, const Term& t, const Term& s) {
  return vacuous_clam(P, cminus(PureProp::conj(a, b)), Term::pair(P, t, s));
}

Term projic(int i, const PureProp& a1, const PureProp& a2, const Term& t) {
  PureProp ai = i == 1 ? a1 : a2;
  std::string x = fresh_for("x", {&t});
  Term inj = vacuous_clam(N, cplus(PureProp::conj(a1, a2)), Term::inj(N, i, Term::var(x)));
  return Term::clam(P, x, cminus(ai),
                    Term::capp(P, Term::proj(P, i, Term::capp(P, t, inj)), Term::var(x)));
}

Term inic(int i, const PureProp& a1, const PureProp& a2, const Term& t) {
  return vacuous_clam(P, cminus(PureProp::disj(a1, a2)), Term::inj(P, i, t));
}

Term casec(const PureProp& a, const PureProp& b, const PureProp& c, const Term& t,
           const std::string& x, const Term& s, const Term& u) {
  std::string y = fresh_for("y", {&t, &s, &u}, {x});
  Term xi = vacuous_clam(N, cplus(PureProp::disj(a, b)),
                         Term::pair(N, mk_contrapose(x, cplus(a), y, s, cplus(c)),
                                    mk_contrapose(x, cplus(b), y, u, cplus(c))));
  Term body = Term::case_of(P, Term::capp(P, t, xi), x, cplus(a), Term::capp(P, s, Term::var(y)),
                            x, cplus(b), Term::capp(P, u, Term::var(y)));
  return Term::clam(P, y, cminus(c), body);
}

namespace {
Term lem_bot() { return mk_lem(PureProp::var(kBotVar), Sign::Minus); }
}  // namespace

Term neglamc(const PureProp& a, const std::string& x, const Term& t) {
  Term inner = Term::clam(N, x, cplus(a), abs_general({a, kStrongMinus}, kClassicalPlus, t, lem_bot()));
  return vacuous_clam(P, cminus(PureProp::neg(a)), Term::negi(P, inner));
}

Term negapc(const PureProp& a, const Term& t, const Term& s) {
  Term witness = vacuous_clam(N, cplus(PureProp::neg(a)), Term::negi(N, s));
  return abs_general(cplus(bottom()), kClassicalPlus, t, witness);
}

Term explosion(const MProp& q, const Term& t) {
  return abs_general(q, kClassicalPlus, t, lem_bot());
}

Term lemc(const PureProp& a) { return mk_lem(a, Sign::Plus); }

Term lamc(const PureProp& a, const PureProp& b, const std::string& x, const Term& t) {
  PureProp imp = implies(a, b), na = PureProp::neg(a);
  std::string y = fresh_for("y", {&t}, {x});
  std::string z = fresh_for("z", {&t}, {x, y});
  Term negz = vacuous_clam(P, cminus(na), Term::negi(P, Term::var(z)));
  Term xp = Term::proj(N, 1, Term::capp(N, Term::var(y), vacuous_clam(P, cminus(imp), Term::inj(P, 1, negz))));
  Term xy = Term::clam(P, z, cminus(a),
                       Term::capp(P, Term::nege(N, Term::capp(N, xp, negz)), Term::var(z)));
  return Term::clam(P, y, cminus(imp), Term::inj(P, 2, substitute(t, x, xy)));
}

Term appc(const PureProp& a, const PureProp& b, const Term& t, const Term& s) {
  PureProp imp = implies(a, b), na = PureProp::neg(a);
  std::string x = fresh_for("x", {&t, &s});
  std::string y = fresh_for("y", {&t, &s}, {x});
  std::string z = fresh_for("z", {&t, &s}, {x, y});
  Term nots = vacuous_clam(N, cplus(na), Term::negi(N, s));
  Term xi = vacuous_clam(N, cplus(imp), Term::pair(N, nots, Term::var(x)));
  Term left = abs_general({b, kStrongPlus}, kClassicalPlus, s,
                          Term::nege(P, Term::capp(P, Term::var(y), nots)));
  Term body = Term::case_of(P, Term::capp(P, t, xi), y, cplus(na), left, z, cplus(b),
                            Term::capp(P, Term::var(z), Term::var(x)));
  return Term::clam(P, x, cminus(b), body);
}

// ---------------------------------------------------------------- embedding

namespace {

Term embed(const NKProof& p) {
  auto prem = [&](std::size_t i) { return embed(p.premises[i]); };
  auto pc = [&](std::size_t i) -> const PureProp& { return p.premises[i].concl; };
  std::string discharged = nk_hyp_name(p.hyps.size() + 1);
  switch (p.rule) {
    case NKRule::Hyp:
      return Term::var(nk_hyp_name(p.index));
    case NKRule::AndI:
      return pairc(pc(0), pc(1), prem(0), prem(1));
    case NKRule::AndE:
      return projic(p.index, pc(0).left(), pc(0).right(), prem(0));
    case NKRule::OrI:
      return inic(p.index, p.concl.left(), p.concl.right(), prem(0));
    case NKRule::OrE:
      return casec(pc(0).left(), pc(0).right(), p.concl, prem(0), discharged, prem(1), prem(2));
    case NKRule::NegI:
      return neglamc(p.concl.inner(), discharged, prem(0));
    case NKRule::NegE:
      return negapc(pc(1), prem(0), prem(1));
    case NKRule::Explosion:
      return explosion(cplus(p.concl), prem(0));
    case NKRule::LEM:
      return lemc(p.concl.left());
    case NKRule::ImpI:
      return lamc(p.concl.left().inner(), p.concl.right(), discharged, prem(0));
    case NKRule::ImpE:
      return appc(pc(1), p.concl, prem(0), prem(1));
  }
  invalid("unknown rule");
}

}  // namespace

Term embed_nk(const NKProof& p) {
  check_nk(p);
  return embed(p);
}

// ---------------------------------------------------------------- computation rules

const char* classical_rule_name(ClassicalRule r) {
  switch (r) {
    case ClassicalRule::Proj: return "proj";
    case ClassicalRule::Case: return "case";
    case ClassicalRule::App: return "app";
    case ClassicalRule::Lem: return "lem";
  }
  return "?";
}

ClassicalRun run_classical_rule(ClassicalRule kind, const ClassicalPieces& k, const Context& ctx) {
  ClassicalRun r;
  MProp goal;
  switch (kind) {
    case ClassicalRule::Proj:
      r.lhs = projic(k.i, k.a, k.b, pairc(k.a, k.b, k.t1, k.t2));
      r.rhs = k.i == 1 ? k.t1 : k.t2;
      goal = cplus(k.i == 1 ? k.a : k.b);
      break;
    case ClassicalRule::Case:
      r.lhs = casec(k.a, k.b, k.c, inic(k.i, k.a, k.b, k.t), k.x, k.s1, k.s2);
      r.rhs = substitute(k.i == 1 ? k.s1 : k.s2, k.x, k.t);
      goal = cplus(k.c);
      break;
    case ClassicalRule::App:
      r.lhs = appc(k.a, k.b, lamc(k.a, k.b, k.x, k.t), k.s);
      r.rhs = substitute(k.t, k.x, k.s);
      goal = cplus(k.b);
      break;
    case ClassicalRule::Lem: {
      PureProp na = PureProp::neg(k.a);
      r.lhs = casec(k.a, na, k.c, lemc(k.a), k.x, k.s1, k.s2);
      std::string y = fresh_for("y", {&k.s1, &k.s2}, {k.x});
      Term inner = Term::clam(N, k.x, cplus(k.a),
                              abs_general({k.a, kStrongMinus}, kClassicalPlus, k.s1, Term::var(y)));
      Term s1star = vacuous_clam(P, cminus(na), Term::negi(P, inner));
      r.rhs = Term::clam(P, y, cminus(k.c),
                         Term::capp(P, substitute(k.s2, k.x, s1star), Term::var(y)));
      goal = cplus(k.c);
      break;
    }
  }
  check_type(ctx, r.lhs, goal);
  check_type(ctx, r.rhs, goal);
  r.lhs_normal = normalize(r.lhs, RewriteMode::Eta);
  r.rhs_normal = normalize(r.rhs, RewriteMode::Eta, 100000, false).term;
  r.rhs_is_normal = r.rhs_normal == r.rhs;
  r.holds = r.lhs_normal.term == r.rhs_normal;
  return r;
}

}  // namespace prk
