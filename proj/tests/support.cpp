#include "support.hpp"

#include <cstdlib>
#include <deque>
#include <unordered_set>

#include "prk/admissible.hpp"
#include "prk/text.hpp"

namespace prk::testing {

std::uint64_t seed() {
  if (const char* s = std::getenv("PRK_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(seed() * 1000003 + salt); }

Term T(const std::string& text) { return parse_term(text); }
MProp M(const std::string& text) { return parse_mprop(text); }
PureProp A(const std::string& text) { return parse_pure(text); }

namespace {

Context mixed_context() {
  return Context{{"p", M("a^c+")}, {"n", M("a^c-")}, {"q", M("b^c+")},
                 {"m", M("b^c-")}, {"s", M("a^s+")}, {"r", M("a^s-")}};
}

Context classical_context(std::mt19937_64& rng) {
  std::vector<Context::Entry> pool = {{"p", M("a^c+")},        {"n", M("a^c-")},
                                      {"q", M("b^c+")},        {"m", M("b^c-")},
                                      {"u", M("(a & b)^c+")}, {"v", M("(a | b)^c-")}};
  Context c;
  for (const auto& e : pool)
    if (rng() % 3 != 0) c.add(e.first, e.second);
  if (c.size() == 0) c.add("p", M("a^c+"));
  return c;
}

}  // namespace

std::vector<Typed> typed_corpus(std::size_t n, std::uint64_t salt, GenConfig cfg,
                                bool classical_only) {
  auto rng = make_rng(salt);
  TermGenerator gen(rng, cfg);
  std::vector<Typed> out;
  while (out.size() < n) {
    Context ctx = classical_only || rng() % 2 ? classical_context(rng) : mixed_context();
    MProp goal = gen.random_mprop(2);
    auto t = gen.generate(ctx, goal);
    if (!t) continue;
    check_type(ctx, *t, goal);  // throws if the generator is wrong
    out.push_back({ctx, *t, goal});
  }
  return out;
}

std::vector<Typed> closed_corpus(std::size_t n, std::uint64_t salt) {
  auto rng = make_rng(salt);
  GenConfig cfg;
  cfg.max_depth = 4;
  cfg.attempts = 20;
  TermGenerator gen(rng, cfg);
  PureProp a = A("a"), b = A("b");
  Context ctx{{"e1", lem_type(a, Sign::Plus)},
              {"e2", lem_type(a, Sign::Minus)},
              {"e3", lem_type(b, Sign::Plus)},
              {"e4", lem_type(b, Sign::Minus)}};
  std::vector<std::pair<std::string, Term>> cuts = {{"e1", mk_lem(a, Sign::Plus)},
                                                    {"e2", mk_lem(a, Sign::Minus)},
                                                    {"e3", mk_lem(b, Sign::Plus)},
                                                    {"e4", mk_lem(b, Sign::Minus)}};
  std::vector<MProp> goals;
  for (const auto& [x, p] : ctx.entries()) goals.push_back(p);
  std::vector<Typed> out;
  int tries = 0;
  while (out.size() < n && tries++ < 200000) {
    MProp goal = rng() % 3 == 0 ? goals[rng() % goals.size()] : gen.random_mprop(1);
    auto t = gen.generate(ctx, goal);
    if (!t) continue;
    Term closed = *t;
    for (const auto& [x, s] : cuts) closed = substitute(closed, x, s);
    check_type(Context{}, closed, goal);
    out.push_back({Context{}, closed, goal});
  }
  return out;
}

std::vector<PureProp> all_pure(const std::vector<std::string>& atoms, int depth) {
  std::vector<PureProp> level;
  for (const auto& x : atoms) level.push_back(PureProp::var(x));
  for (int d = 1; d <= depth; ++d) {
    std::vector<PureProp> next;
    for (const auto& x : atoms) next.push_back(PureProp::var(x));
    for (const auto& p : level) next.push_back(PureProp::neg(p));
    for (const auto& l : level)
      for (const auto& r : level) {
        next.push_back(PureProp::conj(l, r));
        next.push_back(PureProp::disj(l, r));
      }
    level = std::move(next);
  }
  return level;
}

std::vector<MProp> all_modes(const std::vector<PureProp>& props) {
  std::vector<MProp> out;
  for (const auto& p : props)
    for (Mode m : {kStrongPlus, kStrongMinus, kClassicalPlus, kClassicalMinus})
      out.push_back({p, m});
  return out;
}

const std::vector<Term>& Enumerator::terms(const Context& ctx, const MProp& goal, std::size_t n) {
  std::string key = std::to_string(n) + "|" + to_string(goal) + "|";
  for (const auto& [x, p] : ctx.entries()) key += x + ":" + to_string(p) + ";";
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  auto v = build(ctx, goal, n);
  return memo_.emplace(key, std::move(v)).first->second;
}

std::vector<Term> Enumerator::build(const Context& ctx, const MProp& goal, std::size_t n) {
  using PK = PureProp::Kind;
  std::vector<Term> out;
  if (n == 0) return out;
  if (n == 1) {
    for (const auto& [x, p] : ctx.entries())
      if (p == goal) out.push_back(Term::var(x));
    return out;
  }
  Sign sg = goal.sign(), op = flip(sg);
  const PureProp& A0 = goal.base;
  auto cls = [](const PureProp& a, Sign s) { return MProp{a, {Strength::Classical, s}}; };
  auto str = [](const PureProp& a, Sign s) { return MProp{a, {Strength::Strong, s}}; };
  std::string k = "k" + std::to_string(ctx.size());
  auto binary = [&](const MProp& l, const MProp& r, const Context& cl, const Context& cr,
                    auto make) {
    for (std::size_t n1 = 1; n1 + 1 < n; ++n1) {
      const auto& L = terms(cl, l, n1);
      if (L.empty()) continue;
      const auto& R = terms(cr, r, n - 1 - n1);
      for (const auto& x : L)
        for (const auto& y : R) out.push_back(make(x, y));
    }
  };
  // absurdity
  for (const auto& b : universe_)
    for (Sign s : {Sign::Plus, Sign::Minus})
      binary(str(b, s), str(b, flip(s)), ctx, ctx,
             [&](const Term& x, const Term& y) { return Term::abs(goal, x, y); });
  if (goal.strong()) {
    if (A0.kind() == (sg == Sign::Plus ? PK::And : PK::Or))
      binary(cls(A0.left(), sg), cls(A0.right(), sg), ctx, ctx,
             [&](const Term& x, const Term& y) { return Term::pair(sg, x, y); });
    if (A0.kind() == (sg == Sign::Plus ? PK::Or : PK::And))
      for (int i : {1, 2})
        for (const auto& t : terms(ctx, cls(i == 1 ? A0.left() : A0.right(), sg), n - 1))
          out.push_back(Term::inj(sg, i, t));
    if (A0.kind() == PK::Neg)
      for (const auto& t : terms(ctx, cls(A0.inner(), op), n - 1))
        out.push_back(Term::negi(sg, t));
    binary(cls(A0, sg), cls(A0, op), ctx, ctx,
           [&](const Term& x, const Term& y) { return Term::capp(sg, x, y); });
  } else {
    Context ck = ctx.extended(k, cls(A0, op));
    for (const auto& t : terms(ck, str(A0, sg), n - 1))
      out.push_back(Term::clam(sg, k, cls(A0, op), t));
    for (const auto& b : universe_)
      for (int i : {1, 2}) {
        PureProp both = i == 1 ? (sg == Sign::Plus ? PureProp::conj(A0, b) : PureProp::disj(A0, b))
                               : (sg == Sign::Plus ? PureProp::conj(b, A0) : PureProp::disj(b, A0));
        for (const auto& t : terms(ctx, str(both, sg), n - 1)) out.push_back(Term::proj(sg, i, t));
      }
    for (const auto& t : terms(ctx, str(PureProp::neg(A0), op), n - 1))
      out.push_back(Term::nege(op, t));
  }
  // case
  for (Sign cs : {Sign::Plus, Sign::Minus})
    for (const auto& l : universe_)
      for (const auto& r : universe_) {
        PureProp both = cs == Sign::Plus ? PureProp::disj(l, r) : PureProp::conj(l, r);
        Context c1 = ctx.extended(k, cls(l, cs)), c2 = ctx.extended(k, cls(r, cs));
        for (std::size_t n1 = 1; n1 + 2 < n; ++n1) {
          const auto& S = terms(ctx, str(both, cs), n1);
          if (S.empty()) continue;
          for (std::size_t n2 = 1; n1 + n2 + 1 < n; ++n2) {
            const auto& B1 = terms(c1, goal, n2);
            if (B1.empty()) continue;
            const auto& B2 = terms(c2, goal, n - 1 - n1 - n2);
            for (const auto& s : S)
              for (const auto& b1 : B1)
                for (const auto& b2 : B2)
                  out.push_back(Term::case_of(cs, s, k, cls(l, cs), b1, k, cls(r, cs), b2));
          }
        }
      }
  return out;
}

namespace {
void collect_types(const Derivation& d, Position& pos,
                   std::vector<std::pair<Position, MProp>>& out) {
  out.emplace_back(pos, d.conclusion);
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    collect_types(d.premises[i], pos, out);
    pos.pop_back();
  }
}
}  // namespace

std::vector<std::pair<Position, MProp>> subterm_types(const Derivation& d) {
  std::vector<std::pair<Position, MProp>> out;
  Position pos;
  collect_types(d, pos, out);
  return out;
}

std::optional<Term> eta_expand_somewhere(const Derivation& d, std::mt19937_64& rng) {
  std::vector<std::pair<Position, MProp>> cands;
  for (auto& e : subterm_types(d))
    if (e.second.classical()) cands.push_back(std::move(e));
  if (cands.empty()) return std::nullopt;
  const auto& [pos, p] = cands[rng() % cands.size()];
  const Term& u = subterm(d.subject, pos);
  Term expanded = Term::clam_raw(p.sign(), "k", opposite(p),
                                 Term::capp(p.sign(), shift(u, 1), Term::bound(0)));
  return replace_at(d.subject, pos, expanded);
}

std::vector<Term> reach_with(const Term& t, RuleName rule, RewriteMode mode, std::size_t depth,
                             std::size_t cap) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  std::deque<std::pair<Term, std::size_t>> queue{{t, 0}};
  while (!queue.empty() && out.size() < cap) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d == depth) continue;
    for (const auto& r : redexes(cur, mode)) {
      if (r.rule != rule) continue;
      Term next = contract_at(cur, r.pos, mode);
      if (seen.insert(next).second) {
        out.push_back(next);
        queue.emplace_back(next, d + 1);
      }
    }
  }
  return out;
}

std::vector<Typed> provable_library() {
  std::vector<Typed> out;
  auto add = [&](Context ctx, Term t, const std::string& type) {
    out.push_back({std::move(ctx), std::move(t), M(type)});
  };
  for (const char* a : {"a", "~a", "(a & b)", "(a | ~b)"}) {
    add({}, mk_lem(A(a), Sign::Plus), to_string(lem_type(A(a), Sign::Plus)));
    add({}, mk_lem(A(a), Sign::Minus), to_string(lem_type(A(a), Sign::Minus)));
  }
  add({{"x", M("a^s+")}}, project_conclusion(T("x"), M("a^s+")), "a^c+");
  add({{"x", M("a^c+")}, {"y", M("b^c+")}}, T("pair+(x, y)"), "(a & b)^s+");
  add({{"x", M("a^c-")}, {"y", M("b^c-")}}, T("pair-(x, y)"), "(a | b)^s-");
  add({{"x", M("(a & b)^s+")}}, T("proj2+(x)"), "b^c+");
  add({{"x", M("a^c+")}}, T("in1+(x)"), "(a | b)^s+");
  add({{"x", M("a^c-")}}, T("negi+(x)"), "~a^s+");
  add({{"x", M("a^s+")}, {"y", M("a^s-")}}, T("abs[b^s+](x, y)"), "b^s+");
  add({{"w", M("(a | b)^s+")}}, T("case+(w, u : a^c+. in2+(u), v : b^c+. in1+(v))"),
      "(b | a)^s+");
  add({{"x", M("a^c+")}}, T("clam+(k : a^c-. capp+(x, k))"), "a^c+");
  Context xy{{"x", M("a^c+")}, {"y", M("a^c-")}};
  add(xy, mk_abs_general(xy, M("b^c+"), T("x"), T("y")), "b^c+");
  add({{"x", M("a^s+")}, {"y", M("b^s-")}}, T("x"), "a^s+");
  add({{"x", M("~a^s-")}}, T("nege-(x)"), "a^c+");
  return out;
}

}  // namespace prk::testing
