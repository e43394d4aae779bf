// Acceptance runner: one PASS/FAIL line per criterion.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "prk/admissible.hpp"
#include "prk/classical.hpp"
#include "prk/kripke.hpp"
#include "prk/semf.hpp"
#include "prk/text.hpp"
#include "support.hpp"

using namespace prk;
using namespace prk::testing;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

Result fail(const std::string& why) { return {false, why}; }

Result c1_lem() {
  auto rng = make_rng(101);
  TermGenerator gen(rng);
  for (int i = 0; i < 50; ++i) {
    PureProp a = gen.random_pure(4);
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      MProp want = lem_type(a, sg);
      if (infer_type({}, mk_lem(a, sg)).conclusion != want) return fail("lem at " + to_string(a));
    }
  }
  return {true, "50 propositions, both signs"};
}

Result c2_subject_reduction() {
  std::size_t steps = 0;
  for (const auto& c : typed_corpus(500, 102)) {
    for (RewriteMode mode : {RewriteMode::Plain, RewriteMode::Eta}) {
      Term cur = c.term;
      while (auto s = step(cur, mode)) {
        cur = apply(cur, *s);
        ++steps;
        if (check_type(c.ctx, cur, c.type).conclusion != c.type)
          return fail(std::string(rule_name(s->rule)) + " in " + to_string(c.term));
      }
    }
  }
  return {true, "500 terms, " + std::to_string(steps) + " steps"};
}

Result c3_normalization() {
  std::size_t terms = 0, max_steps = 0;
  for (const auto& c : typed_corpus(500, 103)) {
    if (c.term.size() > 40) continue;
    ++terms;
    for (RewriteMode mode : {RewriteMode::Plain, RewriteMode::Eta}) {
      try {
        max_steps = std::max(max_steps, normalize(c.term, mode, 100000, false).steps);
      } catch (const FuelExhausted&) {
        return fail("fuel exhausted on " + to_string(c.term));
      }
    }
  }
  return {true, std::to_string(terms) + " terms, longest " + std::to_string(max_steps) + " steps"};
}

Result c4_confluence() {
  auto rng = make_rng(104);
  int peaks = 0;
  for (const auto& c : typed_corpus(1500, 104)) {
    if (peaks == 200) break;
    auto rs = redexes(c.term, RewriteMode::Plain);
    if (rs.size() < 2) continue;
    std::size_t i = rng() % rs.size(), j = rng() % (rs.size() - 1);
    if (j >= i) ++j;
    Term l = contract_at(c.term, rs[i].pos, RewriteMode::Plain);
    Term r = contract_at(c.term, rs[j].pos, RewriteMode::Plain);
    if (normalize(l, RewriteMode::Plain, 100000, false).term !=
        normalize(r, RewriteMode::Plain, 100000, false).term)
      return fail("peak in " + to_string(c.term));
    ++peaks;
  }
  if (peaks < 200) return fail("only " + std::to_string(peaks) + " peaks");
  return {true, "200 peaks"};
}

Result c5_normal_grammar() {
  std::vector<PureProp> universe = {A("a"), A("~a"), A("(a & a)"), A("(a | a)")};
  Enumerator en(universe);
  std::size_t count = 0;
  const Mode modes[] = {kStrongPlus, kStrongMinus, kClassicalPlus, kClassicalMinus};
  for (Mode mx : modes)
    for (Mode my : modes) {
      Context ctx{{"x", {A("a"), mx}}, {"y", {A("a"), my}}};
      for (const auto& goal : all_modes(universe))
        for (std::size_t n = 1; n <= 7; ++n)
          for (const auto& t : en.terms(ctx, goal, n)) {
            ++count;
            if (classify(t).normal != redexes(t, RewriteMode::Plain).empty())
              return fail(to_string(t));
          }
    }
  return {true, std::to_string(count) + " terms"};
}

Result c6_canonicity() {
  std::size_t closed = 0, strong = 0;
  for (const auto& c : closed_corpus(200, 106)) {
    Term nf = normalize(c.term, RewriteMode::Plain, 100000, false).term;
    Derivation d = check_type({}, nf, c.type);
    ShapeReport r = classify(nf, &d);
    if (r.clause != 1 || !r.clause_holds) return fail("closed " + to_string(nf));
    ++closed;
  }
  for (const auto& c : typed_corpus(400, 106, {}, true)) {
    if (!c.type.strong()) continue;
    Term nf = normalize(c.term, RewriteMode::Plain, 100000, false).term;
    if (fv(nf).empty()) continue;
    Derivation d = check_type(c.ctx, nf, c.type);
    ShapeReport r = classify(nf, &d);
    if (r.clause != 2 || !r.clause_holds) return fail("clause 2 " + to_string(nf));
    ++strong;
  }
  if (closed < 100 || strong < 50) return fail("corpus too small");
  return {true, std::to_string(closed) + " closed, " + std::to_string(strong) + " clause 2"};
}

Result c7_simulation() {
  auto rng = make_rng(107);
  GenConfig cfg;
  cfg.max_depth = 3;
  cfg.max_size = 20;
  int done = 0;
  std::size_t longest = 0;
  for (const auto& c : typed_corpus(600, 107, cfg)) {
    if (done == 100) break;
    auto rs = redexes(c.term, RewriteMode::Plain);
    if (rs.empty()) continue;
    const Redex& r = rs[rng() % rs.size()];
    Term s = contract_at(c.term, r.pos, RewriteMode::Plain);
    Derivation d = check_type(c.ctx, c.term, c.type);
    f::Context fctx = translate_context(c.ctx);
    if (!f::equiv(f::infer(fctx, translate_term(d)), translate_prop(c.type)))
      return fail("translation type of " + to_string(c.term));
    Derivation ds = check_type(c.ctx, s, c.type);
    if (!f::equiv(f::infer(fctx, translate_term(ds)), translate_prop(c.type)))
      return fail("translation type of " + to_string(s));
    Simulation sim = check_simulation(d, s);
    if (!sim.found || sim.steps < 1)
      return fail(std::string(rule_name(r.rule)) + " step in " + to_string(c.term));
    longest = std::max(longest, sim.steps);
    ++done;
  }
  if (done < 100) return fail("only " + std::to_string(done) + " steps");
  return {true, "100 steps, longest " + std::to_string(longest) + " F-steps"};
}

KripkeModel lem3() {
  std::ifstream in(std::string(PRK_SOURCE_DIR) + "/tests/golden/lem3.model");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

Result c8_kripke_golden() {
  KripkeModel m = lem3();
  if (!validate_model(m).valid()) return fail("model invalid");
  if (forces(m, "w0", M("(a | ~a)^s+"))) return fail("w0 forces strong excluded middle");
  if (!forces(m, "w0", M("(a | ~a)^c+"))) return fail("w0 does not force classical one");
  return {true, "valid; w0 forces ^c+ but not ^s+"};
}

std::vector<KripkeModel> models(const std::vector<std::string>& alphabet, std::size_t n) {
  std::vector<KripkeModel> out;
  enumerate_models(alphabet, n, [&](const KripkeModel& m) {
    if (validate_model(m).valid()) out.push_back(m);
    return true;
  });
  return out;
}

Result c9_forcing_laws() {
  auto ms = models({"a"}, 3);
  auto props = all_modes(all_pure({"a"}, 2));
  std::size_t checks = 0;
  for (const auto& m : ms) {
    Forcing f(m);
    std::size_t n = m.size();
    for (const auto& p : props) {
      MProp q = opposite(p);
      for (std::size_t w = 0; w < n; ++w) {
        bool fw = f.forces(w, p);
        for (std::size_t v = 0; v < n; ++v)
          if (m.leq(w, v) && fw && !f.forces(v, p)) return fail("monotonicity " + to_string(p));
        if (fw && f.forces(w, q)) return fail("non-contradiction " + to_string(p));
        bool stab = false;
        for (std::size_t v = 0; v < n && !stab; ++v)
          stab = m.leq(w, v) && f.forces(v, p) != f.forces(v, q);
        if (!stab) return fail("stabilization " + to_string(p));
        bool rule = true;
        for (std::size_t v = 0; v < n; ++v)
          if (m.leq(w, v) && f.forces(v, MProp{p.base, kClassicalMinus}) &&
              !f.forces(v, MProp{p.base, kStrongPlus}))
            rule = false;
        if (f.forces(w, MProp{p.base, kClassicalPlus}) != rule)
          return fail("classical forcing " + to_string(p));
        ++checks;
      }
    }
  }
  return {true, std::to_string(ms.size()) + " models, " + std::to_string(props.size()) +
                    " propositions, " + std::to_string(checks) + " checks"};
}

Result c10_soundness() {
  auto lib = provable_library();
  if (lib.size() != 20) return fail("library size");
  auto ms = models({"a", "b"}, 3);
  for (const auto& j : lib) {
    check_type(j.ctx, j.term, j.type);
    std::vector<MProp> gamma;
    for (const auto& [x, p] : j.ctx.entries()) gamma.push_back(p);
    for (const auto& m : ms)
      if (!entails_in_model(m, gamma, j.type)) return fail(to_string(j.type));
  }
  return {true, "20 judgments in " + std::to_string(ms.size()) + " models"};
}

// Evaluation written independently of the library's truth tables.
bool oracle_eval(const PureProp& a, const std::map<std::string, bool>& v) {
  switch (a.kind()) {
    case PureProp::Kind::Var: return v.at(a.name());
    case PureProp::Kind::Neg: return !oracle_eval(a.inner(), v);
    case PureProp::Kind::And: return oracle_eval(a.left(), v) && oracle_eval(a.right(), v);
    case PureProp::Kind::Or: return oracle_eval(a.left(), v) || oracle_eval(a.right(), v);
  }
  return false;
}

Result c11_decide() {
  auto props = all_pure({"a", "b"}, 2);
  std::vector<std::map<std::string, bool>> vals;
  for (int k = 0; k < 4; ++k) vals.push_back({{"a", bool(k & 1)}, {"b", bool(k & 2)}});
  auto table = [&](const PureProp& p) {
    int t = 0;
    for (int k = 0; k < 4; ++k) t |= oracle_eval(p, vals[k]) << k;
    return t;
  };
  std::vector<int> tables;
  std::map<int, PureProp> reps;
  for (const auto& p : props) {
    tables.push_back(table(p));
    reps.emplace(tables.back(), p);
  }
  // XOR and XNOR need depth 3, so depth <= 2 reaches 14 truth functions
  if (reps.size() != 14) return fail(std::to_string(reps.size()) + " truth functions");
  std::vector<std::pair<int, PureProp>> r(reps.begin(), reps.end());
  std::size_t count = 0;
  auto cplus = [](const PureProp& p) { return MProp{p, kClassicalPlus}; };
  auto check = [&](const std::vector<std::size_t>& hs, std::size_t g, bool from_reps) {
    std::vector<MProp> gamma;
    int conj = 15;
    for (std::size_t h : hs) {
      gamma.push_back(cplus(from_reps ? r[h].second : props[h]));
      conj &= from_reps ? r[h].first : tables[h];
    }
    bool want = (conj & ~tables[g] & 15) == 0;
    ++count;
    return decide_oplus(gamma, cplus(props[g])) == want;
  };
  for (std::size_t g = 0; g < props.size(); ++g) {
    if (!check({}, g, true)) return fail("empty context, goal " + to_string(props[g]));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i; j < r.size(); ++j) {
        if (!check({i, j}, g, true)) return fail("goal " + to_string(props[g]));
        for (std::size_t k = j; k < r.size(); ++k)
          if (!check({i, j, k}, g, true)) return fail("goal " + to_string(props[g]));
      }
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!check({i}, g, true)) return fail("goal " + to_string(props[g]));
    for (std::size_t h = 0; h < props.size(); ++h)
      if (!check({h}, g, false)) return fail("goal " + to_string(props[g]));
  }
  return {true, std::to_string(count) + " sequents"};
}

Result c12_classical_rules() {
  Context ctx{{"u", M("a^c+")}, {"v", M("b^c+")}, {"u1", M("a^c+")}, {"u2", M("b^c+")},
              {"m", M("a^c-")}, {"q", M("a^c-")}, {"n", M("~a^c-")}, {"mb", M("b^c-")}};
  std::vector<std::pair<ClassicalRule, ClassicalPieces>> runs;
  for (int i : {1, 2}) {
    ClassicalPieces p;
    p.i = i;
    p.a = A("a");
    p.b = A("b");
    p.t1 = T("u1");
    p.t2 = T("u2");
    runs.emplace_back(ClassicalRule::Proj, p);
    p.c = A("c");
    p.t = i == 1 ? T("u") : T("v");
    p.s1 = T("abs[c^c+](capp+(x, m), capp-(m, x))");
    p.s2 = T("abs[c^c+](capp+(x, mb), capp-(mb, x))");
    runs.emplace_back(ClassicalRule::Case, p);
  }
  ClassicalPieces app;
  app.a = A("a");
  app.b = A("b");
  app.t = T("abs[b^c+](capp+(x, m), capp-(m, x))");
  app.s = T("u");
  runs.emplace_back(ClassicalRule::App, app);
  ClassicalPieces lem;
  lem.a = A("a");
  lem.c = A("c");
  lem.s1 = T("abs[c^c+](capp+(x, m), capp-(m, x))");
  lem.s2 = T("abs[c^c+](negi+(q), capp-(n, x))");
  runs.emplace_back(ClassicalRule::Lem, lem);
  for (const auto& [k, p] : runs) {
    ClassicalRun r = run_classical_rule(k, p, ctx);
    // exact: the eta-normal form of the left side is the printed right side
    if (!r.rhs_is_normal || r.lhs_normal.term != r.rhs)
      return fail(std::string(classical_rule_name(k)) + ": " + to_string(r.lhs_normal.term));
  }
  return {true, "proj (i=1,2), case (i=1,2), app, lem"};
}

Result c13_eta_postponement() {
  auto rng = make_rng(113);
  int pairs = 0;
  for (const auto& c : typed_corpus(600, 113)) {
    if (pairs == 100) break;
    Derivation d = check_type(c.ctx, c.term, c.type);
    auto t = eta_expand_somewhere(d, rng);
    if (!t) continue;
    std::vector<Redex> etas, others;
    for (const auto& r : redexes(*t, RewriteMode::Eta))
      if (r.rule == RuleName::Eta) etas.push_back(r);
    Term s = contract_at(*t, etas[rng() % etas.size()].pos, RewriteMode::Eta);
    for (const auto& r : redexes(s, RewriteMode::Eta))
      if (r.rule != RuleName::Eta) others.push_back(r);
    if (others.empty()) continue;
    const Redex& r = others[rng() % others.size()];
    Term u = contract_at(s, r.pos, RewriteMode::Eta);
    bool found = false;
    for (const auto& s2 : reach_with(*t, r.rule, RewriteMode::Eta, 3)) {
      if (s2 == u || reachable(s2, u, RewriteMode::Eta, 4, 20000, RuleName::Eta)) {
        found = true;
        break;
      }
    }
    if (!found) return fail(to_string(*t));
    ++pairs;
  }
  if (pairs < 100) return fail("only " + std::to_string(pairs) + " pairs");
  return {true, "100 pairs"};
}

bool mentions_b(const Derivation& d) {
  std::set<std::string> vs = vars(d.conclusion.base);
  if (vs.count("b")) return true;
  for (const auto& p : d.premises)
    if (mentions_b(p)) return true;
  return false;
}

Result c14_subformula() {
  Context ctx{{"x", M("a^s+")}, {"y", M("a^s-")}};
  Term t = T("abs[a^s+](abs[b^s+](x, y), abs[b^s-](x, y))");
  Derivation d = infer_type(ctx, t);
  if (d.conclusion != M("a^s+")) return fail("type " + to_string(d.conclusion));
  if (!is_normal(t) || !redexes(t, RewriteMode::Eta).empty()) return fail("not normal");
  if (d.premises[0].conclusion != M("b^s+") || d.premises[1].conclusion != M("b^s-") ||
      !mentions_b(d))
    return fail("b does not occur");
  return {true, "types at a^s+, normal, b^s+ and b^s- in the derivation"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"lemP/lemN well-typedness", c1_lem},
      {"subject reduction", c2_subject_reduction},
      {"normalization within fuel", c3_normalization},
      {"confluence sampling", c4_confluence},
      {"normal-form grammar vs irreducibility", c5_normal_grammar},
      {"canonicity", c6_canonicity},
      {"simulation in System F", c7_simulation},
      {"Kripke counter-model golden", c8_kripke_golden},
      {"forcing laws", c9_forcing_laws},
      {"soundness spot-check", c10_soundness},
      {"classical fragment decision", c11_decide},
      {"classical computation rules", c12_classical_rules},
      {"eta postponement", c13_eta_postponement},
      {"subformula-property counterexample", c14_subformula},
  };
  std::cout << "seed " << seed() << "\n";
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !r.pass;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (r.pass ? "PASS " : "FAIL ") << k << " " << name << " (" << r.detail
         << ") " << secs << "s";
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
