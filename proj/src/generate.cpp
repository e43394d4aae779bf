#include "prk/generate.hpp"

#include <algorithm>
#include <functional>

#include "prk/admissible.hpp"

namespace prk {

namespace {
using PK = PureProp::Kind;
MProp at(const PureProp& a, Strength st, Sign sg) { return {a, {st, sg}}; }
MProp cls(const PureProp& a, Sign sg) { return at(a, Strength::Classical, sg); }
MProp str(const PureProp& a, Sign sg) { return at(a, Strength::Strong, sg); }
}  // namespace

PureProp TermGenerator::random_pure(int depth) {
  if (depth <= 0 || coin(0.35)) return PureProp::var(cfg_.atoms[pick(int(cfg_.atoms.size()))]);
  switch (pick(3)) {
    case 0: return PureProp::conj(random_pure(depth - 1), random_pure(depth - 1));
    case 1: return PureProp::disj(random_pure(depth - 1), random_pure(depth - 1));
    default: return PureProp::neg(random_pure(depth - 1));
  }
}

Mode TermGenerator::random_mode() {
  static const Mode modes[] = {kStrongPlus, kStrongMinus, kClassicalPlus, kClassicalMinus};
  return modes[pick(4)];
}

MProp TermGenerator::random_mprop(int depth) { return {random_pure(depth), random_mode()}; }

std::string TermGenerator::fresh(const Context& ctx) {
  std::string x;
  do {
    x = "g" + std::to_string(counter_++);
  } while (ctx.contains(x));
  return x;
}

std::optional<Term> TermGenerator::leaf(const Context& ctx, const MProp& goal) {
  std::vector<Term> vars;
  for (const auto& [x, p] : ctx.entries())
    if (p == goal) vars.push_back(Term::var(x));
  if (!vars.empty() && coin(0.8)) return vars[pick(int(vars.size()))];
  // explosion from a pair of contradictory assumptions
  std::vector<std::pair<Context::Entry, Context::Entry>> pairs;
  for (const auto& e1 : ctx.entries())
    for (const auto& e2 : ctx.entries())
      if (e2.second == opposite(e1.second)) pairs.emplace_back(e1, e2);
  if (!pairs.empty()) {
    auto& [e1, e2] = pairs[pick(int(pairs.size()))];
    return abs_general(goal, e1.second.mode, Term::var(e1.first), Term::var(e2.first));
  }
  if (!vars.empty()) return vars[pick(int(vars.size()))];
  return std::nullopt;
}

std::optional<Term> TermGenerator::gen(const Context& ctx, const MProp& goal, int depth) {
  if (depth <= 0 || budget_ <= 0) return leaf(ctx, goal);
  --budget_;
  Sign sg = goal.sign();
  Sign op = flip(sg);
  const PureProp& A = goal.base;
  using Maker = std::function<std::optional<Term>()>;
  std::vector<Maker> intros, redexes, elims;
  auto sub = [&](const MProp& p) { return gen(ctx, p, depth - 1); };

  intros.push_back([&]() { return leaf(ctx, goal); });
  if (goal.strong()) {
    if (A.kind() == (sg == Sign::Plus ? PK::And : PK::Or))
      intros.push_back([&]() -> std::optional<Term> {
        auto l = sub(cls(A.left(), sg));
        auto r = l ? sub(cls(A.right(), sg)) : std::nullopt;
        if (!r) return std::nullopt;
        return Term::pair(sg, *l, *r);
      });
    if (A.kind() == (sg == Sign::Plus ? PK::Or : PK::And))
      intros.push_back([&]() -> std::optional<Term> {
        int i = 1 + pick(2);
        auto t = sub(cls(i == 1 ? A.left() : A.right(), sg));
        if (!t) return std::nullopt;
        return Term::inj(sg, i, *t);
      });
    if (A.kind() == PK::Neg)
      intros.push_back([&]() -> std::optional<Term> {
        auto t = sub(cls(A.inner(), op));
        if (!t) return std::nullopt;
        return Term::negi(sg, *t);
      });
    // capp(clam(k. body), arg)
    redexes.push_back([&]() -> std::optional<Term> {
      std::string k = fresh(ctx);
      auto body = gen(ctx.extended(k, cls(A, op)), goal, depth - 1);
      auto arg = body ? sub(cls(A, op)) : std::nullopt;
      if (!arg) return std::nullopt;
      return Term::capp(sg, Term::clam(sg, k, cls(A, op), *body), *arg);
    });
    elims.push_back([&]() -> std::optional<Term> {
      auto t = sub(cls(A, sg));
      auto s = t ? sub(cls(A, op)) : std::nullopt;
      if (!s) return std::nullopt;
      return Term::capp(sg, *t, *s);
    });
  } else {
    intros.push_back([&]() -> std::optional<Term> {
      std::string k = fresh(ctx);
      auto body = gen(ctx.extended(k, cls(A, op)), str(A, sg), depth - 1);
      if (!body) return std::nullopt;
      return Term::clam(sg, k, cls(A, op), *body);
    });
    // proj(pair(...)) and nege(negi(...))
    redexes.push_back([&]() -> std::optional<Term> {
      int i = 1 + pick(2);
      PureProp other = random_pure(cfg_.aux_depth);
      auto t = sub(goal);
      auto o = t ? sub(cls(other, sg)) : std::nullopt;
      if (!o) return std::nullopt;
      return Term::proj(sg, i, i == 1 ? Term::pair(sg, *t, *o) : Term::pair(sg, *o, *t));
    });
    redexes.push_back([&]() -> std::optional<Term> {
      auto t = sub(goal);
      if (!t) return std::nullopt;
      return Term::nege(op, Term::negi(op, *t));
    });
    elims.push_back([&]() -> std::optional<Term> {
      int i = 1 + pick(2);
      PureProp other = random_pure(cfg_.aux_depth);
      PureProp both = i == 1 ? PureProp::conj(A, other) : PureProp::conj(other, A);
      if (sg == Sign::Minus) both = i == 1 ? PureProp::disj(A, other) : PureProp::disj(other, A);
      auto t = sub(str(both, sg));
      if (!t) return std::nullopt;
      return Term::proj(sg, i, *t);
    });
    elims.push_back([&]() -> std::optional<Term> {
      auto t = sub(str(PureProp::neg(A), op));
      if (!t) return std::nullopt;
      return Term::nege(op, *t);
    });
  }
  // case(in_i(t), x. s1, y. s2) and a general case
  auto make_case = [&](bool redex) -> std::optional<Term> {
    Sign cs = coin(0.5) ? Sign::Plus : Sign::Minus;
    PureProp l = random_pure(cfg_.aux_depth), r = random_pure(cfg_.aux_depth);
    PureProp both = cs == Sign::Plus ? PureProp::disj(l, r) : PureProp::conj(l, r);
    std::optional<Term> scrut;
    if (redex) {
      int i = 1 + pick(2);
      auto t = sub(cls(i == 1 ? l : r, cs));
      if (t) scrut = Term::inj(cs, i, *t);
    } else {
      scrut = sub(str(both, cs));
    }
    if (!scrut) return std::nullopt;
    std::string x = fresh(ctx), y = fresh(ctx);
    auto b1 = gen(ctx.extended(x, cls(l, cs)), goal, depth - 1);
    auto b2 = b1 ? gen(ctx.extended(y, cls(r, cs)), goal, depth - 1) : std::nullopt;
    if (!b2) return std::nullopt;
    return Term::case_of(cs, *scrut, x, cls(l, cs), *b1, y, cls(r, cs), *b2);
  };
  redexes.push_back([&]() { return make_case(true); });
  elims.push_back([&]() { return make_case(false); });
  // absurdity redexes: abs(pair, in), abs(in, pair), abs(negi, negi)
  redexes.push_back([&]() -> std::optional<Term> {
    Sign ps = coin(0.5) ? Sign::Plus : Sign::Minus;
    PureProp l = random_pure(cfg_.aux_depth), r = random_pure(cfg_.aux_depth);
    auto t1 = sub(cls(l, ps));
    auto t2 = t1 ? sub(cls(r, ps)) : std::nullopt;
    int i = 1 + pick(2);
    auto s = t2 ? sub(cls(i == 1 ? l : r, flip(ps))) : std::nullopt;
    if (!s) return std::nullopt;
    Term pair = Term::pair(ps, *t1, *t2), inj = Term::inj(flip(ps), i, *s);
    return coin(0.5) ? Term::abs(goal, pair, inj) : Term::abs(goal, inj, pair);
  });
  redexes.push_back([&]() -> std::optional<Term> {
    PureProp b = random_pure(cfg_.aux_depth);
    auto t = sub(cls(b, Sign::Minus));
    auto s = t ? sub(cls(b, Sign::Plus)) : std::nullopt;
    if (!s) return std::nullopt;
    Term l = Term::negi(Sign::Plus, *t), r = Term::negi(Sign::Minus, *s);
    return coin(0.5) ? Term::abs(goal, l, r) : Term::abs(goal, r, l);
  });
  elims.push_back([&]() -> std::optional<Term> {
    MProp r = {random_pure(cfg_.aux_depth), coin(0.5) ? kStrongPlus : kStrongMinus};
    auto t = sub(r);
    auto s = t ? sub(opposite(r)) : std::nullopt;
    if (!s) return std::nullopt;
    return Term::abs(goal, *t, *s);
  });

  std::shuffle(intros.begin(), intros.end(), rng_);
  std::shuffle(redexes.begin(), redexes.end(), rng_);
  std::shuffle(elims.begin(), elims.end(), rng_);
  std::vector<Maker> order;
  auto append = [&](std::vector<Maker>& v) { order.insert(order.end(), v.begin(), v.end()); };
  if (coin(cfg_.redex_bias)) {
    append(redexes);
    append(intros);
  } else {
    append(intros);
    append(redexes);
  }
  append(elims);
  for (auto& m : order)
    if (auto t = m()) return t;
  return std::nullopt;
}

std::optional<Term> TermGenerator::generate(const Context& ctx, const MProp& goal) {
  for (int i = 0; i < cfg_.attempts; ++i) {
    int depth = 1 + pick(cfg_.max_depth);
    budget_ = cfg_.budget;
    auto t = gen(ctx, goal, depth);
    if (t && t->size() <= cfg_.max_size) return t;
  }
  return std::nullopt;
}

}  // namespace prk
