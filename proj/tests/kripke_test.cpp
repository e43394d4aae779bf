#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "prk/kripke.hpp"
#include "prk/text.hpp"
#include "support.hpp"

using namespace prk;
using namespace prk::testing;

namespace {

KripkeModel lem3() {
  std::ifstream in(std::string(PRK_SOURCE_DIR) + "/tests/golden/lem3.model");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

// Direct pointwise reading of the forcing clauses, used as an oracle.
bool oracle(const KripkeModel& m, std::size_t w, const MProp& p) {
  const PureProp& a = p.base;
  Sign s = p.sign();
  if (p.classical()) {
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m.leq(w, v) && oracle(m, v, MProp{a, {Strength::Strong, flip(s)}})) return false;
    return true;
  }
  auto c = [&](const PureProp& b, Sign sg) { return oracle(m, w, MProp{b, {Strength::Classical, sg}}); };
  switch (a.kind()) {
    case PureProp::Kind::Var: {
      std::size_t k = *m.variable(a.name());
      return s == Sign::Plus ? m.plus(w, k) : m.minus(w, k);
    }
    case PureProp::Kind::Neg:
      return c(a.inner(), flip(s));
    case PureProp::Kind::And:
      return s == Sign::Plus ? c(a.left(), s) && c(a.right(), s) : c(a.left(), s) || c(a.right(), s);
    case PureProp::Kind::Or:
      return s == Sign::Plus ? c(a.left(), s) || c(a.right(), s) : c(a.left(), s) && c(a.right(), s);
  }
  return false;
}

std::vector<KripkeModel> small_models(const std::vector<std::string>& alphabet, std::size_t n) {
  std::vector<KripkeModel> out;
  enumerate_models(alphabet, n, [&](const KripkeModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace

TEST(Models, CounterModelLem) {
  KripkeModel m = lem3();
  EXPECT_TRUE(validate_model(m).valid());
  EXPECT_FALSE(forces(m, "w0", M("(a | ~a)^s+")));
  EXPECT_TRUE(forces(m, "w0", M("(a | ~a)^c+")));
  EXPECT_TRUE(forces(m, "w1", M("a^s+")));
  EXPECT_TRUE(forces(m, "w2", M("a^s-")));
  EXPECT_FALSE(entails_in_model(m, {}, M("(a | ~a)^s+")));
  EXPECT_TRUE(entails_in_model(m, {M("a^s+")}, M("a^c+")));
  EXPECT_TRUE(entails_in_model(m, {M("(a & ~a)^s-")}, M("(a & ~a)^s-")));
}

TEST(Models, Violations) {
  KripkeModel lonely({"a"}, {"w"}, {}, {}, {});
  auto r = validate_model(lonely);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::Stabilization);
  EXPECT_EQ(r.violations[0].world, "w");
  EXPECT_EQ(r.violations[0].variable, "a");

  KripkeModel drop({"a"}, {"w", "v"}, {{"w", "v"}}, {{"w", {"a"}}}, {{"v", {"a"}}});
  r = validate_model(drop);
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(r.violations[0].kind, ViolationKind::Monotonicity);
  EXPECT_EQ(r.violations[0].world, "w");
  EXPECT_EQ(r.violations[0].other, "v");

  KripkeModel loop({"a"}, {"w", "v"}, {{"w", "v"}, {"v", "w"}}, {{"w", {"a"}}, {"v", {"a"}}}, {});
  r = validate_model(loop);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::NotAntisymmetric);
}

TEST(Models, Errors) {
  KripkeModel m = lem3();
  try {
    forces(m, "w9", M("a^s+"));
    FAIL();
  } catch (const KripkeError& e) {
    EXPECT_EQ(e.kind(), KripkeErrorKind::UnknownWorld);
  }
  try {
    forces(m, "w0", M("b^s+"));
    FAIL();
  } catch (const KripkeError& e) {
    EXPECT_EQ(e.kind(), KripkeErrorKind::UnknownVariable);
  }
  EXPECT_THROW(model_from_json("{\"alphabet\": [\"a\"]}"), KripkeError);
  EXPECT_THROW(model_from_json("not json"), KripkeError);
  EXPECT_THROW(KripkeModel({"a"}, {"w"}, {}, {{"w", {"b"}}}, {}), KripkeError);
}

TEST(Models, JsonRoundTrip) {
  KripkeModel m = lem3();
  KripkeModel back = model_from_json(model_to_json(m));
  EXPECT_EQ(back.worlds(), m.worlds());
  EXPECT_EQ(back.alphabet(), m.alphabet());
  for (std::size_t w = 0; w < m.size(); ++w) {
    EXPECT_EQ(back.vplus(w), m.vplus(w));
    EXPECT_EQ(back.vminus(w), m.vminus(w));
    for (std::size_t v = 0; v < m.size(); ++v) EXPECT_EQ(back.leq(w, v), m.leq(w, v));
  }
  EXPECT_EQ(model_to_json(back), model_to_json(m));
}

TEST(Enumeration, CountsAndValidity) {
  // Unlabelled posets on 1..3 points: 1, 2, 5.
  std::map<std::size_t, std::set<std::uint32_t>> shapes;
  std::size_t total = 0;
  enumerate_models({"a"}, 3, [&](const KripkeModel& m) {
    EXPECT_TRUE(validate_model(m).valid());
    ++total;
    std::uint32_t rel = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.leq(i, j)) rel |= 1u << (i * m.size() + j);
    shapes[m.size()].insert(rel);
    return true;
  });
  EXPECT_EQ(shapes[1].size(), 1u);
  EXPECT_EQ(shapes[2].size(), 2u);
  EXPECT_EQ(shapes[3].size(), 5u);
  // One world over one variable: a decided positively or negatively.
  EXPECT_EQ(small_models({"a"}, 1).size(), 2u);
  EXPECT_GT(total, 10u);
}

TEST(Enumeration, EarlyStop) {
  std::size_t seen = 0;
  enumerate_models({"a", "b"}, 3, [&](const KripkeModel&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5u);
}

TEST(Forcing, AgreesWithOracle) {
  auto models = small_models({"a"}, 3);
  auto props = all_modes(all_pure({"a"}, 2));
  for (const auto& m : models) {
    Forcing f(m);
    for (const auto& p : props)
      for (std::size_t w = 0; w < m.size(); ++w) ASSERT_EQ(f.forces(w, p), oracle(m, w, p)) << to_string(p);
  }
}

TEST(Forcing, Laws) {
  auto models = small_models({"a"}, 3);
  auto props = all_modes(all_pure({"a"}, 2));
  std::size_t checked = 0;
  for (const auto& m : models) {
    Forcing f(m);
    std::size_t n = m.size();
    for (const auto& p : props) {
      MProp q = opposite(p);
      for (std::size_t w = 0; w < n; ++w) {
        bool fw = f.forces(w, p);
        for (std::size_t v = 0; v < n; ++v)
          if (m.leq(w, v) && fw) ASSERT_TRUE(f.forces(v, p)) << "monotonicity " << to_string(p);
        ASSERT_FALSE(fw && f.forces(w, q)) << "non-contradiction " << to_string(p);
        bool stab = false;
        for (std::size_t v = 0; v < n && !stab; ++v)
          stab = m.leq(w, v) && f.forces(v, p) != f.forces(v, q);
        ASSERT_TRUE(stab) << "stabilization " << to_string(p);
        if (p.classical() && p.sign() == Sign::Plus) {
          bool rule = true;
          for (std::size_t v = 0; v < n; ++v)
            if (m.leq(w, v) && f.forces(v, MProp{p.base, kClassicalMinus}) &&
                !f.forces(v, MProp{p.base, kStrongPlus}))
              rule = false;
          ASSERT_EQ(fw, rule) << "classical forcing " << to_string(p);
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Soundness, LibraryForcedEverywhere) {
  auto lib = provable_library();
  ASSERT_EQ(lib.size(), 20u);
  auto models = small_models({"a", "b"}, 3);
  for (const auto& j : lib) {
    ASSERT_NO_THROW(check_type(j.ctx, j.term, j.type)) << to_string(j.term);
    std::vector<MProp> gamma;
    for (const auto& [x, p] : j.ctx.entries()) gamma.push_back(p);
    for (const auto& m : models) ASSERT_TRUE(entails_in_model(m, gamma, j.type)) << to_string(j.type);
  }
}

TEST(CounterModels, Search) {
  auto lem = countermodel_search({}, M("(a | ~a)^s+"), 3);
  ASSERT_TRUE(lem.has_value());
  EXPECT_LE(lem->model.size(), 3u);
  EXPECT_TRUE(validate_model(lem->model).valid());
  EXPECT_FALSE(forces(lem->model, lem->world, M("(a | ~a)^s+")));

  EXPECT_FALSE(countermodel_search({}, M("(a | ~a)^c+"), 3).has_value());
  EXPECT_FALSE(countermodel_search({M("a^s+")}, M("a^s+"), 4).has_value());

  // Classical affirmation does not give the strong one.
  auto weak = countermodel_search({M("a^c+")}, M("a^s+"), 3);
  ASSERT_TRUE(weak.has_value());
  EXPECT_TRUE(forces(weak->model, weak->world, M("a^c+")));
}
