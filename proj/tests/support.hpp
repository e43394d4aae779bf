#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prk/generate.hpp"
#include "prk/rewrite.hpp"
#include "prk/term.hpp"
#include "prk/typing.hpp"

namespace prk::testing {

// PRK_SEED, or a fixed default.
std::uint64_t seed();
std::mt19937_64 make_rng(std::uint64_t salt = 0);

Term T(const std::string& text);
MProp M(const std::string& text);
PureProp A(const std::string& text);

struct Typed {
  Context ctx;
  Term term;
  MProp type;
};

// Typed corpus: goals and contexts drawn at random, every entry re-checked.
std::vector<Typed> typed_corpus(std::size_t n, std::uint64_t salt, GenConfig cfg = {},
                                bool classical_only = false);

// Closed typed terms (built by cutting lemP/lemN instances into open terms).
std::vector<Typed> closed_corpus(std::size_t n, std::uint64_t salt);

// Twenty provable judgments: excluded middle instances and admissible-rule conclusions.
std::vector<Typed> provable_library();

// All pure propositions over the given atoms up to a depth.
std::vector<PureProp> all_pure(const std::vector<std::string>& atoms, int depth);
std::vector<MProp> all_modes(const std::vector<PureProp>& props);

// Every term of size exactly n checking against goal under ctx, with auxiliary
// propositions drawn from universe.
class Enumerator {
 public:
  explicit Enumerator(std::vector<PureProp> universe) : universe_(std::move(universe)) {}
  const std::vector<Term>& terms(const Context& ctx, const MProp& goal, std::size_t n);

 private:
  std::vector<Term> build(const Context& ctx, const MProp& goal, std::size_t n);
  std::vector<PureProp> universe_;
  std::map<std::string, std::vector<Term>> memo_;
};

// Positions of t paired with the type the derivation assigns there.
std::vector<std::pair<Position, MProp>> subterm_types(const Derivation& d);

// Replaces a random classical-typed subterm u by clam(k. capp(u, k)); empty if none.
std::optional<Term> eta_expand_somewhere(const Derivation& d, std::mt19937_64& rng);

// Terms reachable from t by 1..depth steps of a single rule.
std::vector<Term> reach_with(const Term& t, RuleName rule, RewriteMode mode, std::size_t depth,
                             std::size_t cap = 5000);

}  // namespace prk::testing
