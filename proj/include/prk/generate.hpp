#pragma once

#include <optional>
#include <random>
#include <vector>

#include "prk/term.hpp"
#include "prk/typing.hpp"

namespace prk {

struct GenConfig {
  int max_depth = 4;
  std::size_t max_size = 40;
  std::vector<std::string> atoms = {"a", "b"};
  int aux_depth = 1;        // depth of invented auxiliary propositions
  double redex_bias = 0.4;  // chance of trying an elimination-of-introduction shape first
  int attempts = 200;
  int budget = 60;  // gen calls per attempt before falling back to leaves
};

// Random typed terms, generated top-down from a goal type.
class TermGenerator {
 public:
  TermGenerator(std::mt19937_64& rng, GenConfig cfg = {}) : rng_(rng), cfg_(std::move(cfg)) {}

  std::optional<Term> generate(const Context& ctx, const MProp& goal);
  PureProp random_pure(int depth);
  MProp random_mprop(int depth);
  Mode random_mode();

 private:
  std::optional<Term> gen(const Context& ctx, const MProp& goal, int depth);
  std::optional<Term> leaf(const Context& ctx, const MProp& goal);
  std::string fresh(const Context& ctx);
  bool coin(double p) { return std::uniform_real_distribution<>(0, 1)(rng_) < p; }
  int pick(int n) { return std::uniform_int_distribution<>(0, n - 1)(rng_); }

  std::mt19937_64& rng_;
  GenConfig cfg_;
  int counter_ = 0;
  int budget_ = 0;
};

}  // namespace prk
