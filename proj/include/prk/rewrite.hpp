#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prk/term.hpp"
#include "prk/typing.hpp"

namespace prk {

enum class RuleName { Proj, Case, Neg, Beta, AbsPairInj, AbsInjPair, AbsNeg, Eta };
enum class RewriteMode { Plain, Eta };

const char* rule_name(RuleName r);

struct Redex {
  RuleName rule;
  Position pos;
};

struct TraceEntry {
  Position pos;
  RuleName rule;
  Term redex;
  Term reduct;
};
using Trace = std::vector<TraceEntry>;

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(std::size_t fuel)
      : std::runtime_error("fuel exhausted after " + std::to_string(fuel) + " steps") {}
};

// Contracts t at its root if it is a redex.
std::optional<std::pair<RuleName, Term>> contract_root(const Term& t, RewriteMode mode);
std::optional<RuleName> redex_rule(const Term& t, RewriteMode mode);
// All redexes in leftmost-outermost order.
std::vector<Redex> redexes(const Term& t, RewriteMode mode);
Term contract_at(const Term& t, const Position& p, RewriteMode mode);

std::optional<TraceEntry> step(const Term& t, RewriteMode mode);
std::optional<TraceEntry> step_innermost(const Term& t, RewriteMode mode);  // rightmost-innermost

struct Normalized {
  Term term;
  Trace trace;
  std::size_t steps = 0;
};

Normalized normalize(const Term& t, RewriteMode mode, std::size_t fuel = 100000,
                     bool keep_trace = true);
Term normalize_innermost(const Term& t, RewriteMode mode, std::size_t fuel = 100000);
Term apply(const Term& t, const TraceEntry& e);
Term replay(const Term& start, const Trace& trace);

// Terms reachable in at most `depth` steps (optionally with one rule only).
bool reachable(const Term& from, const Term& to, RewriteMode mode, std::size_t depth,
               std::size_t max_states = 200000, std::optional<RuleName> only = std::nullopt,
               bool at_least_one = false);

// Normal/neutral grammar.
bool is_normal(const Term& t);
bool is_neutral(const Term& t);
bool is_canonical(const Term& t);
bool is_explosion(const Term& t);

struct ShapeReport {
  bool normal = false;
  bool neutral = false;
  bool canonical = false;
  // Clause of the canonicity theorem applicable to the judgment, if any.
  std::optional<int> clause;
  bool clause_holds = false;
  std::string shape;
};

ShapeReport classify(const Term& t, const Derivation* d = nullptr);
bool case_context_open_explosion(const Term& t);
bool elim_context_var_or_open_explosion(const Term& t);

}  // namespace prk
