#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "prk/fsyntax.hpp"
#include "prk/typing.hpp"

// Translation of typed terms into System F.
namespace prk {

f::Type translate_prop(const MProp& p);
f::Context translate_context(const Context& ctx);

class Translator {
 public:
  f::Term term(const Derivation& d);
  // Closed term of type semF(P) -> semF(~P) -> semF(Q).
  const f::Term& funabs(const MProp& p, const MProp& q);

 private:
  std::map<std::pair<MProp, MProp>, f::Term> memo_;
};

f::Term translate_term(const Derivation& d);

struct Simulation {
  bool found = false;
  std::size_t steps = 0;   // length of the shortest F reduction found
  std::size_t states = 0;  // states visited
  bool truncated = false;  // search stopped at the state cap
};

// Searches for semF(t) ->+ semF(s) in at most `depth` steps, where d types t. When s is
// a one-step reduct of t the search runs on the translated redex only. The search is
// weak (nothing under a binder is contracted) and leaves alone locally closed subterms
// that already occur in the target.
Simulation check_simulation(const Derivation& d, const Term& s, std::size_t depth = 25,
                            std::size_t max_states = 200000);
// Same, checking that d types t.
Simulation check_simulation(const Term& t, const Term& s, const Derivation& d,
                            std::size_t depth = 25);

}  // namespace prk
