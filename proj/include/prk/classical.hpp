#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "prk/rewrite.hpp"
#include "prk/term.hpp"
#include "prk/typing.hpp"

// Classical logic inside PRK: erasure, truth tables, and the NK embedding.
namespace prk {

enum class ClassicalErrorKind { WrongMode, InvalidNKProof, BadFile };

class ClassicalError : public std::runtime_error {
 public:
  ClassicalError(ClassicalErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  ClassicalErrorKind kind() const { return kind_; }

 private:
  ClassicalErrorKind kind_;
};

PureProp classem(const MProp& p);
// A => B, read as ~A | B.
PureProp implies(const PureProp& a, const PureProp& b);

bool tt_eval(const PureProp& a, const std::vector<std::string>& vars, std::uint32_t valuation);
bool tt_valid(const std::vector<PureProp>& hyps, const PureProp& goal);
// Provability of a sequent whose propositions are all classical affirmations.
bool decide_oplus(const std::vector<MProp>& gamma, const MProp& p);

enum class NKRule { Hyp, AndI, AndE, OrI, OrE, NegI, NegE, Explosion, LEM, ImpI, ImpE };
const char* nk_rule_name(NKRule r);

// Hyp and AndE/OrI use `index` (1-based). OrE, NegI and ImpI discharge a hypothesis by
// appending it to the premise's hypothesis list.
struct NKProof {
  NKRule rule = NKRule::Hyp;
  int index = 0;
  PureProp concl;
  std::vector<PureProp> hyps;
  std::vector<NKProof> premises;
};

// Throws InvalidNKProof naming the first bad node.
void check_nk(const NKProof& p);
// Hypothesis name used for position i (1-based).
std::string nk_hyp_name(std::size_t i);
Context nk_context(const NKProof& p);

// {"hyps": [...], "proof": {"rule": ..., "index": ..., "concl": ..., "premises": [...]}}.
// Falsity is written "_|_".
NKProof nk_from_json(const std::string& text);
std::string nk_to_json(const NKProof& p);

// Combinators; propositions are those of the classical affirmations involved.
Term pairc(const PureProp& a, const PureProp& b, const Term& t, const Term& s);
Term projic(int i, const PureProp& a1, const PureProp& a2, const Term& t);
Term inic(int i, const PureProp& a1, const PureProp& a2, const Term& t);
Term casec(const PureProp& a, const PureProp& b, const PureProp& c, const Term& t,
           const std::string& x, const Term& s, const Term& u);
Term neglamc(const PureProp& a, const std::string& x, const Term& t);
Term negapc(const PureProp& a, const Term& t, const Term& s);
Term explosion(const MProp& q, const Term& t);
Term lemc(const PureProp& a);
Term lamc(const PureProp& a, const PureProp& b, const std::string& x, const Term& t);
Term appc(const PureProp& a, const PureProp& b, const Term& t, const Term& s);

// Typed at x1:A1^c+, ..., xn:An^c+ |- t : B^c+.
Term embed_nk(const NKProof& p);

enum class ClassicalRule { Proj, Case, App, Lem };
const char* classical_rule_name(ClassicalRule r);

struct ClassicalPieces {
  int i = 1;
  PureProp a, b, c;  // proj: A1, A2; case: A, B, C; app: A, B; lem: A, C
  std::string x = "x";
  Term t, t1, t2, s, s1, s2;
};

struct ClassicalRun {
  Term lhs, rhs;          // redex side and stated right-hand side
  Normalized lhs_normal;  // eta normalization of lhs, with its trace
  Term rhs_normal;
  bool rhs_is_normal = false;
  bool holds = false;  // lhs and rhs reach the same normal form
};

// Pieces are typechecked under ctx (TypeError otherwise).
ClassicalRun run_classical_rule(ClassicalRule kind, const ClassicalPieces& pieces,
                                const Context& ctx);

}  // namespace prk
