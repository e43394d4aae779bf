#pragma once

#include <string>

#include "prk/term.hpp"
#include "prk/typing.hpp"

namespace prk {

// Generalized absurdity, decided by the mode of the left premise.
Term abs_general(const MProp& q, Mode left_mode, const Term& t, const Term& s);
Term mk_abs_general(const MProp& q, const MProp& p, const MProp& p_opp, const Term& t,
                    const Term& s);
Term mk_abs_general(const Context& ctx, const MProp& q, const Term& t, const Term& s);

// From Γ, x:P ⊢ t : Q build a term of opposite(P) under Γ, y : opposite(Q).
Term mk_contrapose(const std::string& x, const MProp& p, const std::string& y, const Term& t,
                   const MProp& q);
Term mk_contrapose(const Context& ctx, const std::string& x, const std::string& y, const Term& t);

Term mk_lem(const PureProp& a, Sign sign);
MProp lem_type(const PureProp& a, Sign sign);

// Lambda with a binder that the body does not use.
Term vacuous_clam(Sign sg, const MProp& binder, const Term& body);
// Projection of conclusions: a term of ⌊P⌋ from one of P.
Term project_conclusion(const Term& t, const MProp& p);
// Classical strengthening of Γ, k:P~ ⊢ t : P (P classical) into clam(k. capp(t, k)).
Term strengthen(const std::string& k, const MProp& p, const Term& t);

// Γ, x:P ⊢ t : Q  ~>  Γ, x:⌊P⌋ ⊢ t' : ⌊Q⌋
Derivation project_derivation(const Derivation& d, const std::string& target);

}  // namespace prk
