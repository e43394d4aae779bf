#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "prk/prop.hpp"

namespace prk {

enum class TermKind : unsigned char { Free, Bound, Abs, Pair, Proj, Inj, Case, NegI, NegE, CLam, CApp };

// Proof terms. Bound variables are de Bruijn indices, free ones are names,
// so structural equality is alpha-equivalence. Binder names are kept only
// as printing hints and are ignored by ==.
class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term bound(std::uint32_t index);
  static Term abs(MProp q, Term t, Term s);
  static Term pair(Sign sg, Term t, Term s);
  static Term proj(Sign sg, int i, Term t);
  static Term inj(Sign sg, int i, Term t);
  static Term negi(Sign sg, Term t);
  static Term nege(Sign sg, Term t);
  static Term capp(Sign sg, Term t, Term s);
  // Bodies given here are already in de Bruijn form.
  static Term clam_raw(Sign sg, std::string hint, MProp p, Term body);
  static Term case_raw(Sign sg, Term scrut, std::string h1, MProp p1, Term b1, std::string h2,
                       MProp p2, Term b2);
  // Named-binder forms: the variable is abstracted out of the body.
  static Term clam(Sign sg, const std::string& x, MProp p, const Term& body);
  static Term case_of(Sign sg, Term scrut, const std::string& x, MProp p1, const Term& b1,
                      const std::string& y, MProp p2, const Term& b2);

  bool empty() const { return !node_; }
  TermKind kind() const { return node_->kind; }
  Sign sign() const { return node_->sign; }
  int index() const { return static_cast<int>(node_->idx); }
  std::uint32_t bound_index() const { return node_->idx; }
  const std::string& name() const { return node_->name; }
  // Binder hint of branch i (Case) or of the lambda (CLam, i = 0).
  const std::string& hint(int i = 0) const { return i == 0 ? node_->name : node_->name2; }
  // Abs result annotation, CLam binder type, or Case binder types.
  const MProp& annot(int i = 0) const { return i == 0 ? node_->annot : node_->annot2; }
  std::size_t arity() const { return node_->kids.size(); }
  const Term& child(std::size_t i) const { return node_->kids[i]; }
  // Number of binders between this node and child i.
  int binds(std::size_t i) const;
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_ ? node_->hash : 0; }
  // One past the largest loose de Bruijn index; 0 when locally closed.
  std::uint32_t loose() const { return node_->loose; }

  Term with_children(std::vector<Term> kids) const;

  friend bool operator==(const Term& a, const Term& b);
  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    TermKind kind;
    Sign sign;
    std::uint32_t idx;
    std::string name, name2;
    MProp annot, annot2;
    std::vector<Term> kids;
    std::size_t size, hash;
    std::uint32_t loose;
  };
  static Term make(TermKind k, Sign sg, std::uint32_t idx, std::string name, std::string name2,
                   MProp a1, MProp a2, std::vector<Term> kids);
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool is_binder_kind(TermKind k);

// de Bruijn plumbing
Term shift(const Term& t, int delta, std::uint32_t cutoff = 0);
Term instantiate(const Term& body, const Term& s);  // body[0 := s]
Term abstract(const Term& t, const std::string& x);  // x becomes index 0
bool has_loose(const Term& t, std::uint32_t index);

std::set<std::string> fv(const Term& t);
void collect_fv(const Term& t, std::set<std::string>& out);
bool occurs_free(const Term& t, const std::string& x);
std::set<std::string> all_names(const Term& t);  // free names and binder hints
std::string fresh_name(const std::string& hint, const std::set<std::string>& avoid);

Term substitute(const Term& t, const std::string& x, const Term& s);
Term dual(const Term& t);

using Position = std::vector<std::uint8_t>;
const Term& subterm(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& r, std::size_t at = 0);
std::string position_string(const Position& p);

}  // namespace prk

template <>
struct std::hash<prk::Term> {
  std::size_t operator()(const prk::Term& t) const { return t.hash(); }
};
