#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// System F with the Pos/Neg recursive type constraints.
namespace prk::f {

enum class TyKind : unsigned char { Var, Bound, Pos, Neg, Arrow, Forall };

class Type {
 public:
  Type() = default;
  static Type var(std::string name);
  static Type bound(std::uint32_t index);
  static Type pos(Type a, Type b);
  static Type neg(Type a, Type b);
  static Type arrow(Type a, Type b);
  static Type forall_raw(std::string hint, Type body);
  static Type forall(const std::string& a, const Type& body);  // binds the named variable

  bool empty() const { return !node_; }
  TyKind kind() const;
  const std::string& name() const;  // Var name or Forall hint
  std::uint32_t index() const;
  const Type& left() const;
  const Type& right() const;
  const Type& body() const;
  std::size_t size() const;
  std::size_t hash() const;
  std::uint32_t loose() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }
  friend int compare(const Type& a, const Type& b);

 private:
  struct Node;
  static Type make(TyKind k, std::string name, std::uint32_t index, Type l, Type r);
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Type::Node {
  TyKind kind;
  std::string name;
  std::uint32_t index;
  Type left, right;
  std::size_t size, hash;
  std::uint32_t loose;
};

inline TyKind Type::kind() const { return node_->kind; }
inline const std::string& Type::name() const { return node_->name; }
inline std::uint32_t Type::index() const { return node_->index; }
inline const Type& Type::left() const { return node_->left; }
inline const Type& Type::right() const { return node_->right; }
inline const Type& Type::body() const { return node_->left; }
inline std::size_t Type::size() const { return node_->size; }
inline std::size_t Type::hash() const { return node_ ? node_->hash : 0; }
inline std::uint32_t Type::loose() const { return node_->loose; }

Type shift(const Type& t, int delta, std::uint32_t cutoff = 0);
Type instantiate(const Type& body, const Type& s);  // body[0 := s]
Type abstract(const Type& t, const std::string& a, std::uint32_t depth = 0);
std::set<std::string> ftv(const Type& t);

// Pos<A,B> -> Neg<A,B> -> A and Neg<A,B> -> Pos<A,B> -> B.
Type unfold(const Type& t);
// Equality up to the constraints, decided coinductively.
bool equiv(const Type& a, const Type& b);

Type zero();
Type one();
Type times(const Type& a, const Type& b);
Type plus(const Type& a, const Type& b);

enum class TmKind : unsigned char { Var, Bound, Lam, App, TLam, TApp };

class Term {
 public:
  Term() = default;
  static Term var(std::string name);
  static Term bound(std::uint32_t index);
  static Term lam_raw(std::string hint, Type ty, Term body);
  static Term lam(const std::string& x, Type ty, const Term& body);
  static Term app(Term t, Term s);
  static Term tlam_raw(std::string hint, Term body);
  static Term tlam(const std::string& a, const Term& body);
  static Term tapp(Term t, Type ty);

  bool empty() const { return !node_; }
  TmKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // Var name or binder hint
  std::uint32_t index() const { return node_->index; }
  const Type& type() const { return node_->type; }  // Lam annotation or TApp argument
  std::size_t arity() const { return node_->kids.size(); }
  const Term& child(std::size_t i) const { return node_->kids[i]; }
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_ ? node_->hash : 0; }
  std::uint32_t loose() const { return node_->loose; }        // term indices
  std::uint32_t loose_type() const { return node_->tloose; }  // type indices
  bool closed() const;  // no free term variables, no loose indices
  bool has_free_vars() const { return node_->free_vars; }
  bool has_free_type_vars() const { return node_->free_tvars; }

  Term with_children(std::vector<Term> kids) const;
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TmKind kind;
    std::string name;
    std::uint32_t index;
    Type type;
    std::vector<Term> kids;
    std::size_t size, hash;
    std::uint32_t loose, tloose;
    bool free_vars, free_tvars;
  };
  static Term make(TmKind k, std::string name, std::uint32_t index, Type ty,
                   std::vector<Term> kids);
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Term shift_terms(const Term& t, int delta, std::uint32_t cutoff = 0);
Term shift_types(const Term& t, int delta, std::uint32_t cutoff = 0);
Term instantiate(const Term& body, const Term& s);          // term index 0 := s
Term instantiate_type(const Term& body, const Type& a);     // type index 0 := a
Term abstract(const Term& t, const std::string& x);         // free x becomes term index 0
Term abstract_type(const Term& t, const std::string& a);    // free type var a becomes index 0
Term substitute(const Term& t, const std::string& x, const Term& s);
std::set<std::string> fv(const Term& t);

// Encodings of 1, 0, products and sums, elaborated to raw terms.
Term triv();
Term abort(const Type& a, const Term& t);
Term pair(const Type& a, const Type& b, const Term& t, const Term& s);
Term proj(int i, const Type& a1, const Type& a2, const Term& t);
Term inj(int i, const Type& a1, const Type& a2, const Term& t);
Term case_of(const Term& t, const Type& a1, const Type& a2, const Type& result,
             const std::string& x, const Term& s1, const std::string& y, const Term& s2);

enum class ErrorKind { UnboundVariable, NotAnArrow, NotAForall, DomainMismatch };

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

using Context = std::map<std::string, Type>;
Type infer(const Context& ctx, const Term& t);

using Position = std::vector<std::uint8_t>;
bool is_redex(const Term& t);
Term contract(const Term& t);  // root redex
std::vector<Position> redexes(const Term& t);
const Term& subterm(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& r, std::size_t at = 0);
std::optional<Term> step(const Term& t);  // leftmost-outermost

class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted() : std::runtime_error("fuel exhausted") {}
};
Term normalize(const Term& t, std::size_t fuel = 100000, std::size_t* steps = nullptr);

// Variables occurring (weakly) positively/negatively; Pos/Neg nodes count as variables.
struct Polarity {
  std::set<Type> pos, neg, wpos, wneg;
  std::size_t compl_ = 0;
};
Polarity polarity(const Type& t);
std::size_t complexity(const Type& t);

std::string to_string(const Type& t);
std::string to_string(const Term& t);
Type parse_type(std::string_view text);
Term parse_term(std::string_view text);

}  // namespace prk::f

template <>
struct std::hash<prk::f::Type> {
  std::size_t operator()(const prk::f::Type& t) const { return t.hash(); }
};
template <>
struct std::hash<prk::f::Term> {
  std::size_t operator()(const prk::f::Term& t) const { return t.hash(); }
};
