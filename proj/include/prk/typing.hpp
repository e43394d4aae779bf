#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prk/prop.hpp"
#include "prk/term.hpp"

namespace prk {

enum class Rule {
  Ax,
  Abs,
  AndIPlus,   // pair+
  OrIMinus,   // pair-
  AndEPlus,   // proj+
  OrEMinus,   // proj-
  OrIPlus,    // in+
  AndIMinus,  // in-
  OrEPlus,    // case+
  AndEMinus,  // case-
  NegIPlus,
  NegIMinus,
  NegEPlus,
  NegEMinus,
  CIPlus,  // clam+
  CIMinus,
  CEPlus,  // capp+
  CEMinus,
};

const char* rule_name(Rule r);
Rule dual(Rule r);

enum class TypeErrorKind {
  UnboundVariable,
  ModeMismatch,
  NotStrong,
  AnnotationMismatch,
  SignMismatch,
  CannotInfer,
  DuplicateVariable,
  TypesNotOpposite,
  NotClassical,
  NoSuchAssumption,
  InvalidDerivation,
};

const char* error_name(TypeErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(error_name(k)) + ": " + msg), kind_(k) {}
  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

class Context {
 public:
  using Entry = std::pair<std::string, MProp>;

  Context() = default;
  Context(std::initializer_list<Entry> entries);

  void add(const std::string& x, const MProp& p);
  Context extended(const std::string& x, const MProp& p) const;
  Context with_type(const std::string& x, const MProp& p) const;  // replace an entry
  Context without(const std::string& x) const;
  std::optional<MProp> lookup(const std::string& x) const;
  bool contains(const std::string& x) const { return lookup(x).has_value(); }
  std::set<std::string> names() const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<Entry> entries_;
};

Context dual(const Context& c);

struct Derivation {
  Rule rule = Rule::Ax;
  Context context;
  Term subject;
  MProp conclusion;
  std::vector<Derivation> premises;
  // Name used to open the binder above premise i ("" when none).
  std::vector<std::string> opened;
};

Derivation infer_type(const Context& ctx, const Term& t);
Derivation check_type(const Context& ctx, const Term& t, const MProp& expected);
// Type of t if it checks; empty otherwise.
std::optional<MProp> type_of(const Context& ctx, const Term& t);

// Re-checks one node against its rule schema; the whole tree when deep.
bool validate(const Derivation& d, bool deep = true, std::string* why = nullptr);
Derivation dual(const Derivation& d);
std::size_t derivation_size(const Derivation& d);

// Opens child i of a binder node with a name fresh for ctx and the term.
std::pair<std::string, Term> open_binder(const Term& t, std::size_t child, const Context& ctx);

}  // namespace prk
