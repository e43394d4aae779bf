#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>

namespace prk {

enum class Sign : unsigned char { Plus, Minus };
enum class Strength : unsigned char { Strong, Classical };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct Mode {
  Strength strength = Strength::Strong;
  Sign sign = Sign::Plus;

  bool strong() const { return strength == Strength::Strong; }
  bool classical() const { return strength == Strength::Classical; }
  friend bool operator==(const Mode&, const Mode&) = default;
};

inline constexpr Mode kStrongPlus{Strength::Strong, Sign::Plus};
inline constexpr Mode kStrongMinus{Strength::Strong, Sign::Minus};
inline constexpr Mode kClassicalPlus{Strength::Classical, Sign::Plus};
inline constexpr Mode kClassicalMinus{Strength::Classical, Sign::Minus};

// Pure propositions, immutable and shared.
class PureProp {
 public:
  enum class Kind : unsigned char { Var, And, Or, Neg };

  PureProp() = default;

  static PureProp var(std::string name);
  static PureProp conj(PureProp a, PureProp b);
  static PureProp disj(PureProp a, PureProp b);
  static PureProp neg(PureProp a);

  bool empty() const { return !node_; }
  Kind kind() const;
  const std::string& name() const;
  const PureProp& left() const;
  const PureProp& right() const;
  const PureProp& inner() const;
  std::size_t size() const;
  std::size_t depth() const;
  std::size_t hash() const;

  friend bool operator==(const PureProp& a, const PureProp& b);
  friend bool operator<(const PureProp& a, const PureProp& b);

 private:
  struct Node;
  explicit PureProp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static PureProp make(Kind k, std::string name, PureProp l, PureProp r);
  std::shared_ptr<const Node> node_;
};

struct PureProp::Node {
  Kind kind;
  std::string name;
  PureProp left, right;
  std::size_t size, depth, hash;
};

inline PureProp::Kind PureProp::kind() const { return node_->kind; }
inline const std::string& PureProp::name() const { return node_->name; }
inline const PureProp& PureProp::left() const { return node_->left; }
inline const PureProp& PureProp::right() const { return node_->right; }
inline const PureProp& PureProp::inner() const { return node_->left; }
inline std::size_t PureProp::size() const { return node_->size; }
inline std::size_t PureProp::depth() const { return node_->depth; }
inline std::size_t PureProp::hash() const { return node_ ? node_->hash : 0; }

int compare(const PureProp& a, const PureProp& b);

struct MProp {
  PureProp base;
  Mode mode;

  bool strong() const { return mode.strong(); }
  bool classical() const { return mode.classical(); }
  Sign sign() const { return mode.sign; }
  std::size_t hash() const;

  friend bool operator==(const MProp&, const MProp&) = default;
  friend bool operator<(const MProp& a, const MProp& b);
};

inline MProp mprop(PureProp a, Mode m) { return MProp{std::move(a), m}; }

MProp opposite(const MProp& p);
MProp truncate(const MProp& p);
std::size_t measure(const MProp& p);
PureProp dual(const PureProp& a);
MProp dual(const MProp& p);

void collect_vars(const PureProp& a, std::set<std::string>& out);
std::set<std::string> vars(const PureProp& a);

// Falsity (a0 & ~a0) over the reserved variable.
inline constexpr const char* kBotVar = "_bot0";
PureProp bottom();

}  // namespace prk

template <>
struct std::hash<prk::PureProp> {
  std::size_t operator()(const prk::PureProp& p) const { return p.hash(); }
};
template <>
struct std::hash<prk::MProp> {
  std::size_t operator()(const prk::MProp& p) const { return p.hash(); }
};
