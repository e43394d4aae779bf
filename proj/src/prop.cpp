#include "prk/prop.hpp"

#include <algorithm>
#include <functional>

namespace prk {

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

PureProp PureProp::make(Kind k, std::string name, PureProp l, PureProp r) {
  std::size_t size = 1, depth = 0;
  std::size_t h = static_cast<std::size_t>(k) * 31 + 7;
  if (k == Kind::Var) {
    h = mix(h, std::hash<std::string>{}(name));
  } else {
    size += l.size();
    depth = l.depth() + 1;
    h = mix(h, l.hash());
    if (k != Kind::Neg) {
      size += r.size();
      depth = std::max(depth, r.depth() + 1);
      h = mix(h, r.hash());
    }
  }
  return PureProp(std::make_shared<const Node>(
      Node{k, std::move(name), std::move(l), std::move(r), size, depth, h}));
}

PureProp PureProp::var(std::string name) { return make(Kind::Var, std::move(name), {}, {}); }
PureProp PureProp::conj(PureProp a, PureProp b) { return make(Kind::And, {}, std::move(a), std::move(b)); }
PureProp PureProp::disj(PureProp a, PureProp b) { return make(Kind::Or, {}, std::move(a), std::move(b)); }
PureProp PureProp::neg(PureProp a) { return make(Kind::Neg, {}, std::move(a), {}); }

int compare(const PureProp& a, const PureProp& b) {
  if (a.empty() || b.empty()) return int(!a.empty()) - int(!b.empty());
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case PureProp::Kind::Var:
      return a.name().compare(b.name());
    case PureProp::Kind::Neg:
      return compare(a.inner(), b.inner());
    default:
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
  }
}

bool operator==(const PureProp& a, const PureProp& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

bool operator<(const PureProp& a, const PureProp& b) { return compare(a, b) < 0; }

bool operator<(const MProp& a, const MProp& b) {
  if (int c = compare(a.base, b.base)) return c < 0;
  if (a.mode.strength != b.mode.strength) return a.mode.strength < b.mode.strength;
  return a.mode.sign < b.mode.sign;
}

std::size_t MProp::hash() const {
  return mix(base.hash(), static_cast<std::size_t>(mode.strength) * 2 +
                              static_cast<std::size_t>(mode.sign));
}

MProp opposite(const MProp& p) { return {p.base, {p.mode.strength, flip(p.mode.sign)}}; }

MProp truncate(const MProp& p) { return {p.base, {Strength::Classical, p.mode.sign}}; }

std::size_t measure(const MProp& p) {
  return 2 * p.base.size() + (p.classical() ? 1 : 0);
}

PureProp dual(const PureProp& a) {
  switch (a.kind()) {
    case PureProp::Kind::Var:
      return a;
    case PureProp::Kind::And:
      return PureProp::disj(dual(a.left()), dual(a.right()));
    case PureProp::Kind::Or:
      return PureProp::conj(dual(a.left()), dual(a.right()));
    case PureProp::Kind::Neg:
      return PureProp::neg(dual(a.inner()));
  }
  return a;
}

MProp dual(const MProp& p) { return {dual(p.base), {p.mode.strength, flip(p.mode.sign)}}; }

void collect_vars(const PureProp& a, std::set<std::string>& out) {
  switch (a.kind()) {
    case PureProp::Kind::Var:
      out.insert(a.name());
      break;
    case PureProp::Kind::Neg:
      collect_vars(a.inner(), out);
      break;
    default:
      collect_vars(a.left(), out);
      collect_vars(a.right(), out);
  }
}

std::set<std::string> vars(const PureProp& a) {
  std::set<std::string> out;
  collect_vars(a, out);
  return out;
}

PureProp bottom() {
  static const PureProp b = [] {
    auto v = PureProp::var(kBotVar);
    return PureProp::conj(v, PureProp::neg(v));
  }();
  return b;
}

}  // namespace prk
