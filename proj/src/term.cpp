#include "prk/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace prk {

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

bool is_binder_kind(TermKind k) { return k == TermKind::CLam || k == TermKind::Case; }

int Term::binds(std::size_t i) const {
  if (kind() == TermKind::CLam) return 1;
  if (kind() == TermKind::Case && i > 0) return 1;
  return 0;
}

Term Term::make(TermKind k, Sign sg, std::uint32_t idx, std::string name, std::string name2,
                MProp a1, MProp a2, std::vector<Term> kids) {
  std::size_t size = 1;
  std::size_t h = mix(static_cast<std::size_t>(k) * 131 + 17, static_cast<std::size_t>(sg));
  std::uint32_t loose = 0;
  switch (k) {
    case TermKind::Free:
      h = mix(h, std::hash<std::string>{}(name));
      break;
    case TermKind::Bound:
      h = mix(h, idx);
      loose = idx + 1;
      break;
    case TermKind::Proj:
    case TermKind::Inj:
      h = mix(h, idx);
      break;
    default:
      break;
  }
  if (!a1.base.empty()) h = mix(h, a1.hash());
  if (!a2.base.empty()) h = mix(h, a2.hash());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const Term& c = kids[i];
    size += c.size();
    h = mix(h, c.hash());
    std::uint32_t b = (k == TermKind::CLam || (k == TermKind::Case && i > 0)) ? 1 : 0;
    if (c.loose() > b) loose = std::max(loose, c.loose() - b);
  }
  return Term(std::make_shared<const Node>(Node{k, sg, idx, std::move(name), std::move(name2),
                                                std::move(a1), std::move(a2), std::move(kids),
                                                size, h, loose}));
}

Term Term::var(std::string name) {
  return make(TermKind::Free, Sign::Plus, 0, std::move(name), {}, {}, {}, {});
}
Term Term::bound(std::uint32_t index) {
  return make(TermKind::Bound, Sign::Plus, index, {}, {}, {}, {}, {});
}
Term Term::abs(MProp q, Term t, Term s) {
  return make(TermKind::Abs, Sign::Plus, 0, {}, {}, std::move(q), {}, {std::move(t), std::move(s)});
}
Term Term::pair(Sign sg, Term t, Term s) {
  return make(TermKind::Pair, sg, 0, {}, {}, {}, {}, {std::move(t), std::move(s)});
}
Term Term::proj(Sign sg, int i, Term t) {
  if (i != 1 && i != 2) throw std::invalid_argument("projection index must be 1 or 2");
  return make(TermKind::Proj, sg, i, {}, {}, {}, {}, {std::move(t)});
}
Term Term::inj(Sign sg, int i, Term t) {
  if (i != 1 && i != 2) throw std::invalid_argument("injection index must be 1 or 2");
  return make(TermKind::Inj, sg, i, {}, {}, {}, {}, {std::move(t)});
}
Term Term::negi(Sign sg, Term t) {
  return make(TermKind::NegI, sg, 0, {}, {}, {}, {}, {std::move(t)});
}
Term Term::nege(Sign sg, Term t) {
  return make(TermKind::NegE, sg, 0, {}, {}, {}, {}, {std::move(t)});
}
Term Term::capp(Sign sg, Term t, Term s) {
  return make(TermKind::CApp, sg, 0, {}, {}, {}, {}, {std::move(t), std::move(s)});
}
Term Term::clam_raw(Sign sg, std::string hint, MProp p, Term body) {
  return make(TermKind::CLam, sg, 0, std::move(hint), {}, std::move(p), {}, {std::move(body)});
}
Term Term::case_raw(Sign sg, Term scrut, std::string h1, MProp p1, Term b1, std::string h2,
                    MProp p2, Term b2) {
  return make(TermKind::Case, sg, 0, std::move(h1), std::move(h2), std::move(p1), std::move(p2),
              {std::move(scrut), std::move(b1), std::move(b2)});
}
Term Term::clam(Sign sg, const std::string& x, MProp p, const Term& body) {
  return clam_raw(sg, x, std::move(p), abstract(body, x));
}
Term Term::case_of(Sign sg, Term scrut, const std::string& x, MProp p1, const Term& b1,
                   const std::string& y, MProp p2, const Term& b2) {
  return case_raw(sg, std::move(scrut), x, std::move(p1), abstract(b1, x), y, std::move(p2),
                  abstract(b2, y));
}

Term Term::with_children(std::vector<Term> kids) const {
  return make(kind(), sign(), node_->idx, node_->name, node_->name2, node_->annot, node_->annot2,
               std::move(kids));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.sign != y.sign || x.idx != y.idx) return false;
  if (x.kind == TermKind::Free && x.name != y.name) return false;
  if (!(x.annot == y.annot) || !(x.annot2 == y.annot2)) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

namespace {

template <class Leaf>
Term map_term(const Term& t, std::uint32_t depth, const Leaf& leaf) {
  if (t.kind() == TermKind::Free || t.kind() == TermKind::Bound) return leaf(t, depth);
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    kids.push_back(map_term(t.child(i), depth + t.binds(i), leaf));
    changed |= kids.back().identity() != t.child(i).identity();
  }
  return changed ? t.with_children(std::move(kids)) : t;
}

}  // namespace

Term shift(const Term& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  return map_term(t, cutoff, [delta](const Term& leaf, std::uint32_t d) {
    if (leaf.kind() == TermKind::Bound && leaf.bound_index() >= d)
      return Term::bound(static_cast<std::uint32_t>(static_cast<int>(leaf.bound_index()) + delta));
    return leaf;
  });
}

Term instantiate(const Term& body, const Term& s) {
  if (body.loose() == 0) return body;
  return map_term(body, 0, [&s](const Term& leaf, std::uint32_t d) {
    if (leaf.kind() != TermKind::Bound) return leaf;
    std::uint32_t k = leaf.bound_index();
    if (k < d) return leaf;
    if (k == d) return shift(s, static_cast<int>(d));
    return Term::bound(k - 1);
  });
}

Term abstract(const Term& t, const std::string& x) {
  return map_term(t, 0, [&x](const Term& leaf, std::uint32_t d) {
    if (leaf.kind() == TermKind::Free) return leaf.name() == x ? Term::bound(d) : leaf;
    if (leaf.bound_index() >= d) return Term::bound(leaf.bound_index() + 1);
    return leaf;
  });
}

bool has_loose(const Term& t, std::uint32_t index) {
  if (t.loose() <= index) return false;
  if (t.kind() == TermKind::Bound) return t.bound_index() == index;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_loose(t.child(i), index + t.binds(i))) return true;
  return false;
}

void collect_fv(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Free) {
    out.insert(t.name());
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_fv(t.child(i), out);
}

std::set<std::string> fv(const Term& t) {
  std::set<std::string> out;
  collect_fv(t, out);
  return out;
}

bool occurs_free(const Term& t, const std::string& x) {
  if (t.kind() == TermKind::Free) return t.name() == x;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (occurs_free(t.child(i), x)) return true;
  return false;
}

namespace {
void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Free) out.insert(t.name());
  if (t.kind() == TermKind::CLam) out.insert(t.hint(0));
  if (t.kind() == TermKind::Case) {
    out.insert(t.hint(0));
    out.insert(t.hint(1));
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_names(t.child(i), out);
}
}  // namespace

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

std::string fresh_name(const std::string& hint, const std::set<std::string>& avoid) {
  std::string base = hint.empty() ? "v" : hint;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
  if (base.empty()) base = "v";
  if (!avoid.count(hint) && !hint.empty()) return hint;
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

Term substitute(const Term& t, const std::string& x, const Term& s) {
  if (!occurs_free(t, x)) return t;
  return map_term(t, 0, [&](const Term& leaf, std::uint32_t d) {
    if (leaf.kind() == TermKind::Free && leaf.name() == x) return shift(s, static_cast<int>(d));
    return leaf;
  });
}

Term dual(const Term& t) {
  switch (t.kind()) {
    case TermKind::Free:
    case TermKind::Bound:
      return t;
    case TermKind::Abs:
      return Term::abs(dual(t.annot()), dual(t.child(0)), dual(t.child(1)));
    case TermKind::Pair:
      return Term::pair(flip(t.sign()), dual(t.child(0)), dual(t.child(1)));
    case TermKind::Proj:
      return Term::proj(flip(t.sign()), t.index(), dual(t.child(0)));
    case TermKind::Inj:
      return Term::inj(flip(t.sign()), t.index(), dual(t.child(0)));
    case TermKind::NegI:
      return Term::negi(flip(t.sign()), dual(t.child(0)));
    case TermKind::NegE:
      return Term::nege(flip(t.sign()), dual(t.child(0)));
    case TermKind::CApp:
      return Term::capp(flip(t.sign()), dual(t.child(0)), dual(t.child(1)));
    case TermKind::CLam:
      return Term::clam_raw(flip(t.sign()), t.hint(0), dual(t.annot()), dual(t.child(0)));
    case TermKind::Case:
      return Term::case_raw(flip(t.sign()), dual(t.child(0)), t.hint(0), dual(t.annot(0)),
                            dual(t.child(1)), t.hint(1), dual(t.annot(1)), dual(t.child(2)));
  }
  return t;
}

const Term& subterm(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p) cur = &cur->child(i);
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& r, std::size_t at) {
  if (at == p.size()) return r;
  std::vector<Term> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(t.child(i));
  kids[p[at]] = replace_at(t.child(p[at]), p, r, at + 1);
  return t.with_children(std::move(kids));
}

std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i] + 1);
  }
  return s;
}

}  // namespace prk
