#include "prk/fsyntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "prk/term.hpp"
#include "prk/text.hpp"

namespace prk::f {

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
std::uint32_t under(std::uint32_t loose, std::uint32_t binders) {
  return loose > binders ? loose - binders : 0;
}
}  // namespace

// ---------------------------------------------------------------- types

Type Type::make(TyKind k, std::string name, std::uint32_t index, Type l, Type r) {
  std::size_t size = 1;
  std::size_t h = mix(static_cast<std::size_t>(k) * 131 + 7, 0);
  std::uint32_t loose = 0;
  if (k == TyKind::Var) h = mix(h, std::hash<std::string>{}(name));
  if (k == TyKind::Bound) {
    h = mix(h, index);
    loose = index + 1;
  }
  std::uint32_t b = k == TyKind::Forall ? 1 : 0;
  for (const Type* c : {&l, &r}) {
    if (c->empty()) continue;
    size += c->size();
    h = mix(h, c->hash());
    loose = std::max(loose, under(c->loose(), b));
  }
  return Type(std::make_shared<const Node>(
      Node{k, std::move(name), index, std::move(l), std::move(r), size, h, loose}));
}

Type Type::var(std::string name) { return make(TyKind::Var, std::move(name), 0, {}, {}); }
Type Type::bound(std::uint32_t i) { return make(TyKind::Bound, {}, i, {}, {}); }
Type Type::pos(Type a, Type b) { return make(TyKind::Pos, {}, 0, std::move(a), std::move(b)); }
Type Type::neg(Type a, Type b) { return make(TyKind::Neg, {}, 0, std::move(a), std::move(b)); }
Type Type::arrow(Type a, Type b) {
  return make(TyKind::Arrow, {}, 0, std::move(a), std::move(b));
}
Type Type::forall_raw(std::string hint, Type body) {
  return make(TyKind::Forall, std::move(hint), 0, std::move(body), {});
}
Type Type::forall(const std::string& a, const Type& body) {
  std::string hint = a.empty() || a[0] != '%' ? a : a.substr(1);
  return forall_raw(hint, abstract(body, a));
}

int compare(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return 0;
  if (a.empty() || b.empty()) return a.empty() ? (b.empty() ? 0 : -1) : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case TyKind::Var:
      return a.name().compare(b.name());
    case TyKind::Bound:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case TyKind::Forall:
      return compare(a.body(), b.body());
    default:
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
  }
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.empty() || b.empty() || a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

namespace {
// Generic traversal: f(type, depth) may return a replacement for leaves.
template <class Leaf>
Type map_type(const Type& t, std::uint32_t depth, const Leaf& leaf) {
  switch (t.kind()) {
    case TyKind::Var:
    case TyKind::Bound:
      return leaf(t, depth);
    case TyKind::Forall:
      return Type::forall_raw(t.name(), map_type(t.body(), depth + 1, leaf));
    case TyKind::Pos:
      return Type::pos(map_type(t.left(), depth, leaf), map_type(t.right(), depth, leaf));
    case TyKind::Neg:
      return Type::neg(map_type(t.left(), depth, leaf), map_type(t.right(), depth, leaf));
    case TyKind::Arrow:
      return Type::arrow(map_type(t.left(), depth, leaf), map_type(t.right(), depth, leaf));
  }
  return t;
}
}  // namespace

Type shift(const Type& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  return map_type(t, cutoff, [delta](const Type& x, std::uint32_t d) {
    if (x.kind() == TyKind::Bound && x.index() >= d)
      return Type::bound(static_cast<std::uint32_t>(static_cast<int>(x.index()) + delta));
    return x;
  });
}

namespace {
Type subst_bound(const Type& t, std::uint32_t target, const Type& s) {
  if (t.loose() <= target) return t;
  return map_type(t, target, [&](const Type& x, std::uint32_t d) {
    if (x.kind() != TyKind::Bound || x.index() < d) return x;
    if (x.index() == d) return shift(s, static_cast<int>(d));
    return Type::bound(x.index() - 1);
  });
}
}  // namespace

Type instantiate(const Type& body, const Type& s) { return subst_bound(body, 0, s); }

Type abstract(const Type& t, const std::string& a, std::uint32_t depth) {
  return map_type(t, depth, [&](const Type& x, std::uint32_t d) {
    if (x.kind() == TyKind::Var && x.name() == a) return Type::bound(d);
    if (x.kind() == TyKind::Bound && x.index() >= d) return Type::bound(x.index() + 1);
    return x;
  });
}

namespace {
void collect_ftv(const Type& t, std::set<std::string>& out) {
  if (t.kind() == TyKind::Var) out.insert(t.name());
  if (t.kind() == TyKind::Var || t.kind() == TyKind::Bound) return;
  collect_ftv(t.left(), out);
  if (!t.right().empty()) collect_ftv(t.right(), out);
}
}  // namespace

std::set<std::string> ftv(const Type& t) {
  std::set<std::string> out;
  collect_ftv(t, out);
  return out;
}

Type unfold(const Type& t) {
  if (t.kind() == TyKind::Pos)
    return Type::arrow(Type::neg(t.left(), t.right()), t.left());
  if (t.kind() == TyKind::Neg)
    return Type::arrow(Type::pos(t.left(), t.right()), t.right());
  return t;
}

namespace {
// The reachable pairs are finite: unfolding only produces subterms and their Pos/Neg twins.
bool equiv_in(const Type& a, const Type& b, std::set<std::pair<Type, Type>>& assumed) {
  if (a == b) return true;
  if (!assumed.insert({a, b}).second) return true;
  bool ra = a.kind() == TyKind::Pos || a.kind() == TyKind::Neg;
  bool rb = b.kind() == TyKind::Pos || b.kind() == TyKind::Neg;
  if (ra || rb) return equiv_in(ra ? unfold(a) : a, rb ? unfold(b) : b, assumed);
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TyKind::Arrow:
      return equiv_in(a.left(), b.left(), assumed) && equiv_in(a.right(), b.right(), assumed);
    case TyKind::Forall:
      return equiv_in(a.body(), b.body(), assumed);
    default:
      return false;  // distinct variables
  }
}
}  // namespace

bool equiv(const Type& a, const Type& b) {
  std::set<std::pair<Type, Type>> assumed;
  return equiv_in(a, b, assumed);
}

Type zero() { return Type::forall_raw("a", Type::bound(0)); }
Type one() { return Type::forall_raw("a", Type::arrow(Type::bound(0), Type::bound(0))); }
Type times(const Type& a, const Type& b) {
  Type v = Type::bound(0);
  return Type::forall_raw(
      "a", Type::arrow(Type::arrow(shift(a, 1), Type::arrow(shift(b, 1), v)), v));
}
Type plus(const Type& a, const Type& b) {
  Type v = Type::bound(0);
  return Type::forall_raw("a", Type::arrow(Type::arrow(shift(a, 1), v),
                                           Type::arrow(Type::arrow(shift(b, 1), v), v)));
}

// ---------------------------------------------------------------- terms

Term Term::make(TmKind k, std::string name, std::uint32_t index, Type ty,
                std::vector<Term> kids) {
  std::size_t size = 1;
  std::size_t h = mix(static_cast<std::size_t>(k) * 257 + 3, 0);
  std::uint32_t loose = 0, tloose = 0;
  bool free_vars = k == TmKind::Var, free_tvars = false;
  if (k == TmKind::Var) h = mix(h, std::hash<std::string>{}(name));
  if (k == TmKind::Bound) {
    h = mix(h, index);
    loose = index + 1;
  }
  if (!ty.empty()) {
    h = mix(h, ty.hash());
    tloose = ty.loose();
    free_tvars = !ftv(ty).empty();
  }
  std::uint32_t b = k == TmKind::Lam ? 1 : 0, tb = k == TmKind::TLam ? 1 : 0;
  for (const Term& c : kids) {
    size += c.size();
    h = mix(h, c.hash());
    loose = std::max(loose, under(c.loose(), b));
    tloose = std::max(tloose, under(c.loose_type(), tb));
    free_vars = free_vars || c.node_->free_vars;
    free_tvars = free_tvars || c.node_->free_tvars;
  }
  return Term(std::make_shared<const Node>(Node{k, std::move(name), index, std::move(ty),
                                                std::move(kids), size, h, loose, tloose,
                                                free_vars, free_tvars}));
}

namespace {
std::string hint_of(const std::string& x) {
  return !x.empty() && x[0] == '%' ? x.substr(1) : x;
}
}  // namespace

Term Term::var(std::string name) { return make(TmKind::Var, std::move(name), 0, {}, {}); }
Term Term::bound(std::uint32_t i) { return make(TmKind::Bound, {}, i, {}, {}); }
Term Term::lam_raw(std::string hint, Type ty, Term body) {
  return make(TmKind::Lam, std::move(hint), 0, std::move(ty), {std::move(body)});
}
Term Term::lam(const std::string& x, Type ty, const Term& body) {
  return lam_raw(hint_of(x), std::move(ty), f::abstract(body, x));
}
Term Term::app(Term t, Term s) { return make(TmKind::App, {}, 0, {}, {std::move(t), std::move(s)}); }
Term Term::tlam_raw(std::string hint, Term body) {
  return make(TmKind::TLam, std::move(hint), 0, {}, {std::move(body)});
}
Term Term::tlam(const std::string& a, const Term& body) {
  return tlam_raw(hint_of(a), abstract_type(body, a));
}
Term Term::tapp(Term t, Type ty) { return make(TmKind::TApp, {}, 0, std::move(ty), {std::move(t)}); }

bool Term::closed() const { return !node_->free_vars && node_->loose == 0 && node_->tloose == 0; }

Term Term::with_children(std::vector<Term> kids) const {
  return make(kind(), name(), index(), type(), std::move(kids));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.empty() || b.empty() || a.hash() != b.hash()) return false;
  if (a.kind() != b.kind() || a.index() != b.index() || a.arity() != b.arity()) return false;
  if (a.kind() == TmKind::Var && a.name() != b.name()) return false;
  if (!(a.type() == b.type())) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

namespace {
// Walk tracking the number of term binders (d) and type binders (td) passed.
struct Mapper {
  std::function<Term(const Term&, std::uint32_t, std::uint32_t)> leaf;  // Var/Bound
  std::function<Type(const Type&, std::uint32_t)> type;                 // annotations
  std::function<bool(const Term&, std::uint32_t, std::uint32_t)> skip;  // unchanged subtree

  Term run(const Term& t, std::uint32_t d, std::uint32_t td) const {
    if (skip && skip(t, d, td)) return t;
    switch (t.kind()) {
      case TmKind::Var:
      case TmKind::Bound:
        return leaf ? leaf(t, d, td) : t;
      case TmKind::Lam:
        return Term::lam_raw(t.name(), type ? type(t.type(), td) : t.type(),
                             run(t.child(0), d + 1, td));
      case TmKind::App:
        return Term::app(run(t.child(0), d, td), run(t.child(1), d, td));
      case TmKind::TLam:
        return Term::tlam_raw(t.name(), run(t.child(0), d, td + 1));
      case TmKind::TApp:
        return Term::tapp(run(t.child(0), d, td), type ? type(t.type(), td) : t.type());
    }
    return t;
  }
};
}  // namespace

Term shift_terms(const Term& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  Mapper m;
  m.leaf = [delta](const Term& x, std::uint32_t d, std::uint32_t) {
    if (x.kind() == TmKind::Bound && x.index() >= d)
      return Term::bound(static_cast<std::uint32_t>(static_cast<int>(x.index()) + delta));
    return x;
  };
  m.skip = [](const Term& x, std::uint32_t d, std::uint32_t) { return x.loose() <= d; };
  return m.run(t, cutoff, 0);
}

Term shift_types(const Term& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose_type() <= cutoff) return t;
  Mapper m;
  m.type = [delta](const Type& ty, std::uint32_t td) { return shift(ty, delta, td); };
  m.skip = [](const Term& x, std::uint32_t, std::uint32_t td) { return x.loose_type() <= td; };
  return m.run(t, 0, cutoff);
}

Term instantiate(const Term& body, const Term& s) {
  Mapper m;
  m.leaf = [&](const Term& x, std::uint32_t d, std::uint32_t td) {
    if (x.kind() != TmKind::Bound || x.index() < d) return x;
    if (x.index() == d) return shift_types(shift_terms(s, static_cast<int>(d)), static_cast<int>(td));
    return Term::bound(x.index() - 1);
  };
  m.skip = [](const Term& x, std::uint32_t d, std::uint32_t) { return x.loose() <= d; };
  return m.run(body, 0, 0);
}

Term instantiate_type(const Term& body, const Type& a) {
  Mapper m;
  m.type = [&](const Type& ty, std::uint32_t td) { return subst_bound(ty, td, a); };
  m.skip = [](const Term& x, std::uint32_t, std::uint32_t td) { return x.loose_type() <= td; };
  return m.run(body, 0, 0);
}

Term abstract(const Term& t, const std::string& x) {
  Mapper m;
  m.leaf = [&](const Term& v, std::uint32_t d, std::uint32_t) {
    if (v.kind() == TmKind::Var && v.name() == x) return Term::bound(d);
    if (v.kind() == TmKind::Bound && v.index() >= d) return Term::bound(v.index() + 1);
    return v;
  };
  return m.run(t, 0, 0);
}

Term abstract_type(const Term& t, const std::string& a) {
  Mapper m;
  m.type = [&](const Type& ty, std::uint32_t td) { return f::abstract(ty, a, td); };
  // Every loose type index moves up, so only subtrees without them are skipped.
  m.skip = [](const Term& x, std::uint32_t, std::uint32_t) {
    return x.loose_type() == 0 && !x.has_free_type_vars();
  };
  return m.run(t, 0, 0);
}

Term substitute(const Term& t, const std::string& x, const Term& s) {
  Mapper m;
  m.leaf = [&](const Term& v, std::uint32_t d, std::uint32_t td) {
    if (v.kind() == TmKind::Var && v.name() == x)
      return shift_types(shift_terms(s, static_cast<int>(d)), static_cast<int>(td));
    return v;
  };
  m.skip = [](const Term& v, std::uint32_t, std::uint32_t) { return !v.has_free_vars(); };
  return m.run(t, 0, 0);
}

namespace {
void collect_fv(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TmKind::Var) out.insert(t.name());
  for (std::size_t i = 0; i < t.arity(); ++i) collect_fv(t.child(i), out);
}
}  // namespace

std::set<std::string> fv(const Term& t) {
  std::set<std::string> out;
  collect_fv(t, out);
  return out;
}

// ---------------------------------------------------------------- encodings

Term triv() { return Term::tlam_raw("a", Term::lam_raw("x", Type::bound(0), Term::bound(0))); }

Term abort(const Type& a, const Term& t) { return Term::tapp(t, a); }

Term pair(const Type& a, const Type& b, const Term& t, const Term& s) {
  Type v = Type::var("%a");
  Term f = Term::var("%f");
  return Term::tlam("%a", Term::lam("%f", Type::arrow(a, Type::arrow(b, v)),
                                    Term::app(Term::app(f, t), s)));
}

Term proj(int i, const Type& a1, const Type& a2, const Term& t) {
  Term sel = Term::lam("%x1", a1, Term::lam("%x2", a2, Term::var(i == 1 ? "%x1" : "%x2")));
  return Term::app(Term::tapp(t, i == 1 ? a1 : a2), sel);
}

Term inj(int i, const Type& a1, const Type& a2, const Term& t) {
  Type v = Type::var("%a");
  Term body = Term::app(Term::var(i == 1 ? "%f1" : "%f2"), t);
  return Term::tlam("%a", Term::lam("%f1", Type::arrow(a1, v),
                                    Term::lam("%f2", Type::arrow(a2, v), body)));
}

Term case_of(const Term& t, const Type& a1, const Type& a2, const Type& result,
             const std::string& x, const Term& s1, const std::string& y, const Term& s2) {
  return Term::app(Term::app(Term::tapp(t, result), Term::lam(x, a1, s1)), Term::lam(y, a2, s2));
}

// ---------------------------------------------------------------- typing

namespace {
class Checker {
 public:
  explicit Checker(Context ctx) : ctx_(std::move(ctx)) {}

  Type infer(const Term& t) {
    switch (t.kind()) {
      case TmKind::Var: {
        auto it = ctx_.find(t.name());
        if (it == ctx_.end()) throw TypeError(ErrorKind::UnboundVariable, t.name());
        return it->second;
      }
      case TmKind::Bound:
        throw TypeError(ErrorKind::UnboundVariable, "dangling index");
      case TmKind::Lam: {
        std::string x = "%v" + std::to_string(counter_++);
        ctx_[x] = t.type();
        Type body = infer(f::instantiate(t.child(0), Term::var(x)));
        ctx_.erase(x);
        return Type::arrow(t.type(), body);
      }
      case TmKind::App: {
        Type ft = infer(t.child(0));
        while (ft.kind() == TyKind::Pos || ft.kind() == TyKind::Neg) ft = unfold(ft);
        if (ft.kind() != TyKind::Arrow)
          throw TypeError(ErrorKind::NotAnArrow, to_string(ft) + " is not a function type");
        Type at = infer(t.child(1));
        if (!equiv(ft.left(), at))
          throw TypeError(ErrorKind::DomainMismatch,
                          "expected " + to_string(ft.left()) + ", got " + to_string(at));
        return ft.right();
      }
      case TmKind::TLam: {
        std::string a = "%t" + std::to_string(counter_++);
        Type body = infer(instantiate_type(t.child(0), Type::var(a)));
        return Type::forall(a, body);
      }
      case TmKind::TApp: {
        Type ft = infer(t.child(0));
        if (ft.kind() != TyKind::Forall)
          throw TypeError(ErrorKind::NotAForall, to_string(ft) + " is not polymorphic");
        return f::instantiate(ft.body(), t.type());
      }
    }
    throw TypeError(ErrorKind::UnboundVariable, "unreachable");
  }

 private:
  Context ctx_;
  std::size_t counter_ = 0;
};
}  // namespace

Type infer(const Context& ctx, const Term& t) { return Checker(ctx).infer(t); }

// ---------------------------------------------------------------- reduction

bool is_redex(const Term& t) {
  if (t.kind() == TmKind::App) return t.child(0).kind() == TmKind::Lam;
  if (t.kind() == TmKind::TApp) return t.child(0).kind() == TmKind::TLam;
  return false;
}

Term contract(const Term& t) {
  if (t.kind() == TmKind::App) return f::instantiate(t.child(0).child(0), t.child(1));
  return instantiate_type(t.child(0).child(0), t.type());
}

namespace {
void collect_redexes(const Term& t, Position& pos, std::vector<Position>& out) {
  if (is_redex(t)) out.push_back(pos);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    collect_redexes(t.child(i), pos, out);
    pos.pop_back();
  }
}

std::optional<Term> step_lo(const Term& t) {
  if (is_redex(t)) return contract(t);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (auto r = step_lo(t.child(i))) {
      std::vector<Term> kids;
      for (std::size_t j = 0; j < t.arity(); ++j) kids.push_back(j == i ? *r : t.child(j));
      return t.with_children(std::move(kids));
    }
  }
  return std::nullopt;
}
}  // namespace

std::vector<Position> redexes(const Term& t) {
  std::vector<Position> out;
  Position pos;
  collect_redexes(t, pos, out);
  return out;
}

const Term& subterm(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p) cur = &cur->child(i);
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& r, std::size_t at) {
  if (at == p.size()) return r;
  std::vector<Term> kids;
  for (std::size_t j = 0; j < t.arity(); ++j)
    kids.push_back(j == p[at] ? replace_at(t.child(j), p, r, at + 1) : t.child(j));
  return t.with_children(std::move(kids));
}

std::optional<Term> step(const Term& t) { return step_lo(t); }

Term normalize(const Term& t, std::size_t fuel, std::size_t* steps) {
  Term cur = t;
  std::size_t n = 0;
  while (auto next = step_lo(cur)) {
    if (n == fuel) throw FuelExhausted();
    cur = *next;
    ++n;
  }
  if (steps) *steps = n;
  return cur;
}

// ---------------------------------------------------------------- polarity

namespace {
bool mentions0(const Type& x, std::uint32_t d) {
  switch (x.kind()) {
    case TyKind::Bound:
      return x.index() == d;
    case TyKind::Var:
      return false;
    case TyKind::Forall:
      return mentions0(x.body(), d + 1);
    default:
      return mentions0(x.left(), d) || mentions0(x.right(), d);
  }
}

struct Pol {
  std::set<Type> pos, neg, wpos, wneg;
};

void join(std::set<Type>& into, const std::set<Type>& from) { into.insert(from.begin(), from.end()); }

// Leaving a quantifier drops everything mentioning its index and lowers the rest.
std::set<Type> unbind(const std::set<Type>& s) {
  std::set<Type> out;
  for (const auto& t : s) {
    if (t.loose() == 0) {
      out.insert(t);
      continue;
    }
    if (!mentions0(t, 0)) out.insert(shift(t, -1));
  }
  return out;
}

Pol pol(const Type& t) {
  Pol p;
  switch (t.kind()) {
    case TyKind::Var:
    case TyKind::Bound:
      p.pos = p.wpos = {t};
      return p;
    case TyKind::Pos:
    case TyKind::Neg: {
      p.pos = {t};
      Pol a = pol(t.left()), b = pol(t.right());
      bool is_pos = t.kind() == TyKind::Pos;
      p.wpos = {t};
      join(p.wpos, is_pos ? a.wpos : a.wneg);
      join(p.wpos, is_pos ? b.wneg : b.wpos);
      join(p.wneg, is_pos ? a.wneg : a.wpos);
      join(p.wneg, is_pos ? b.wpos : b.wneg);
      return p;
    }
    case TyKind::Arrow: {
      Pol a = pol(t.left()), b = pol(t.right());
      p.pos = a.neg;
      join(p.pos, b.pos);
      p.neg = a.pos;
      join(p.neg, b.neg);
      p.wpos = a.wneg;
      join(p.wpos, b.wpos);
      p.wneg = a.wpos;
      join(p.wneg, b.wneg);
      return p;
    }
    case TyKind::Forall: {
      Pol b = pol(t.body());
      p.pos = unbind(b.pos);
      p.neg = unbind(b.neg);
      p.wpos = unbind(b.wpos);
      p.wneg = unbind(b.wneg);
      return p;
    }
  }
  return p;
}
}  // namespace

std::size_t complexity(const Type& t) {
  switch (t.kind()) {
    case TyKind::Var:
    case TyKind::Bound:
      return 1;
    case TyKind::Forall:
      return 1 + complexity(t.body());
    default:
      return 1 + complexity(t.left()) + complexity(t.right());
  }
}

Polarity polarity(const Type& t) {
  Pol p = pol(t);
  return Polarity{std::move(p.pos), std::move(p.neg), std::move(p.wpos), std::move(p.wneg),
                  complexity(t)};
}

// ---------------------------------------------------------------- printing

namespace {
bool is_b0(const Type& t) { return t.kind() == TyKind::Bound && t.index() == 0; }

// Recognizes 0, 1, products and sums; returns 0 if none.
char sugar(const Type& t, Type& l, Type& r) {
  if (t.kind() != TyKind::Forall) return 0;
  const Type& b = t.body();
  if (is_b0(b)) return '0';
  if (b.kind() != TyKind::Arrow) return 0;
  if (is_b0(b.left()) && is_b0(b.right())) return '1';
  const Type& f = b.left();
  const Type& rest = b.right();
  if (is_b0(rest) && f.kind() == TyKind::Arrow && f.right().kind() == TyKind::Arrow &&
      is_b0(f.right().right()) && !mentions0(f.left(), 0) && !mentions0(f.right().left(), 0)) {
    l = shift(f.left(), -1);
    r = shift(f.right().left(), -1);
    return '*';
  }
  if (f.kind() == TyKind::Arrow && is_b0(f.right()) && !mentions0(f.left(), 0) &&
      rest.kind() == TyKind::Arrow && is_b0(rest.right()) &&
      rest.left().kind() == TyKind::Arrow && is_b0(rest.left().right()) &&
      !mentions0(rest.left().left(), 0)) {
    l = shift(f.left(), -1);
    r = shift(rest.left().left(), -1);
    return '+';
  }
  return 0;
}

class Printer {
 public:
  explicit Printer(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  // prec: 0 anywhere, 1 left of an arrow.
  void type(const Type& t, int prec) {
    Type l, r;
    switch (t.kind()) {
      case TyKind::Var:
        out_ += t.name();
        return;
      case TyKind::Bound:
        out_ += t.index() < tnames_.size() ? tnames_[tnames_.size() - 1 - t.index()]
                                           : "?" + std::to_string(t.index());
        return;
      case TyKind::Pos:
      case TyKind::Neg:
        out_ += t.kind() == TyKind::Pos ? "Pos<" : "Neg<";
        type(t.left(), 0);
        out_ += ", ";
        type(t.right(), 0);
        out_ += ">";
        return;
      case TyKind::Arrow:
        if (prec > 0) out_ += "(";
        type(t.left(), 1);
        out_ += " -> ";
        type(t.right(), 0);
        if (prec > 0) out_ += ")";
        return;
      case TyKind::Forall: {
        if (char c = sugar(t, l, r)) {
          if (c == '0' || c == '1') {
            out_ += c;
            return;
          }
          out_ += "(";
          type(l, 1);
          out_ += c == '*' ? " * " : " + ";
          type(r, 1);
          out_ += ")";
          return;
        }
        if (prec > 0) out_ += "(";
        std::string a = bind(t.name().empty() ? "a" : t.name());
        out_ += "forall " + a + ". ";
        tnames_.push_back(a);
        type(t.body(), 0);
        tnames_.pop_back();
        release(a);
        if (prec > 0) out_ += ")";
        return;
      }
    }
  }

  // prec: 0 anywhere, 1 function position, 2 argument position.
  void term(const Term& t, int prec) {
    switch (t.kind()) {
      case TmKind::Var:
        out_ += t.name();
        return;
      case TmKind::Bound:
        out_ += t.index() < names_.size() ? names_[names_.size() - 1 - t.index()]
                                          : "?" + std::to_string(t.index());
        return;
      case TmKind::Lam: {
        if (prec > 0) out_ += "(";
        std::string x = bind(t.name().empty() ? "x" : t.name());
        out_ += "fun (" + x + " : ";
        type(t.type(), 0);
        out_ += ") -> ";
        names_.push_back(x);
        term(t.child(0), 0);
        names_.pop_back();
        release(x);
        if (prec > 0) out_ += ")";
        return;
      }
      case TmKind::TLam: {
        if (prec > 0) out_ += "(";
        std::string a = bind(t.name().empty() ? "a" : t.name());
        out_ += "tfun " + a + " -> ";
        tnames_.push_back(a);
        term(t.child(0), 0);
        tnames_.pop_back();
        release(a);
        if (prec > 0) out_ += ")";
        return;
      }
      case TmKind::App:
        if (prec > 1) out_ += "(";
        term(t.child(0), 1);
        out_ += " ";
        term(t.child(1), 2);
        if (prec > 1) out_ += ")";
        return;
      case TmKind::TApp:
        if (prec > 1) out_ += "(";
        term(t.child(0), 1);
        out_ += " [";
        type(t.type(), 0);
        out_ += "]";
        if (prec > 1) out_ += ")";
        return;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  std::string bind(const std::string& hint) {
    std::string base = hint;
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
    if (base.empty()) base = "v";
    std::string name = hint;
    for (int i = 1; avoid_.count(name) || keyword(name); ++i) name = base + std::to_string(i);
    avoid_.insert(name);
    return name;
  }
  void release(const std::string& n) { avoid_.erase(n); }
  static bool keyword(const std::string& s) {
    return s == "fun" || s == "tfun" || s == "forall" || s == "Pos" || s == "Neg";
  }

  std::set<std::string> avoid_;
  std::vector<std::string> names_, tnames_;
  std::string out_;
};

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TmKind::Var) out.insert(t.name());
  if (!t.type().empty()) collect_ftv(t.type(), out);
  for (std::size_t i = 0; i < t.arity(); ++i) collect_names(t.child(i), out);
}
}  // namespace

std::string to_string(const Type& t) {
  Printer p(ftv(t));
  p.type(t, 0);
  return p.take();
}

std::string to_string(const Term& t) {
  std::set<std::string> avoid;
  collect_names(t, avoid);
  Printer p(std::move(avoid));
  p.term(t, 0);
  return p.take();
}

// ---------------------------------------------------------------- parsing

namespace {
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Type type() {
    Type l = sum();
    if (accept("->")) return Type::arrow(l, type());
    return l;
  }

  Term term() {
    ws();
    if (keyword("fun")) {
      expect("(");
      std::string x = ident();
      expect(":");
      Type ty = type();
      expect(")");
      expect("->");
      return Term::lam(x, ty, term());
    }
    if (keyword("tfun")) {
      std::string a = ident();
      expect("->");
      return Term::tlam(a, term());
    }
    Term head = atom_term();
    for (;;) {
      ws();
      if (accept("[")) {
        Type ty = type();
        expect("]");
        head = Term::tapp(head, ty);
      } else if (starts_atom()) {
        head = Term::app(head, starts_binder() ? term() : atom_term());
      } else {
        return head;
      }
    }
  }

  void finish() {
    ws();
    if (i_ < s_.size()) fail("unexpected trailing input");
  }

 private:
  Type sum() {
    Type l = product();
    while (accept("+")) l = plus(l, product());
    return l;
  }
  Type product() {
    Type l = atom_type();
    while (accept("*")) l = times(l, atom_type());
    return l;
  }
  Type atom_type() {
    ws();
    if (accept("(")) {
      Type t = type();
      expect(")");
      return t;
    }
    if (accept("0")) return zero();
    if (accept("1")) return one();
    if (keyword("forall")) {
      std::string a = ident();
      expect(".");
      return Type::forall(a, type());
    }
    if (keyword("Pos") || keyword("Neg")) {
      bool p = s_[i_ - 3] == 'P';
      expect("<");
      Type a = type();
      expect(",");
      Type b = type();
      expect(">");
      return p ? Type::pos(a, b) : Type::neg(a, b);
    }
    return Type::var(ident());
  }

  Term atom_term() {
    ws();
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    return Term::var(ident());
  }

  bool starts_atom() {
    ws();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool starts_binder() {
    std::size_t save = i_;
    bool b = keyword("fun") || keyword("tfun");
    i_ = save;
    return b;
  }

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(std::string_view t) {
    ws();
    if (s_.substr(i_, t.size()) != t) return false;
    i_ += t.size();
    return true;
  }
  void expect(std::string_view t) {
    if (!accept(t)) fail("expected '" + std::string(t) + "'");
  }
  bool keyword(std::string_view k) {
    ws();
    if (s_.substr(i_, k.size()) != k) return false;
    std::size_t e = i_ + k.size();
    if (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_'))
      return false;
    i_ = e;
    return true;
  }
  std::string ident() {
    ws();
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    if (b == i_ || std::isdigit(static_cast<unsigned char>(s_[b]))) fail("expected identifier");
    std::string id(s_.substr(b, i_ - b));
    if (id == "fun" || id == "tfun" || id == "forall" || id == "Pos" || id == "Neg")
      fail("'" + id + "' is a reserved word");
    return id;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};
}  // namespace

Type parse_type(std::string_view text) {
  Parser p(text);
  Type t = p.type();
  p.finish();
  return t;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

}  // namespace prk::f
