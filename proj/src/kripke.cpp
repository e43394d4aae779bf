#include "prk/kripke.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "prk/text.hpp"

namespace prk {

KripkeModel::KripkeModel(std::vector<std::string> alphabet, std::vector<std::string> worlds,
                         std::vector<std::pair<std::string, std::string>> leq,
                         std::map<std::string, std::set<std::string>> vplus,
                         std::map<std::string, std::set<std::string>> vminus)
    : alphabet_(std::move(alphabet)), worlds_(std::move(worlds)), gens_(std::move(leq)) {
  if (alphabet_.size() > 32) throw KripkeError(KripkeErrorKind::BadModel, "alphabet too large");
  std::set<std::string> seen;
  for (const auto& w : worlds_)
    if (!seen.insert(w).second)
      throw KripkeError(KripkeErrorKind::BadModel, "duplicate world '" + w + "'");
  std::set<std::string> vars;
  for (const auto& a : alphabet_)
    if (!vars.insert(a).second)
      throw KripkeError(KripkeErrorKind::BadModel, "duplicate variable '" + a + "'");
  std::size_t n = worlds_.size();
  le_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) le_[i * n + i] = 1;
  for (const auto& [a, b] : gens_) le_[world(a) * n + world(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (le_[k * n + j]) le_[i * n + j] = 1;
  auto masks = [&](const std::map<std::string, std::set<std::string>>& v) {
    std::vector<std::uint32_t> out(n, 0);
    for (const auto& [w, xs] : v) {
      std::size_t i = world(w);
      for (const auto& x : xs) {
        auto k = variable(x);
        if (!k) throw KripkeError(KripkeErrorKind::UnknownVariable, "'" + x + "' is not in the alphabet");
        out[i] |= 1u << *k;
      }
    }
    return out;
  };
  vplus_ = masks(vplus);
  vminus_ = masks(vminus);
}

std::size_t KripkeModel::world(const std::string& name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) throw KripkeError(KripkeErrorKind::UnknownWorld, "unknown world '" + name + "'");
  return static_cast<std::size_t>(it - worlds_.begin());
}

std::optional<std::size_t> KripkeModel::variable(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::set<std::string> KripkeModel::vplus(std::size_t w) const {
  std::set<std::string> out;
  for (std::size_t k = 0; k < alphabet_.size(); ++k)
    if (plus(w, k)) out.insert(alphabet_[k]);
  return out;
}

std::set<std::string> KripkeModel::vminus(std::size_t w) const {
  std::set<std::string> out;
  for (std::size_t k = 0; k < alphabet_.size(); ++k)
    if (minus(w, k)) out.insert(alphabet_[k]);
  return out;
}

ModelReport validate_model(const KripkeModel& m) {
  ModelReport r;
  const auto& W = m.worlds();
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.leq(i, j) && m.leq(j, i))
        r.violations.push_back({ViolationKind::NotAntisymmetric, W[i], W[j], {},
                                W[i] + " and " + W[j] + " are below each other"});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !m.leq(i, j)) continue;
      for (std::size_t k = 0; k < m.alphabet().size(); ++k) {
        const std::string& x = m.alphabet()[k];
        if (m.plus(i, k) && !m.plus(j, k))
          r.violations.push_back({ViolationKind::Monotonicity, W[i], W[j], x,
                                  x + " is in vplus(" + W[i] + ") but not vplus(" + W[j] + ")"});
        if (m.minus(i, k) && !m.minus(j, k))
          r.violations.push_back({ViolationKind::Monotonicity, W[i], W[j], x,
                                  x + " is in vminus(" + W[i] + ") but not vminus(" + W[j] + ")"});
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m.alphabet().size(); ++k) {
      bool ok = false;
      for (std::size_t j = 0; j < n && !ok; ++j)
        ok = m.leq(i, j) && m.plus(j, k) != m.minus(j, k);
      if (!ok) {
        const std::string& x = m.alphabet()[k];
        r.violations.push_back({ViolationKind::Stabilization, W[i], {}, x,
                                "no world above " + W[i] + " decides " + x});
      }
    }
  return r;
}

const std::vector<char>& Forcing::worlds_forcing(const MProp& p) {
  if (auto it = cache_.find(p); it != cache_.end()) return it->second;
  using PK = PureProp::Kind;
  std::size_t n = m_.size();
  std::vector<char> out(n, 0);
  const PureProp& a = p.base;
  Sign s = p.sign();
  auto at = [](const PureProp& b, Strength st, Sign sg) { return MProp{b, {st, sg}}; };
  if (p.classical()) {
    // w forces A(+)c iff no w' >= w forces the strong opposite
    std::vector<char> opp = worlds_forcing(at(a, Strength::Strong, flip(s)));
    for (std::size_t w = 0; w < n; ++w) {
      bool ok = true;
      for (std::size_t v = 0; v < n && ok; ++v)
        if (m_.leq(w, v) && opp[v]) ok = false;
      out[w] = ok;
    }
  } else {
    switch (a.kind()) {
      case PK::Var: {
        auto k = m_.variable(a.name());
        if (!k) throw KripkeError(KripkeErrorKind::UnknownVariable, "'" + a.name() + "' is not in the alphabet");
        for (std::size_t w = 0; w < n; ++w) out[w] = s == Sign::Plus ? m_.plus(w, *k) : m_.minus(w, *k);
        break;
      }
      case PK::Neg:
        out = worlds_forcing(at(a.inner(), Strength::Classical, flip(s)));
        break;
      default: {
        std::vector<char> l = worlds_forcing(at(a.left(), Strength::Classical, s));
        const std::vector<char>& r = worlds_forcing(at(a.right(), Strength::Classical, s));
        bool both = a.kind() == (s == Sign::Plus ? PK::And : PK::Or);
        for (std::size_t w = 0; w < n; ++w) out[w] = both ? (l[w] && r[w]) : (l[w] || r[w]);
      }
    }
  }
  return cache_.emplace(p, std::move(out)).first->second;
}

bool Forcing::forces(std::size_t world, const MProp& p) { return worlds_forcing(p)[world]; }

bool Forcing::forces(const std::string& world, const MProp& p) {
  return forces(m_.world(world), p);
}

bool forces(const KripkeModel& m, const std::string& world, const MProp& p) {
  return Forcing(m).forces(world, p);
}

bool entails_in_model(const KripkeModel& m, const std::vector<MProp>& gamma, const MProp& p) {
  Forcing f(m);
  for (std::size_t w = 0; w < m.size(); ++w) {
    bool all = std::all_of(gamma.begin(), gamma.end(), [&](const MProp& q) { return f.forces(w, q); });
    if (all && !f.forces(w, p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

// Strict orders on {0..n-1} compatible with the index order, one per isomorphism class.
// Bit i*n+j set means i < j.
struct Poset {
  std::size_t n;
  std::uint32_t rel;
  std::vector<std::vector<std::size_t>> automorphisms;
};

std::uint32_t permute(std::uint32_t rel, std::size_t n, const std::vector<std::size_t>& p) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((rel >> (i * n + j)) & 1u) out |= 1u << (p[i] * n + p[j]);
  return out;
}

std::vector<Poset> posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::set<std::uint32_t> canon;
  std::vector<Poset> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::uint32_t rel = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1u) rel |= 1u << (pairs[k].first * n + pairs[k].second);
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        for (std::size_t k = 0; k < n && transitive; ++k)
          if (((rel >> (i * n + j)) & 1u) && ((rel >> (j * n + k)) & 1u) &&
              !((rel >> (i * n + k)) & 1u))
            transitive = false;
    if (!transitive) continue;
    std::uint32_t best = rel;
    for (const auto& q : perms) best = std::min(best, permute(rel, n, q));
    if (!canon.insert(best).second) continue;
    Poset ps{n, rel, {}};
    for (const auto& q : perms)
      if (permute(rel, n, q) == rel) ps.automorphisms.push_back(q);
    out.push_back(std::move(ps));
  }
  return out;
}

class ModelEnumerator {
 public:
  ModelEnumerator(const std::vector<std::string>& alphabet, const Poset& p,
                  const std::function<bool(const KripkeModel&)>& visit)
      : alphabet_(alphabet), p_(p), visit_(visit), k_(alphabet.size()),
        plus_(p.n), minus_(p.n) {}

  bool run() { return assign(0); }

 private:
  bool below(std::size_t i, std::size_t j) const { return (p_.rel >> (i * p_.n + j)) & 1u; }

  // Worlds are in a linear extension of the order, so predecessors come first.
  bool assign(std::size_t w) {
    if (w == p_.n) return emit();
    std::uint32_t lp = 0, lm = 0;
    for (std::size_t v = 0; v < w; ++v)
      if (below(v, w)) {
        lp |= plus_[v];
        lm |= minus_[v];
      }
    std::uint32_t full = k_ == 32 ? ~0u : (1u << k_) - 1;
    for (std::uint32_t vp = 0; vp <= full; ++vp) {
      if ((vp & lp) != lp) continue;
      for (std::uint32_t vm = 0; vm <= full; ++vm) {
        if ((vm & lm) != lm) continue;
        plus_[w] = vp;
        minus_[w] = vm;
        if (!assign(w + 1)) return false;
      }
    }
    return true;
  }

  bool emit() {
    std::size_t n = p_.n;
    // stabilization
    for (std::size_t w = 0; w < n; ++w) {
      std::uint32_t decided = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (v == w || below(w, v)) decided |= plus_[v] ^ minus_[v];
      if (decided != (k_ == 32 ? ~0u : (1u << k_) - 1)) return true;
    }
    // keep only the least valuation vector in its automorphism orbit
    std::vector<std::uint64_t> sig(n);
    for (std::size_t w = 0; w < n; ++w) sig[w] = (std::uint64_t{plus_[w]} << 32) | minus_[w];
    for (const auto& q : p_.automorphisms) {
      std::vector<std::uint64_t> img(n);
      for (std::size_t w = 0; w < n; ++w) img[q[w]] = sig[w];
      if (img < sig) return true;
    }
    std::vector<std::string> worlds;
    for (std::size_t w = 0; w < n; ++w) worlds.push_back("w" + std::to_string(w));
    std::vector<std::pair<std::string, std::string>> leq;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (below(i, j)) leq.emplace_back(worlds[i], worlds[j]);
    std::map<std::string, std::set<std::string>> vp, vm;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t k = 0; k < k_; ++k) {
        if ((plus_[w] >> k) & 1u) vp[worlds[w]].insert(alphabet_[k]);
        if ((minus_[w] >> k) & 1u) vm[worlds[w]].insert(alphabet_[k]);
      }
    return visit_(KripkeModel(alphabet_, worlds, leq, vp, vm));
  }

  const std::vector<std::string>& alphabet_;
  const Poset& p_;
  const std::function<bool(const KripkeModel&)>& visit_;
  std::size_t k_;
  std::vector<std::uint32_t> plus_, minus_;
};

}  // namespace

void enumerate_models(const std::vector<std::string>& alphabet, std::size_t max_worlds,
                      const std::function<bool(const KripkeModel&)>& visit) {
  if (max_worlds > 6) throw KripkeError(KripkeErrorKind::BadModel, "at most 6 worlds");
  if (alphabet.size() > 8) throw KripkeError(KripkeErrorKind::BadModel, "at most 8 variables");
  for (std::size_t n = 1; n <= max_worlds; ++n)
    for (const auto& p : posets(n))
      if (!ModelEnumerator(alphabet, p, visit).run()) return;
}

std::optional<CounterModel> countermodel_search(const std::vector<MProp>& gamma, const MProp& p,
                                                std::size_t max_worlds) {
  std::set<std::string> vars_set;
  for (const auto& q : gamma) collect_vars(q.base, vars_set);
  collect_vars(p.base, vars_set);
  std::vector<std::string> alphabet(vars_set.begin(), vars_set.end());
  std::optional<CounterModel> found;
  enumerate_models(alphabet, max_worlds, [&](const KripkeModel& m) {
    Forcing f(m);
    for (std::size_t w = 0; w < m.size(); ++w) {
      bool all = std::all_of(gamma.begin(), gamma.end(), [&](const MProp& q) { return f.forces(w, q); });
      if (all && !f.forces(w, p)) {
        found = CounterModel{m, m.worlds()[w]};
        return false;
      }
    }
    return true;
  });
  return found;
}

// ---------------------------------------------------------------- JSON

KripkeModel model_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    auto worlds = j.at("worlds").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> leq;
    if (j.contains("leq"))
      for (const auto& e : j.at("leq")) {
        if (!e.is_array() || e.size() != 2)
          throw KripkeError(KripkeErrorKind::BadModel, "leq entries are [world, world] pairs");
        leq.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    auto val = [&](const char* key) {
      std::map<std::string, std::set<std::string>> out;
      if (j.contains(key))
        for (const auto& [w, xs] : j.at(key).items())
          for (const auto& x : xs) out[w].insert(x.get<std::string>());
      return out;
    };
    for (const auto& a : alphabet)
      if (!is_identifier(a)) throw KripkeError(KripkeErrorKind::BadModel, "bad variable name '" + a + "'");
    return KripkeModel(alphabet, worlds, leq, val("vplus"), val("vminus"));
  } catch (const json::exception& e) {
    throw KripkeError(KripkeErrorKind::BadModel, std::string("model file: ") + e.what());
  }
}

std::string model_to_json(const KripkeModel& m) {
  nlohmann::ordered_json j;
  j["alphabet"] = m.alphabet();
  j["worlds"] = m.worlds();
  j["leq"] = nlohmann::json::array();
  for (const auto& [a, b] : m.generators()) j["leq"].push_back({a, b});
  j["vplus"] = nlohmann::json::object();
  j["vminus"] = nlohmann::json::object();
  for (std::size_t w = 0; w < m.size(); ++w) {
    auto p = m.vplus(w), n = m.vminus(w);
    if (!p.empty()) j["vplus"][m.worlds()[w]] = std::vector<std::string>(p.begin(), p.end());
    if (!n.empty()) j["vminus"][m.worlds()[w]] = std::vector<std::string>(n.begin(), n.end());
  }
  return j.dump(2);
}

}  // namespace prk
