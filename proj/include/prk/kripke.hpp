#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "prk/prop.hpp"

namespace prk {

enum class KripkeErrorKind { UnknownVariable, UnknownWorld, BadModel };

class KripkeError : public std::runtime_error {
 public:
  KripkeError(KripkeErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  KripkeErrorKind kind() const { return kind_; }

 private:
  KripkeErrorKind kind_;
};

// Finite model over a declared alphabet; the order is the reflexive-transitive
// closure of the given generators.
class KripkeModel {
 public:
  KripkeModel() = default;
  KripkeModel(std::vector<std::string> alphabet, std::vector<std::string> worlds,
              std::vector<std::pair<std::string, std::string>> leq,
              std::map<std::string, std::set<std::string>> vplus,
              std::map<std::string, std::set<std::string>> vminus);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::pair<std::string, std::string>>& generators() const { return gens_; }
  std::size_t size() const { return worlds_.size(); }
  std::size_t world(const std::string& name) const;  // throws UnknownWorld
  std::optional<std::size_t> variable(const std::string& name) const;
  bool leq(std::size_t a, std::size_t b) const { return le_[a * size() + b]; }
  bool plus(std::size_t w, std::size_t var) const { return (vplus_[w] >> var) & 1u; }
  bool minus(std::size_t w, std::size_t var) const { return (vminus_[w] >> var) & 1u; }
  std::set<std::string> vplus(std::size_t w) const;
  std::set<std::string> vminus(std::size_t w) const;

 private:
  friend class ModelBuilder;
  std::vector<std::string> alphabet_, worlds_;
  std::vector<std::pair<std::string, std::string>> gens_;
  std::vector<char> le_;
  std::vector<std::uint32_t> vplus_, vminus_;
};

enum class ViolationKind { NotAntisymmetric, Monotonicity, Stabilization };

struct Violation {
  ViolationKind kind;
  std::string world, other, variable;
  std::string message;
};

struct ModelReport {
  bool valid() const { return violations.empty(); }
  std::vector<Violation> violations;
};

ModelReport validate_model(const KripkeModel& m);

// Forcing with a per-model cache of the world sets forcing each proposition.
class Forcing {
 public:
  explicit Forcing(const KripkeModel& m) : m_(m) {}
  bool forces(const std::string& world, const MProp& p);
  bool forces(std::size_t world, const MProp& p);
  const std::vector<char>& worlds_forcing(const MProp& p);

 private:
  const KripkeModel& m_;
  std::unordered_map<MProp, std::vector<char>> cache_;
};

bool forces(const KripkeModel& m, const std::string& world, const MProp& p);
bool entails_in_model(const KripkeModel& m, const std::vector<MProp>& gamma, const MProp& p);

// Every valid model over the alphabet with 1..max_worlds worlds, one per isomorphism
// class, in a fixed order. Stops early when the callback returns false.
void enumerate_models(const std::vector<std::string>& alphabet, std::size_t max_worlds,
                      const std::function<bool(const KripkeModel&)>& visit);

struct CounterModel {
  KripkeModel model;
  std::string world;
};

std::optional<CounterModel> countermodel_search(const std::vector<MProp>& gamma, const MProp& p,
                                                std::size_t max_worlds);

// JSON with keys alphabet, worlds, leq (pairs), vplus, vminus (world -> variables).
KripkeModel model_from_json(const std::string& text);
std::string model_to_json(const KripkeModel& m);

}  // namespace prk
