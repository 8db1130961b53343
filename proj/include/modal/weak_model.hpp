#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "modal/canonical.hpp"
#include "modal/kripke.hpp"

namespace modal {

enum class WeakRelation { C, M, MM, D, S };
std::string relation_name(WeakRelation r);

// Consistent: every sigma-consistent member of C_{h+1,n} is a world.
// EntailTarget: only the consistent members entailing the target.
enum class WorldSet { Consistent, EntailTarget };

struct WeakModelOptions {
  WorldSet worlds = WorldSet::Consistent;
  // Build over C_{h+1,n} for these (h, n) instead of height/order of the target.
  std::optional<std::uint32_t> h;
  std::optional<std::uint32_t> n;
  std::uint64_t cap = kDefaultCanonicalCap;
};

class InconsistentTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedSigma : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WeakModel {
  Formula target;
  SigmaSpec sigma;
  WeakRelation relation = WeakRelation::C;
  WorldSet world_set = WorldSet::Consistent;
  std::uint32_t level = 1;  // worlds are members of C_{level,n}
  std::uint32_t n = 0;
  std::vector<std::uint32_t> ids;  // world index -> canonical id
  Frame frame;
  std::vector<Formula> closure;  // sub(target)
  std::unordered_map<Formula, std::vector<bool>> val;

  [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>(ids.size()); }
  [[nodiscard]] bool value(World w, const Formula& f) const { return val.at(f).at(w); }
  [[nodiscard]] std::vector<World> target_worlds() const;
  [[nodiscard]] AtomValuation atom_valuation() const;
  // The frame with the atom valuation, re-evaluated on the closure.
  [[nodiscard]] KripkeModel kripke() const;
  [[nodiscard]] Formula world_formula(World w) const;
};

WeakModel build_c_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt = {});
WeakModel build_m_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt = {});
WeakModel build_mm_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt = {});
WeakModel build_d_model(const Formula& phi, const WeakModelOptions& opt = {});
WeakModel build_s_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt = {});

// Relation chosen by the case split: L -> d; 4 absent -> c; 4 without B -> m; 4 and B -> mm.
WeakRelation dispatch_relation(const SigmaSpec& sigma);
WeakModel build_weak_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt = {});

struct ClauseFailure {
  World world;
  Formula formula;
  bool stored;
  bool recomputed;
};

struct WeakModelReport {
  bool clauses = true;      // stored valuation matches recomputation on the closure
  bool target = true;       // target worlds exist and force the target
  bool appropriate = true;  // frame is appropriate to sigma
  std::vector<ClauseFailure> failures;
  [[nodiscard]] bool ok() const { return clauses && target && appropriate; }
};

WeakModelReport verify_weak_model(const WeakModel& m, const Formula& phi, const SigmaSpec& sigma);

// Structural forms of the relations on C_{level,n}, for cross-checking the builders.
bool structural_m(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b);
bool structural_d(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b);
bool structural_s(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b);

}  // namespace modal
