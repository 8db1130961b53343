#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modal/formula.hpp"
#include "modal/sigma.hpp"

namespace modal {

using World = std::uint32_t;

class Frame {
 public:
  Frame() = default;
  explicit Frame(std::uint32_t n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}
  Frame(std::uint32_t n, const std::vector<std::pair<World, World>>& edges);

  [[nodiscard]] std::uint32_t size() const { return n_; }
  [[nodiscard]] bool rel(World a, World b) const { return adj_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  void set_rel(World a, World b, bool v = true) { adj_[static_cast<std::size_t>(a) * n_ + b] = v ? 1 : 0; }
  [[nodiscard]] std::vector<World> successors(World w) const;
  [[nodiscard]] std::vector<std::pair<World, World>> edges() const;

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

bool is_reflexive(const Frame& f);
bool is_irreflexive(const Frame& f);
bool is_symmetric(const Frame& f);
bool is_transitive(const Frame& f);
bool is_euclidean(const Frame& f);
bool is_serial(const Frame& f);
bool is_directed(const Frame& f);
// No infinite ascending chain; on a finite frame this is absence of any cycle.
bool is_cwf(const Frame& f);
bool satisfies_axiom_property(const Frame& f, Axiom a);
bool check_appropriate(const Frame& f, const SigmaSpec& sigma);

// Per-world truth values of each non-bottom atom.
using AtomValuation = std::map<Atom, std::vector<bool>>;

class KripkeModel {
 public:
  KripkeModel() = default;
  KripkeModel(Frame frame, AtomValuation atom_val, std::vector<Formula> closure,
              std::unordered_map<Formula, std::vector<bool>> table)
      : frame_(std::move(frame)), atom_val_(std::move(atom_val)), closure_(std::move(closure)), table_(std::move(table)) {}

  [[nodiscard]] const Frame& frame() const { return frame_; }
  [[nodiscard]] const AtomValuation& atom_val() const { return atom_val_; }
  [[nodiscard]] const std::vector<Formula>& closure() const { return closure_; }
  [[nodiscard]] bool in_closure(const Formula& f) const { return table_.count(f) != 0; }
  [[nodiscard]] bool value(World w, const Formula& f) const;

 private:
  Frame frame_;
  AtomValuation atom_val_;
  std::vector<Formula> closure_;
  std::unordered_map<Formula, std::vector<bool>> table_;
};

bool is_subformula_closed(const std::vector<Formula>& closure);

// Builds the table bottom-up; throws std::invalid_argument when the closure is
// not subformula-closed or an atom of the closure has no valuation.
KripkeModel extend_valuation(const Frame& frame, const AtomValuation& atom_val, const std::vector<Formula>& closure);

// Convenience: closure is sub(formulas).
KripkeModel make_model(const Frame& frame, const AtomValuation& atom_val, const std::vector<Formula>& formulas);

// Table lookup; throws std::out_of_range when f is outside the closure.
bool eval(const KripkeModel& m, World w, const Formula& f);

// Direct recursive evaluation, independent of the table machinery.
bool eval_recursive(const Frame& frame, const AtomValuation& atom_val, World w, const Formula& f);

bool forces_everywhere(const KripkeModel& m, const Formula& f);

// True iff f holds at every world under every assignment to the atoms of f.
bool frame_forces(const Frame& frame, const Formula& f);

bool gamma_forces(const Frame& frame, const std::vector<Formula>& gamma);

// Global consequence over all sigma-appropriate frames with at most `bound`
// worlds: every model forcing gamma everywhere forces phi everywhere.
bool consequence_holds(const std::vector<Formula>& gamma, const Formula& phi, const SigmaSpec& sigma, std::uint32_t bound);

}  // namespace modal
