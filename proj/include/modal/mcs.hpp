#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "modal/formula.hpp"

namespace modal {

// theta when f = theta -> bot, else f -> bot.
Formula decided_neg(const Formula& f);

// Finite fragment closed under subformulas and decided negation, in a fixed
// total order.
class Closure {
 public:
  Closure() = default;
  explicit Closure(std::vector<Formula> seed);

  [[nodiscard]] const std::vector<Formula>& formulas() const { return formulas_; }
  [[nodiscard]] std::size_t size() const { return formulas_.size(); }
  [[nodiscard]] bool contains(const Formula& f) const { return index_.count(f) != 0; }
  [[nodiscard]] std::size_t index(const Formula& f) const { return index_.at(f); }

 private:
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::size_t> index_;
};

Closure make_closure(const std::vector<Formula>& gamma, const Formula& phi);

class InconsistentSeed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteMCS {
 public:
  FiniteMCS(const Closure& closure, std::vector<bool> in);

  [[nodiscard]] const Closure& closure() const { return *closure_; }
  [[nodiscard]] bool contains(const Formula& f) const;
  [[nodiscard]] std::vector<Formula> members() const;
  [[nodiscard]] const std::vector<bool>& mask() const { return in_; }

 private:
  const Closure* closure_;
  std::vector<bool> in_;
};

// Scans the closure in order, adding each undecided formula when consistent
// with the accumulation and its decided negation otherwise. K-consistency is
// exact (tableau). Throws InconsistentSeed; the closure must outlive the result.
FiniteMCS finitary_lindenbaum(const std::vector<Formula>& seed, const Closure& closure);

// Extension of {~psi} ∪ {xi : []xi in E}; requires []psi in the closure and not in E.
FiniteMCS successor_mcs(const FiniteMCS& e, const Formula& psi);

// E R E' iff every []xi of the closure in E has xi in E'.
bool closure_related(const FiniteMCS& e, const FiniteMCS& f);

// Every maximal consistent subset of the closure, in mask order.
std::vector<FiniteMCS> all_mcs(const Closure& closure);

struct McsCheck {
  bool ok = true;
  std::string failure;
};

// Consistency, maximality and deductive closure within the closure.
McsCheck check_mcs_invariants(const FiniteMCS& e);
// Negation, implication and conjunction membership rules.
McsCheck check_membership_rules(const FiniteMCS& e);

}  // namespace modal
