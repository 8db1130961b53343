#include "modal/mcs.hpp"

#include <algorithm>

#include "modal/parser.hpp"
#include "modal/tableau.hpp"

namespace modal {

Formula decided_neg(const Formula& f) {
  if (auto t = as_neg(f)) return *t;
  return neg(f);
}

Closure::Closure(std::vector<Formula> seed) {
  std::vector<Formula> all = sub_formulas(seed);
  all.push_back(Formula::bottom());
  const std::size_t base = all.size();
  for (std::size_t i = 0; i < base; ++i) all.push_back(decided_neg(all[i]));
  std::sort(all.begin(), all.end(), StructuralLess{});
  all.erase(std::unique(all.begin(), all.end()), all.end());
  formulas_ = std::move(all);
  for (std::size_t i = 0; i < formulas_.size(); ++i) index_.emplace(formulas_[i], i);
}

Closure make_closure(const std::vector<Formula>& gamma, const Formula& phi) {
  std::vector<Formula> seed = gamma;
  seed.push_back(phi);
  return Closure(std::move(seed));
}

FiniteMCS::FiniteMCS(const Closure& closure, std::vector<bool> in) : closure_(&closure), in_(std::move(in)) {
  if (in_.size() != closure.size()) throw std::invalid_argument("membership mask does not match the closure");
}

bool FiniteMCS::contains(const Formula& f) const { return closure_->contains(f) && in_[closure_->index(f)]; }

std::vector<Formula> FiniteMCS::members() const {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < in_.size(); ++i)
    if (in_[i]) out.push_back(closure_->formulas()[i]);
  return out;
}

FiniteMCS finitary_lindenbaum(const std::vector<Formula>& seed, const Closure& closure) {
  for (const auto& s : seed)
    if (!closure.contains(s)) throw std::invalid_argument("seed formula " + render(s) + " lies outside the closure");
  if (!k_consistent(seed)) throw InconsistentSeed("seed is K-inconsistent");
  std::vector<bool> in(closure.size(), false);
  std::vector<Formula> acc = seed;
  for (const auto& s : seed) in[closure.index(s)] = true;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const Formula& f = closure.formulas()[i];
    const Formula nf = decided_neg(f);
    if (in[i] || in[closure.index(nf)]) continue;
    acc.push_back(f);
    if (k_consistent(acc)) {
      in[i] = true;
    } else {
      acc.back() = nf;
      in[closure.index(nf)] = true;
    }
  }
  return FiniteMCS(closure, std::move(in));
}

FiniteMCS successor_mcs(const FiniteMCS& e, const Formula& psi) {
  const Closure& c = e.closure();
  const Formula boxed = Formula::box(psi);
  if (!c.contains(boxed)) throw std::invalid_argument("[]" + render(psi) + " is outside the closure");
  if (e.contains(boxed)) throw std::invalid_argument("[]" + render(psi) + " belongs to the set");
  std::vector<Formula> seed{decided_neg(psi)};
  for (const auto& f : e.members())
    if (f.is_box()) seed.push_back(f.body());
  try {
    return finitary_lindenbaum(seed, c);
  } catch (const InconsistentSeed&) {
    throw std::logic_error("successor seed is inconsistent; the set is not maximal consistent");
  }
}

bool closure_related(const FiniteMCS& e, const FiniteMCS& f) {
  for (const auto& g : e.members())
    if (g.is_box() && !f.contains(g.body())) return false;
  return true;
}

std::vector<FiniteMCS> all_mcs(const Closure& closure) {
  // Pair each formula with its decided negation; choose one side per pair.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const std::size_t j = closure.index(decided_neg(closure.formulas()[i]));
    if (i < j) reps.push_back(i);
  }
  if (reps.size() > 20) throw std::invalid_argument("closure too large to enumerate its maximal consistent sets");
  std::vector<FiniteMCS> out;
  for (std::uint64_t m = 0; m < (1ULL << reps.size()); ++m) {
    std::vector<bool> in(closure.size(), false);
    std::vector<Formula> chosen;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const Formula f = closure.formulas()[reps[k]];
      const Formula pick = (m >> k) & 1ULL ? decided_neg(f) : f;
      in[closure.index(pick)] = true;
      chosen.push_back(pick);
    }
    if (k_consistent(chosen)) out.emplace_back(closure, std::move(in));
  }
  return out;
}

McsCheck check_mcs_invariants(const FiniteMCS& e) {
  const auto members = e.members();
  if (!k_consistent(members)) return {false, "members are inconsistent"};
  for (const auto& f : e.closure().formulas()) {
    const bool a = e.contains(f), b = e.contains(decided_neg(f));
    if (a == b) return {false, "maximality fails at " + render(f)};
    if (!a) {
      auto with = members;
      with.push_back(decided_neg(f));
      if (!k_consistent(with)) return {false, "entailed formula missing: " + render(f)};
    }
  }
  return {};
}

McsCheck check_membership_rules(const FiniteMCS& e) {
  const Closure& c = e.closure();
  for (const auto& f : c.formulas()) {
    if (!f.is_implies()) continue;
    const Formula a = f.lhs(), b = f.rhs();
    if (f.rhs().is_bottom() && e.contains(f) == e.contains(a))
      return {false, "negation rule fails at " + render(f)};
    if (e.contains(f) != (!e.contains(a) || e.contains(b))) return {false, "implication rule fails at " + render(f)};
    if (auto cj = as_conj(f)) {
      if (e.contains(f) != (e.contains(cj->first) && e.contains(cj->second)))
        return {false, "conjunction rule fails at " + render(f)};
    }
  }
  return {};
}

}  // namespace modal
