#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "modal/canonical.hpp"
#include "modal/mcs.hpp"
#include "modal/parser.hpp"

namespace testing_mcs {

// K-consistency read off the canonical family of the conjunction's language:
// every member is K-consistent and the members cover every consistent formula.
inline bool canonical_consistent(const std::vector<modal::Formula>& xs) {
  const modal::Formula phi = modal::conj_all(xs);
  const auto& fam = modal::CanonicalFamily::get(phi.height(), modal::order(phi));
  const auto ext = modal::canonical_extension(fam, phi);
  return std::find(ext.begin(), ext.end(), true) != ext.end();
}

inline std::string check_with_oracle(const modal::FiniteMCS& e) {
  const auto members = e.members();
  if (!canonical_consistent(members)) return "members inconsistent";
  for (const auto& f : e.closure().formulas()) {
    const bool in = e.contains(f);
    const bool out = e.contains(f.is_implies() && f.rhs().is_bottom() ? f.lhs() : modal::neg(f));
    if (in == out && e.closure().contains(modal::neg(f))) return "maximality at " + modal::render(f);
    if (!in) {
      auto with = members;
      with.push_back(modal::neg(f));
      if (!canonical_consistent(with)) return "entailed but absent: " + modal::render(f);
    }
  }
  return {};
}

// Successor property: the seed lands in the successor and the
// closure relation holds.
inline std::string check_successors(const modal::FiniteMCS& e) {
  for (const auto& f : e.closure().formulas()) {
    if (!f.is_box() || e.contains(f)) continue;
    const modal::FiniteMCS s = modal::successor_mcs(e, f.body());
    if (!s.contains(modal::decided_neg(f.body()))) return "successor misses ~" + modal::render(f.body());
    for (const auto& g : e.members())
      if (g.is_box() && !s.contains(g.body())) return "successor misses " + modal::render(g.body());
    if (!modal::closure_related(e, s)) return "successor not related";
    auto r = modal::check_mcs_invariants(s);
    if (!r.ok) return "successor: " + r.failure;
  }
  return {};
}

// One seeded Lindenbaum run over a random closure in L_{2,0} or L_{1,1}.
// Returns the empty string on success.
inline std::string lindenbaum_run(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  const bool tall = coin(rng) == 0;
  const std::uint32_t h = tall ? 2 : 1, n = tall ? 0 : 1;
  std::vector<modal::Formula> gamma;
  for (int i = 0; i < 2; ++i) gamma.push_back(testing_corpus::random_in_language(rng, h, n, 4));
  const modal::Formula phi = testing_corpus::random_in_language(rng, h, n, 4);
  const modal::Closure closure = modal::make_closure(gamma, phi);
  std::vector<modal::Formula> seed;
  for (const auto& g : gamma)
    if (coin(rng)) seed.push_back(g);
  if (!canonical_consistent(seed)) {
    try {
      modal::finitary_lindenbaum(seed, closure);
      return "inconsistent seed accepted";
    } catch (const modal::InconsistentSeed&) {
      return {};
    }
  }
  const modal::FiniteMCS e = modal::finitary_lindenbaum(seed, closure);
  for (const auto& s : seed)
    if (!e.contains(s)) return "seed member dropped: " + modal::render(s);
  if (auto r = modal::check_mcs_invariants(e); !r.ok) return r.failure;
  if (auto r = check_with_oracle(e); !r.empty()) return r;
  if (auto r = modal::check_membership_rules(e); !r.ok) return r.failure;
  return check_successors(e);
}

// Restricted diamond-introduction over the closure canonical model.
inline std::string check_diamond_introduction(const modal::Closure& closure) {
  const auto worlds = modal::all_mcs(closure);
  for (const auto& e : worlds)
    for (const auto& f : worlds) {
      if (!modal::closure_related(e, f)) continue;
      for (const auto& psi : f.members()) {
        const modal::Formula d = modal::dia(psi);
        if (closure.contains(d) && !e.contains(d)) return "diamond of " + modal::render(psi) + " missing";
      }
    }
  return {};
}

}  // namespace testing_mcs
