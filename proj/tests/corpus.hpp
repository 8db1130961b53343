#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modal/formula.hpp"

namespace testing_corpus {

// Every core formula with at most max_size nodes, atoms of rank <= max_rank
// (plus bot) and height <= max_height.
inline std::vector<modal::Formula> exhaustive(std::uint32_t max_size, std::uint32_t max_rank,
                                              std::uint32_t max_height) {
  using modal::Formula;
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size == 0) return {};
  by_size[1].push_back(Formula::bottom());
  for (std::uint32_t r = 0; r <= max_rank; ++r) by_size[1].push_back(Formula::atom(modal::atom_of_rank(r)));
  for (std::uint32_t s = 2; s <= max_size; ++s) {
    for (const auto& b : by_size[s - 1])
      if (b.height() < max_height) by_size[s].push_back(Formula::box(b));
    for (std::uint32_t l = 1; l + 1 < s; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[s - 1 - l]) by_size[s].push_back(Formula::implies(a, b));
  }
  std::vector<Formula> out;
  for (const auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Random core formula of depth <= depth over atoms of rank < ranks (plus bot).
inline modal::Formula random_formula(std::mt19937_64& rng, std::uint32_t depth, std::uint32_t ranks) {
  using modal::Formula;
  std::uniform_int_distribution<std::uint32_t> pick(0, 9);
  const std::uint32_t c = depth == 0 ? 0 : pick(rng);
  if (c < 3) {
    std::uniform_int_distribution<std::uint32_t> atom(0, ranks);
    const std::uint32_t a = atom(rng);
    return a == ranks ? Formula::bottom() : Formula::atom(modal::atom_of_rank(a));
  }
  if (c < 5) return Formula::box(random_formula(rng, depth - 1, ranks));
  Formula l = random_formula(rng, depth - 1, ranks);
  return Formula::implies(l, random_formula(rng, depth - 1, ranks));
}

// Random formula whose height and order stay within (h, n).
inline modal::Formula random_in_language(std::mt19937_64& rng, std::uint32_t h, std::uint32_t n,
                                         std::uint32_t depth) {
  using modal::Formula;
  std::uniform_int_distribution<std::uint32_t> pick(0, 9);
  const std::uint32_t c = depth == 0 ? 0 : pick(rng);
  if (c < 3) {
    std::uniform_int_distribution<std::uint32_t> atom(0, n + 1);
    const std::uint32_t a = atom(rng);
    return a == n + 1 ? Formula::bottom() : Formula::atom(modal::atom_of_rank(a));
  }
  if (c < 5 && h > 0) return Formula::box(random_in_language(rng, h - 1, n, depth - 1));
  Formula l = random_in_language(rng, h, n, depth - 1);
  return Formula::implies(l, random_in_language(rng, h, n, depth - 1));
}

}  // namespace testing_corpus
