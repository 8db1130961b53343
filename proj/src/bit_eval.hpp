#pragma once

// Bit-parallel evaluation of a formula over every valuation of a small frame.
// A 64-bit word packs `lanes` valuations; lane l occupies bits [l*k, l*k+k),
// one bit per world.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <algorithm>
#include <unordered_map>
#include <vector>

#include "modal/formula.hpp"

namespace modal::detail {

struct SmallFrame {
  std::uint32_t k = 0;
  std::uint64_t rel = 0;  // bit a*k+b set iff a R b
  [[nodiscard]] bool r(std::uint32_t a, std::uint32_t b) const { return (rel >> (a * k + b)) & 1ULL; }
};

class BitEvaluator {
 public:
  BitEvaluator(const std::vector<Formula>& targets);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }

  // Visits valuation chunks of frame f in increasing valuation order. The
  // callback receives the first valuation index of the chunk, the number of
  // valid lanes, and the word of each target; it returns false to stop.
  template <typename Fn>
  void run(const SmallFrame& f, Fn&& fn);

  // Decodes valuation index v on a frame of k worlds: bit (j*k + w) gives atom j at w.
  static bool atom_at(std::uint64_t v, std::uint32_t j, std::uint32_t k, std::uint32_t w) {
    return (v >> (j * k + w)) & 1ULL;
  }

 private:
  std::vector<Formula> targets_;
  std::vector<Formula> subs_;
  std::vector<Atom> atoms_;
  std::unordered_map<Formula, std::size_t> index_;
  std::vector<std::int64_t> atom_slot_;  // per sub: atom position, -1 for non-atoms or bottom
  std::vector<std::size_t> lhs_, rhs_;
  std::vector<std::uint64_t> words_;
};

inline BitEvaluator::BitEvaluator(const std::vector<Formula>& targets) : targets_(targets) {
  subs_ = sub_formulas(targets);
  atoms_ = atoms_of(targets);
  for (std::size_t i = 0; i < subs_.size(); ++i) index_.emplace(subs_[i], i);
  atom_slot_.assign(subs_.size(), -1);
  lhs_.assign(subs_.size(), 0);
  rhs_.assign(subs_.size(), 0);
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    const Formula& g = subs_[i];
    if (g.is_atom() && !g.is_bottom()) {
      for (std::size_t j = 0; j < atoms_.size(); ++j)
        if (atoms_[j] == g.atom_value()) atom_slot_[i] = static_cast<std::int64_t>(j);
    } else if (g.is_implies()) {
      lhs_[i] = index_.at(g.lhs());
      rhs_[i] = index_.at(g.rhs());
    } else if (g.is_box()) {
      lhs_[i] = index_.at(g.body());
    }
  }
  words_.assign(subs_.size(), 0);
}

template <typename Fn>
void BitEvaluator::run(const SmallFrame& f, Fn&& fn) {
  const std::uint32_t k = f.k;
  const std::uint32_t a = static_cast<std::uint32_t>(atoms_.size());
  if (k == 0 || k > 8 || k * a > 40) throw std::invalid_argument("frame/atom count too large for exhaustive evaluation");
  const std::uint32_t lanes = 64 / k;
  const std::uint64_t total = 1ULL << (k * a);
  std::uint64_t lane_base = 0;
  for (std::uint32_t l = 0; l < lanes; ++l) lane_base |= 1ULL << (l * k);
  std::vector<std::uint64_t> succ_masks(k, 0);
  for (std::uint32_t w = 0; w < k; ++w)
    for (std::uint32_t u = 0; u < k; ++u)
      if (f.r(w, u)) succ_masks[w] |= 1ULL << u;
  std::vector<std::uint64_t> atom_words(a, 0);
  std::vector<std::uint64_t> out(targets_.size(), 0);

  for (std::uint64_t start = 0; start < total; start += lanes) {
    const std::uint64_t count = std::min<std::uint64_t>(lanes, total - start);
    std::uint64_t valid = 0;
    for (std::uint64_t l = 0; l < count; ++l) valid |= ((1ULL << k) - 1) << (l * k);
    std::fill(atom_words.begin(), atom_words.end(), 0);
    for (std::uint64_t l = 0; l < count; ++l) {
      const std::uint64_t v = start + l;
      for (std::uint32_t j = 0; j < a; ++j) {
        const std::uint64_t bits = (v >> (j * k)) & ((1ULL << k) - 1);
        atom_words[j] |= bits << (l * k);
      }
    }
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      const Formula& g = subs_[i];
      std::uint64_t w = 0;
      if (g.is_atom()) {
        w = atom_slot_[i] < 0 ? 0 : atom_words[static_cast<std::size_t>(atom_slot_[i])];
      } else if (g.is_implies()) {
        w = (~words_[lhs_[i]] | words_[rhs_[i]]) & valid;
      } else {
        const std::uint64_t body = words_[lhs_[i]];
        for (std::uint32_t x = 0; x < k; ++x) {
          std::uint64_t t = lane_base;
          std::uint64_t m = succ_masks[x];
          while (m) {
            const std::uint32_t u = static_cast<std::uint32_t>(__builtin_ctzll(m));
            m &= m - 1;
            t &= body >> u;
          }
          w |= (t & lane_base) << x;
        }
        w &= valid;
      }
      words_[i] = w;
    }
    for (std::size_t t = 0; t < targets_.size(); ++t) out[t] = words_[index_.at(targets_[t])];
    if (!fn(start, count, valid, out)) return;
  }
}

}  // namespace modal::detail
