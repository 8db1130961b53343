#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modal/formula.hpp"

namespace modal {

enum class Axiom : std::uint8_t { PL1, PL2, PL3, K, T, B, Four, Five, D, Dot2, L };

inline constexpr Axiom kSigmaAxioms[] = {Axiom::T, Axiom::B, Axiom::Four, Axiom::Five, Axiom::D, Axiom::Dot2, Axiom::L};
inline constexpr Axiom kBaseAxioms[] = {Axiom::PL1, Axiom::PL2, Axiom::PL3, Axiom::K};

bool is_base_axiom(Axiom a);
std::string axiom_name(Axiom a);
Axiom axiom_from_name(std::string_view name);

// Schematic axiom over p = p0, q = p1, r = p2.
Formula axiom_formula(Axiom a);

class SigmaSpec {
 public:
  SigmaSpec() = default;
  SigmaSpec(std::initializer_list<Axiom> axs);

  static SigmaSpec gl() { return SigmaSpec{Axiom::L}; }
  // Comma list over T,B,4,5,D,.2,L (also accepts "GL").
  static SigmaSpec parse(std::string_view text);

  SigmaSpec& add(Axiom a);
  [[nodiscard]] bool has(Axiom a) const { return (bits_ >> bit(a)) & 1U; }
  [[nodiscard]] bool empty() const { return bits_ == 0; }
  [[nodiscard]] bool is_gl() const { return bits_ == (1U << bit(Axiom::L)); }
  [[nodiscard]] bool subset_of(const SigmaSpec& o) const { return (bits_ & ~o.bits_) == 0; }
  [[nodiscard]] std::vector<Axiom> axioms() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::uint32_t bits() const { return bits_; }

  friend bool operator==(const SigmaSpec&, const SigmaSpec&) = default;

 private:
  static unsigned bit(Axiom a) { return static_cast<unsigned>(a); }
  std::uint32_t bits_ = 0;
};

// All 16 subsets of {T,B,4,D}.
std::vector<SigmaSpec> subsets_tb4d();

}  // namespace modal
