#include "modal/sigma.hpp"

#include <stdexcept>

#include "modal/parser.hpp"

namespace modal {

bool is_base_axiom(Axiom a) { return a == Axiom::PL1 || a == Axiom::PL2 || a == Axiom::PL3 || a == Axiom::K; }

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::PL1: return "PL1";
    case Axiom::PL2: return "PL2";
    case Axiom::PL3: return "PL3";
    case Axiom::K: return "K";
    case Axiom::T: return "T";
    case Axiom::B: return "B";
    case Axiom::Four: return "4";
    case Axiom::Five: return "5";
    case Axiom::D: return "D";
    case Axiom::Dot2: return ".2";
    case Axiom::L: return "L";
  }
  return "?";
}

Axiom axiom_from_name(std::string_view name) {
  for (Axiom a : kBaseAxioms)
    if (axiom_name(a) == name) return a;
  for (Axiom a : kSigmaAxioms)
    if (axiom_name(a) == name) return a;
  throw std::invalid_argument("unknown axiom '" + std::string(name) + "'");
}

Formula axiom_formula(Axiom a) {
  switch (a) {
    case Axiom::PL1: return parse("p0 -> (p1 -> p0)");
    case Axiom::PL2: return parse("(p0 -> (p1 -> p2)) -> ((p0 -> p1) -> (p0 -> p2))");
    case Axiom::PL3: return parse("(!p0 -> !p1) -> (p1 -> p0)");
    case Axiom::K: return parse("[](p0 -> p1) -> ([]p0 -> []p1)");
    case Axiom::T: return parse("[]p0 -> p0");
    case Axiom::B: return parse("p0 -> []<>p0");
    case Axiom::Four: return parse("[]p0 -> [][]p0");
    case Axiom::Five: return parse("<>p0 -> []<>p0");
    case Axiom::D: return parse("[]p0 -> <>p0");
    case Axiom::Dot2: return parse("<>[]p0 -> []<>p0");
    case Axiom::L: return parse("[]([]p0 -> p0) -> []p0");
  }
  throw std::logic_error("unreachable");
}

SigmaSpec::SigmaSpec(std::initializer_list<Axiom> axs) {
  for (Axiom a : axs) add(a);
}

SigmaSpec& SigmaSpec::add(Axiom a) {
  if (is_base_axiom(a)) throw std::invalid_argument("base axiom " + axiom_name(a) + " is not a sigma axiom");
  bits_ |= 1U << bit(a);
  return *this;
}

SigmaSpec SigmaSpec::parse(std::string_view text) {
  SigmaSpec s;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view item = text.substr(i, j - i);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      if (item == "GL") {
        s.add(Axiom::L);
      } else {
        Axiom a = axiom_from_name(item);
        if (is_base_axiom(a)) throw std::invalid_argument("not a sigma axiom: " + std::string(item));
        s.add(a);
      }
    }
    i = j + 1;
  }
  return s;
}

std::vector<Axiom> SigmaSpec::axioms() const {
  std::vector<Axiom> out;
  for (Axiom a : kSigmaAxioms)
    if (has(a)) out.push_back(a);
  return out;
}

std::string SigmaSpec::to_string() const {
  if (is_gl()) return "GL";
  std::string out;
  for (Axiom a : axioms()) {
    if (!out.empty()) out += ",";
    out += axiom_name(a);
  }
  return out.empty() ? "K" : out;
}

std::vector<SigmaSpec> subsets_tb4d() {
  const Axiom base[] = {Axiom::T, Axiom::B, Axiom::Four, Axiom::D};
  std::vector<SigmaSpec> out;
  for (unsigned m = 0; m < 16; ++m) {
    SigmaSpec s;
    for (unsigned i = 0; i < 4; ++i)
      if (m & (1U << i)) s.add(base[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace modal
