#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace modal {

enum class AtomKind : std::uint8_t { Var, Const, Bottom };

struct Atom {
  AtomKind kind = AtomKind::Bottom;
  std::uint32_t index = 0;

  static Atom var(std::uint32_t i) { return {AtomKind::Var, i}; }
  static Atom constant(std::uint32_t i) { return {AtomKind::Const, i}; }
  static Atom bottom() { return {AtomKind::Bottom, 0}; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Enumeration of non-bottom atoms: rank(p_i) = 2i, rank(c_i) = 2i+1.
std::uint32_t atom_rank(const Atom& a);
Atom atom_of_rank(std::uint32_t k);
std::string atom_name(const Atom& a);

enum class NodeKind : std::uint8_t { Atom, Implies, Box };

struct Node;

// Hash-consed formula handle. Structurally equal formulas share one node, so
// equality and hashing are pointer operations.
class Formula {
 public:
  Formula();  // bottom

  static Formula atom(const Atom& a);
  static Formula var(std::uint32_t i) { return atom(Atom::var(i)); }
  static Formula constant(std::uint32_t i) { return atom(Atom::constant(i)); }
  static Formula bottom() { return atom(Atom::bottom()); }
  static Formula implies(const Formula& a, const Formula& b);
  static Formula box(const Formula& a);

  [[nodiscard]] NodeKind kind() const;
  [[nodiscard]] bool is_atom() const { return kind() == NodeKind::Atom; }
  [[nodiscard]] bool is_implies() const { return kind() == NodeKind::Implies; }
  [[nodiscard]] bool is_box() const { return kind() == NodeKind::Box; }
  [[nodiscard]] bool is_bottom() const;
  [[nodiscard]] const Atom& atom_value() const;
  [[nodiscard]] Formula lhs() const;
  [[nodiscard]] Formula rhs() const;
  [[nodiscard]] Formula body() const;

  [[nodiscard]] std::uint32_t height() const;
  // Maximum atom rank; 0 when only bottom occurs.
  [[nodiscard]] std::uint32_t order() const;
  [[nodiscard]] std::uint32_t size() const;
  [[nodiscard]] std::uint64_t id() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Formula& a, const Formula& b) { return a.n_ != b.n_; }

 private:
  explicit Formula(const Node* n) : n_(n) {}
  const Node* n_;
};

// Deterministic structural order: by size, then kind, then atom, then children.
int structural_compare(const Formula& a, const Formula& b);
struct StructuralLess {
  bool operator()(const Formula& a, const Formula& b) const { return structural_compare(a, b) < 0; }
};

// Derived connectives, expanded to core form.
Formula neg(const Formula& a);
Formula top();
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula dia(const Formula& a);
Formula iff(const Formula& a, const Formula& b);
// Left folds; empty conjunction is top, empty disjunction is bottom.
Formula conj_all(const std::vector<Formula>& xs);
Formula disj_all(const std::vector<Formula>& xs);

// Pattern views onto derived forms.
std::optional<Formula> as_neg(const Formula& f);
std::optional<Formula> as_dia(const Formula& f);
std::optional<std::pair<Formula, Formula>> as_conj(const Formula& f);
std::optional<std::pair<Formula, Formula>> as_disj(const Formula& f);

std::uint32_t height(const Formula& f);
std::uint32_t order(const Formula& f);
bool in_language(const Formula& f, std::uint32_t h, std::uint32_t n);

// Subformulas ordered children-first (every formula appears after its parts).
std::vector<Formula> sub_formulas(const Formula& f);
std::vector<Formula> sub_formulas(const std::vector<Formula>& fs);
std::vector<Atom> atoms_of(const Formula& f);
std::vector<Atom> atoms_of(const std::vector<Formula>& fs);
std::vector<std::uint32_t> variables_of(const Formula& f);

using Substitution = std::map<std::uint32_t, Formula>;

Formula substitute(const Substitution& sigma, const Formula& f);
std::optional<Substitution> match_substitution(const Formula& pattern, const Formula& target);

// Random core formula of depth <= depth over atoms of rank < ranks and bot.
Formula random_formula(std::mt19937_64& rng, std::uint32_t depth, std::uint32_t ranks);

}  // namespace modal

template <>
struct std::hash<modal::Formula> {
  std::size_t operator()(const modal::Formula& f) const noexcept { return std::hash<std::uint64_t>{}(f.id()); }
};
