#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/sigma.hpp"

namespace modal {

// A first-order variable or a world constant.
struct Term {
  bool is_var = true;
  std::string var;
  World world = 0;

  static Term variable(std::string name) { return {true, std::move(name), 0}; }
  static Term constant(World w) { return {false, {}, w}; }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Term&, const Term&) = default;
};

enum class FolKind { Pred, Rel, Eq, Bot, Implies, Not, And, Forall, Exists };

// Immutable first-order formula over unary predicates P_i (for p_i), Q_i
// (for c_i) and the binary relation r.
class FolFormula {
 public:
  static FolFormula pred(Atom a, Term t);
  static FolFormula rel(Term a, Term b);
  static FolFormula eq(Term a, Term b);
  static FolFormula bot();
  static FolFormula implies(FolFormula a, FolFormula b);
  static FolFormula negation(FolFormula a);
  static FolFormula conj(FolFormula a, FolFormula b);
  static FolFormula forall(std::string v, FolFormula body);
  static FolFormula exists(std::string v, FolFormula body);

  [[nodiscard]] FolKind kind() const { return node_->kind; }
  [[nodiscard]] Atom atom() const { return node_->atom; }
  [[nodiscard]] const Term& t1() const { return node_->t1; }
  [[nodiscard]] const Term& t2() const { return node_->t2; }
  [[nodiscard]] const std::string& var() const { return node_->var; }
  [[nodiscard]] const FolFormula& lhs() const { return *node_->a; }
  [[nodiscard]] const FolFormula& rhs() const { return *node_->b; }
  [[nodiscard]] const FolFormula& body() const { return *node_->a; }

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::set<std::string> free_variables() const;
  [[nodiscard]] bool is_sentence() const { return free_variables().empty(); }
  friend bool operator==(const FolFormula& x, const FolFormula& y);

 private:
  struct Node {
    FolKind kind;
    Atom atom = Atom::bottom();
    Term t1, t2;
    std::string var;
    std::shared_ptr<const FolFormula> a, b;
  };
  explicit FolFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string predicate_name(Atom a);

// The sentence A(psi) for psi in {T,B,4,D,5,.2}; throws for L and base axioms.
FolFormula frame_condition(Axiom a);
std::vector<FolFormula> frame_conditions(const SigmaSpec& sigma);

// ST_x(phi). Box layers bind y_0, y_1, ... by depth, skipping past x when x is
// itself some y_k.
FolFormula standard_translation(const Formula& phi, const Term& x);
FolFormula standard_translation(const Formula& phi, const std::string& x = "x");
// forall x ST_x(phi).
FolFormula global_translation(const Formula& phi);

struct FolStructure {
  std::vector<World> domain;
  std::map<Atom, std::set<World>> preds;  // extension of each interpreted predicate
  std::set<std::pair<World, World>> rel;
};

class FolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws FolError on a free variable, an uninterpreted predicate or a world
// constant outside the domain.
bool eval_fol(const FolStructure& s, const FolFormula& sentence);

FolStructure kripke_to_fol(const Frame& frame, const AtomValuation& val);
FolStructure kripke_to_fol(const KripkeModel& m);
// Domain elements become worlds 0..k-1 in ascending order; every listed atom
// needs a predicate table. The closure is sub of the listed atoms plus extra.
KripkeModel fol_to_kripke(const FolStructure& s, const std::vector<Atom>& atoms,
                          const std::vector<Formula>& extra = {});

class SrightfPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SrightfReport {
  // "weak-model", or "oracle" when C_{h+1,n} exceeds the cap and a bounded
  // search supplies the model instead.
  std::string source = "weak-model";
  std::uint32_t worlds = 0;
  World target_world = 0;
  bool gamma_global = true;     // every forall x ST_x(theta), theta in gamma0
  bool conditions = true;       // every A(psi), psi in sigma
  bool phi_refuted = true;      // not forall x ST_x(phi)
  bool local = true;            // ST_w(theta) and not ST_w(phi) at the target world
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return gamma_global && conditions && phi_refuted; }
};

// Builds the weak model of /\gamma0 & !phi, converts it and checks the
// translated premises, frame conditions and refutation. Throws
// SrightfPrecondition when the pipeline finds the target inconsistent,
// std::invalid_argument for sigma outside {T,B,4,D} and CapExceeded when
// neither the weak model nor a 4-world search is available.
SrightfReport srightf_witness(const std::vector<Formula>& gamma0, const Formula& phi, const SigmaSpec& sigma);

}  // namespace modal
