#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modal/formula.hpp"
#include "modal/sigma.hpp"

namespace modal {

enum class JustKind { Premise, SigmaAxiom, BaseAxiom, ModusPonens, Necessitation, UniformSub };

std::string just_kind_name(JustKind k);

struct Justification {
  JustKind kind = JustKind::Premise;
  Axiom axiom = Axiom::K;  // SigmaAxiom, BaseAxiom
  std::size_t i = 0;       // ModusPonens (minor premise), Necessitation, UniformSub
  std::size_t j = 0;       // ModusPonens (the implication)
  Substitution sigma;      // UniformSub

  static Justification premise() { return {}; }
  static Justification sigma_axiom(Axiom a) { return {JustKind::SigmaAxiom, a, 0, 0, {}}; }
  static Justification base_axiom(Axiom a) { return {JustKind::BaseAxiom, a, 0, 0, {}}; }
  static Justification modus_ponens(std::size_t i, std::size_t j) { return {JustKind::ModusPonens, Axiom::K, i, j, {}}; }
  static Justification necessitation(std::size_t i) { return {JustKind::Necessitation, Axiom::K, i, 0, {}}; }
  static Justification uniform_sub(std::size_t i, Substitution s) {
    return {JustKind::UniformSub, Axiom::K, i, 0, std::move(s)};
  }
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct HilbertProof {
  std::vector<ProofLine> lines;

  [[nodiscard]] const Formula& conclusion() const;
  HilbertProof& add(Formula f, Justification j);
};

struct ProofVerdict {
  bool ok = true;
  std::optional<std::size_t> line;  // first failing line
  std::string clause;
  std::string message;
  explicit operator bool() const { return ok; }
};

ProofVerdict check_proof(const SigmaSpec& sigma, const std::vector<Formula>& gamma, const HilbertProof& proof);

// Pbl certificate: the proof checks with no premises and some line is
// psi_1 & ... & psi_n -> phi for psi_k in gamma (left fold). The n = 0 case
// accepts both a bare phi line and top -> phi.
ProofVerdict check_provability_certificate(const SigmaSpec& sigma, const std::vector<Formula>& gamma,
                                           const Formula& phi, const HilbertProof& proof);

// Builders. Each throws std::invalid_argument on malformed input.
HilbertProof instantiate(Axiom a, const Substitution& sigma = {});
HilbertProof nec(const HilbertProof& p);
// a proves A, b proves A -> B; the result proves B.
HilbertProof mp(const HilbertProof& a, const HilbertProof& b);
// Proof of phi -> phi from PL1 and PL2.
HilbertProof identity_proof(const Formula& phi);

struct ProofDocument {
  SigmaSpec sigma;
  std::vector<Formula> gamma;
  HilbertProof proof;
};

std::string proof_to_json(const ProofDocument& doc);
// Throws std::invalid_argument (or ParseError) on malformed documents.
ProofDocument proof_from_json(const std::string& text);

}  // namespace modal
