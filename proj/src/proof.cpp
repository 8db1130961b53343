#include "modal/proof.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "modal/parser.hpp"

namespace modal {

namespace {

ProofVerdict fail(std::size_t line, JustKind k, std::string message) {
  return {false, line, just_kind_name(k), std::move(message)};
}

bool in_gamma(const std::vector<Formula>& gamma, const Formula& f) {
  return std::find(gamma.begin(), gamma.end(), f) != gamma.end();
}

// X is a left-folded conjunction of one or more members of gamma.
bool is_gamma_fold(const std::vector<Formula>& gamma, const Formula& x) {
  if (in_gamma(gamma, x)) return true;
  auto c = as_conj(x);
  return c && in_gamma(gamma, c->second) && is_gamma_fold(gamma, c->first);
}

HilbertProof shifted(const HilbertProof& p, std::size_t by) {
  HilbertProof out = p;
  for (auto& l : out.lines) {
    switch (l.just.kind) {
      case JustKind::ModusPonens:
        l.just.i += by;
        l.just.j += by;
        break;
      case JustKind::Necessitation:
      case JustKind::UniformSub: l.just.i += by; break;
      default: break;
    }
  }
  return out;
}

}  // namespace

std::string just_kind_name(JustKind k) {
  switch (k) {
    case JustKind::Premise: return "Premise";
    case JustKind::SigmaAxiom: return "SigmaAxiom";
    case JustKind::BaseAxiom: return "BaseAxiom";
    case JustKind::ModusPonens: return "ModusPonens";
    case JustKind::Necessitation: return "Necessitation";
    case JustKind::UniformSub: return "UniformSub";
  }
  return "?";
}

const Formula& HilbertProof::conclusion() const {
  if (lines.empty()) throw std::logic_error("empty proof has no conclusion");
  return lines.back().formula;
}

HilbertProof& HilbertProof::add(Formula f, Justification j) {
  lines.push_back({std::move(f), std::move(j)});
  return *this;
}

ProofVerdict check_proof(const SigmaSpec& sigma, const std::vector<Formula>& gamma, const HilbertProof& proof) {
  if (proof.lines.empty()) return {false, std::nullopt, "Empty", "proof has no lines"};
  for (std::size_t k = 0; k < proof.lines.size(); ++k) {
    const auto& [f, j] = proof.lines[k];
    auto earlier = [&](std::size_t i) { return i < k; };
    switch (j.kind) {
      case JustKind::Premise:
        if (!in_gamma(gamma, f)) return fail(k, j.kind, "formula is not a premise");
        break;
      case JustKind::SigmaAxiom:
        if (is_base_axiom(j.axiom) || !sigma.has(j.axiom))
          return fail(k, j.kind, "axiom " + axiom_name(j.axiom) + " is not in " + sigma.to_string());
        if (f != axiom_formula(j.axiom)) return fail(k, j.kind, "formula differs from the schema " + axiom_name(j.axiom));
        break;
      case JustKind::BaseAxiom:
        if (!is_base_axiom(j.axiom)) return fail(k, j.kind, axiom_name(j.axiom) + " is not a base axiom");
        if (f != axiom_formula(j.axiom)) return fail(k, j.kind, "formula differs from the schema " + axiom_name(j.axiom));
        break;
      case JustKind::ModusPonens: {
        if (!earlier(j.i) || !earlier(j.j)) return fail(k, j.kind, "cited line does not precede");
        const Formula& imp = proof.lines[j.j].formula;
        if (!imp.is_implies() || imp.lhs() != proof.lines[j.i].formula || imp.rhs() != f)
          return fail(k, j.kind, "lines do not have the shape A, A -> B");
        break;
      }
      case JustKind::Necessitation:
        if (!earlier(j.i)) return fail(k, j.kind, "cited line does not precede");
        if (f != Formula::box(proof.lines[j.i].formula)) return fail(k, j.kind, "formula is not the box of the cited line");
        break;
      case JustKind::UniformSub: {
        if (!earlier(j.i)) return fail(k, j.kind, "cited line does not precede");
        const Formula& src = proof.lines[j.i].formula;
        const auto vars = variables_of(src);
        for (const auto& [v, _] : j.sigma)
          if (!std::binary_search(vars.begin(), vars.end(), v))
            return fail(k, j.kind, "substitution binds p" + std::to_string(v) + ", absent from the cited line");
        if (substitute(j.sigma, src) != f) return fail(k, j.kind, "formula is not the substitution instance");
        break;
      }
    }
  }
  return {};
}

ProofVerdict check_provability_certificate(const SigmaSpec& sigma, const std::vector<Formula>& gamma,
                                           const Formula& phi, const HilbertProof& proof) {
  ProofVerdict inner = check_proof(sigma, {}, proof);
  if (!inner) return inner;
  const Formula bare_top = Formula::implies(top(), phi);
  for (const auto& l : proof.lines) {
    const Formula& f = l.formula;
    if (f == phi || f == bare_top) return {};
    if (f.is_implies() && f.rhs() == phi && is_gamma_fold(gamma, f.lhs())) return {};
  }
  return {false, std::nullopt, "Certificate", "no line has the form psi_1 & ... & psi_n -> " + render(phi)};
}

HilbertProof instantiate(Axiom a, const Substitution& sigma) {
  const Formula schema = axiom_formula(a);
  HilbertProof p;
  p.add(schema, is_base_axiom(a) ? Justification::base_axiom(a) : Justification::sigma_axiom(a));
  if (sigma.empty()) return p;
  const auto vars = variables_of(schema);
  for (const auto& [v, _] : sigma)
    if (!std::binary_search(vars.begin(), vars.end(), v))
      throw std::invalid_argument("substitution binds p" + std::to_string(v) + ", absent from " + axiom_name(a));
  p.add(substitute(sigma, schema), Justification::uniform_sub(0, sigma));
  return p;
}

HilbertProof nec(const HilbertProof& p) {
  HilbertProof out = p;
  out.add(Formula::box(p.conclusion()), Justification::necessitation(p.lines.size() - 1));
  return out;
}

HilbertProof mp(const HilbertProof& a, const HilbertProof& b) {
  const Formula& A = a.conclusion();
  const Formula& imp = b.conclusion();
  if (!imp.is_implies() || imp.lhs() != A)
    throw std::invalid_argument("modus ponens shape mismatch: " + render(imp) + " does not start with " + render(A));
  HilbertProof out = a;
  const HilbertProof tail = shifted(b, a.lines.size());
  out.lines.insert(out.lines.end(), tail.lines.begin(), tail.lines.end());
  out.add(imp.rhs(), Justification::modus_ponens(a.lines.size() - 1, out.lines.size() - 1));
  return out;
}

HilbertProof identity_proof(const Formula& phi) {
  const Formula pp = Formula::implies(phi, phi);
  // PL2[p0:=phi, p1:=phi->phi, p2:=phi], PL1[p0:=phi, p1:=phi->phi], PL1[p0:=phi, p1:=phi].
  HilbertProof l2 = instantiate(Axiom::PL2, {{0, phi}, {1, pp}, {2, phi}});
  HilbertProof l1 = instantiate(Axiom::PL1, {{0, phi}, {1, pp}});
  HilbertProof l1b = instantiate(Axiom::PL1, {{0, phi}, {1, phi}});
  return mp(l1b, mp(l1, l2));
}

std::string proof_to_json(const ProofDocument& doc) {
  nlohmann::json j;
  j["sigma"] = nlohmann::json::array();
  for (Axiom a : doc.sigma.axioms()) j["sigma"].push_back(axiom_name(a));
  j["gamma"] = nlohmann::json::array();
  for (const auto& g : doc.gamma) j["gamma"].push_back(render(g));
  j["lines"] = nlohmann::json::array();
  for (const auto& l : doc.proof.lines) {
    nlohmann::json just{{"kind", just_kind_name(l.just.kind)}};
    switch (l.just.kind) {
      case JustKind::SigmaAxiom:
      case JustKind::BaseAxiom: just["ax"] = axiom_name(l.just.axiom); break;
      case JustKind::ModusPonens:
        just["i"] = l.just.i;
        just["j"] = l.just.j;
        break;
      case JustKind::Necessitation: just["i"] = l.just.i; break;
      case JustKind::UniformSub: {
        just["i"] = l.just.i;
        nlohmann::json s = nlohmann::json::object();
        for (const auto& [v, f] : l.just.sigma) s["p" + std::to_string(v)] = render(f);
        just["sigma"] = s;
        break;
      }
      case JustKind::Premise: break;
    }
    j["lines"].push_back({{"f", render(l.formula)}, {"j", just}});
  }
  return j.dump(2);
}

ProofDocument proof_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed proof JSON: ") + e.what());
  }
  ProofDocument doc;
  try {
    for (const auto& s : j.value("sigma", nlohmann::json::array())) {
      const std::string name = s.get<std::string>();
      if (name == "GL") {
        doc.sigma.add(Axiom::L);
        continue;
      }
      const Axiom a = axiom_from_name(name);
      if (is_base_axiom(a)) throw std::invalid_argument("base axiom " + name + " listed in sigma");
      doc.sigma.add(a);
    }
    for (const auto& g : j.value("gamma", nlohmann::json::array())) doc.gamma.push_back(parse(g.get<std::string>()));
    for (const auto& line : j.at("lines")) {
      const auto& js = line.at("j");
      const std::string kind = js.at("kind").get<std::string>();
      Justification just;
      if (kind == "Premise") {
        just = Justification::premise();
      } else if (kind == "SigmaAxiom") {
        just = Justification::sigma_axiom(axiom_from_name(js.at("ax").get<std::string>()));
      } else if (kind == "BaseAxiom") {
        just = Justification::base_axiom(axiom_from_name(js.at("ax").get<std::string>()));
      } else if (kind == "ModusPonens") {
        just = Justification::modus_ponens(js.at("i").get<std::size_t>(), js.at("j").get<std::size_t>());
      } else if (kind == "Necessitation") {
        just = Justification::necessitation(js.at("i").get<std::size_t>());
      } else if (kind == "UniformSub") {
        Substitution s;
        for (const auto& [key, value] : js.at("sigma").items()) {
          const Formula v = parse(key);
          if (!v.is_atom() || v.atom_value().kind != AtomKind::Var)
            throw std::invalid_argument("substitution key " + key + " is not a variable");
          s[v.atom_value().index] = parse(value.get<std::string>());
        }
        just = Justification::uniform_sub(js.at("i").get<std::size_t>(), std::move(s));
      } else {
        throw std::invalid_argument("unknown justification kind " + kind);
      }
      doc.proof.add(parse(line.at("f").get<std::string>()), std::move(just));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed proof JSON: ") + e.what());
  }
  return doc;
}

}  // namespace modal
