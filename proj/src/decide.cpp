#include "modal/decide.hpp"

#include "modal/weak_model.hpp"

namespace modal {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid";
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
  }
  return "?";
}

std::string route_name(Route r) {
  switch (r) {
    case Route::CanonicalPipeline: return "canonical-pipeline";
    case Route::Oracle: return "oracle";
    case Route::OracleBounded: return "oracle-bounded";
  }
  return "?";
}

bool affirmative(Verdict v) { return v == Verdict::Valid || v == Verdict::Consistent; }

namespace {

bool pipeline_applies(const SigmaSpec& sigma) {
  const SigmaSpec tb4d{Axiom::T, Axiom::B, Axiom::Four, Axiom::D};
  return sigma.is_gl() || sigma.subset_of(tb4d);
}

// Model of a consistent target: the weak model when it fits the cap, else
// the first oracle witness.
void attach_witness(DecisionReport& r, const Formula& target, const SigmaSpec& sigma, const DecideOptions& opt) {
  try {
    WeakModelOptions wopt;
    wopt.cap = opt.cap;
    const WeakModel m = build_weak_model(target, sigma, wopt);
    r.witness = Witness{m.kripke(), m.target_worlds().front()};
    r.witness_source = "weak-model";
    return;
  } catch (const CapExceeded&) {
  }
  OracleConfig cfg;
  cfg.max_worlds = opt.max_worlds;
  cfg.sigma = sigma;
  r.witness = oracle_satisfiable(target, cfg);
  if (r.witness) r.witness_source = "oracle";
}

}  // namespace

DecisionReport cmd_decide(const Formula& phi, const SigmaSpec& sigma, const DecideOptions& opt) {
  consistency_route(sigma);
  const bool validity = opt.mode == DecideMode::Validity;
  const Formula target = validity ? neg(phi) : phi;
  DecisionReport r;
  r.cap = opt.cap;
  r.max_worlds = opt.max_worlds;
  if (pipeline_applies(sigma)) {
    try {
      const bool consistent = pipeline_consistent(target, sigma, opt.cap);
      r.route = Route::CanonicalPipeline;
      if (validity)
        r.verdict = consistent ? Verdict::Invalid : Verdict::Valid;
      else
        r.verdict = consistent ? Verdict::Consistent : Verdict::Inconsistent;
      if (consistent) attach_witness(r, target, sigma, opt);
      return r;
    } catch (const CapExceeded&) {
    }
  }
  OracleConfig cfg;
  cfg.max_worlds = opt.max_worlds;
  cfg.sigma = sigma;
  r.witness = oracle_satisfiable(target, cfg);
  if (r.witness) {
    r.route = Route::Oracle;
    r.witness_source = "oracle";
    r.verdict = validity ? Verdict::Invalid : Verdict::Consistent;
  } else {
    r.route = Route::OracleBounded;
    r.verdict = validity ? Verdict::Valid : Verdict::Inconsistent;
  }
  return r;
}

}  // namespace modal
