#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "modal/canonical.hpp"
#include "modal/decide.hpp"
#include "modal/fol.hpp"
#include "modal/model_io.hpp"
#include "modal/oracle.hpp"
#include "modal/parser.hpp"
#include "modal/proof.hpp"
#include "modal/weak_model.hpp"

using namespace modal;

namespace {

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Common {
  std::string phi;
  std::string sigma;
  bool gl = false;
  std::string emit;
  std::uint32_t max_worlds = 4;
};

SigmaSpec sigma_of(const Common& c) {
  if (c.gl && !c.sigma.empty()) throw std::invalid_argument("--gl and --sigma are exclusive");
  return c.gl ? SigmaSpec::gl() : SigmaSpec::parse(c.sigma);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_model(std::ostream& out, const std::string& format, const Frame& f, const AtomValuation& val,
                std::optional<World> focus) {
  if (format == "dot")
    out << model_to_dot(f, val, focus);
  else
    out << model_to_json(f, val, focus) << "\n";
}

int cmd_parse(const Common& c, std::uint32_t random, std::uint32_t depth, std::uint64_t seed) {
  std::ostringstream out;
  if (random > 0) {
    std::mt19937_64 rng(seed);
    for (std::uint32_t i = 0; i < random; ++i) out << render(random_formula(rng, depth, 2)) << "\n";
  } else {
    const Formula f = parse(c.phi);
    out << render(f) << "\nheight: " << f.height() << "\norder: " << order(f) << "\nsize: " << f.size() << "\n";
  }
  std::cout << out.str();
  return kAffirmative;
}

int run_decide(const Common& c, const std::string& mode) {
  const Formula f = parse(c.phi);
  DecideOptions opt;
  opt.mode = mode == "sat" ? DecideMode::Consistency : DecideMode::Validity;
  opt.max_worlds = c.max_worlds;
  const DecisionReport r = cmd_decide(f, sigma_of(c), opt);
  std::ostringstream out;
  out << "verdict: " << verdict_name(r.verdict) << "\nroute: " << route_name(r.route)
      << "\ncertified: " << (r.certified() ? "yes" : "no (up to " + std::to_string(r.max_worlds) + " worlds)")
      << "\nbounds: cap=" << r.cap << " max-worlds=" << r.max_worlds << "\n";
  if (r.witness) {
    out << "witness: " << r.witness_source << ", world " << r.witness->world << ", "
        << r.witness->model.frame().size() << " worlds\n";
    if (!c.emit.empty())
      emit_model(out, c.emit, r.witness->model.frame(), r.witness->model.atom_val(), r.witness->world);
  }
  std::cout << out.str();
  return affirmative(r.verdict) ? kAffirmative : kNegative;
}

int run_model(const Common& c, const std::string& relation, std::optional<std::uint32_t> h,
              std::optional<std::uint32_t> n) {
  const Formula f = parse(c.phi);
  const SigmaSpec sigma = sigma_of(c);
  WeakModelOptions opt;
  opt.h = h;
  opt.n = n;
  std::optional<WeakModel> m;
  try {
    if (relation == "auto") m = build_weak_model(f, sigma, opt);
    else if (relation == "c") m = build_c_model(f, sigma, opt);
    else if (relation == "m") m = build_m_model(f, sigma, opt);
    else if (relation == "mm") m = build_mm_model(f, sigma, opt);
    else if (relation == "d") m = build_d_model(f, opt);
    else m = build_s_model(f, sigma, opt);
  } catch (const InconsistentTarget& e) {
    std::cout << "inconsistent: " << e.what() << "\n";
    return kNegative;
  }
  const WeakModelReport rep = verify_weak_model(*m, f, sigma);
  std::ostringstream out;
  emit_model(out, c.emit.empty() ? "json" : c.emit, m->frame, m->atom_valuation(), m->target_worlds().front());
  std::cout << out.str();
  if (!rep.ok()) {
    std::cerr << "warning: the " << relation_name(m->relation) << "-model fails verification ("
              << rep.failures.size() << " clause failures)\n";
    return kNegative;
  }
  return kAffirmative;
}

int run_canonical(std::uint32_t h, std::uint32_t n, bool count, const std::string& sigma_text, bool consistent) {
  const CanonicalFamily& F = CanonicalFamily::get(h, n);
  const SigmaSpec sigma = SigmaSpec::parse(sigma_text);
  const std::vector<bool>* alive = consistent ? &consistent_members(h, n, sigma) : nullptr;
  std::ostringstream out;
  if (count) {
    std::uint32_t k = 0;
    for (std::uint32_t x = 0; x < F.size(); ++x) k += alive == nullptr || (*alive)[x];
    out << k << "\n";
  } else {
    for (std::uint32_t x = 0; x < F.size(); ++x)
      if (alive == nullptr || (*alive)[x]) out << x << "\t" << render(F.rendered(x)) << "\n";
  }
  std::cout << out.str();
  return kAffirmative;
}

int run_translate(const Common& c, const std::string& var, bool conditions) {
  std::ostringstream out;
  if (conditions) {
    for (Axiom a : sigma_of(c).axioms()) out << axiom_name(a) << ": " << frame_condition(a).to_string() << "\n";
  } else {
    out << standard_translation(parse(c.phi), var).to_string() << "\n";
  }
  std::cout << out.str();
  return kAffirmative;
}

int run_prove_check(const std::string& path, const std::string& phi) {
  const ProofDocument doc = proof_from_json(read_file(path));
  const ProofVerdict v = phi.empty() ? check_proof(doc.sigma, doc.gamma, doc.proof)
                                     : check_provability_certificate(doc.sigma, doc.gamma, parse(phi), doc.proof);
  if (v.ok) {
    std::cout << "accepted: " << render(doc.proof.conclusion()) << "\n";
    return kAffirmative;
  }
  std::cout << "rejected";
  if (v.line) std::cout << " at line " << *v.line;
  std::cout << " (" << v.clause << "): " << v.message << "\n";
  return kNegative;
}

int run_oracle(const Common& c, const std::string& mode) {
  const Formula f = parse(c.phi);
  OracleConfig cfg;
  cfg.max_worlds = c.max_worlds;
  cfg.sigma = sigma_of(c);
  std::ostringstream out;
  int code = kAffirmative;
  if (mode == "sat") {
    auto w = oracle_satisfiable(f, cfg);
    out << (w ? "satisfiable" : "unsatisfiable up to bound") << "\n";
    if (w && !c.emit.empty()) emit_model(out, c.emit, w->model.frame(), w->model.atom_val(), w->world);
    code = w ? kAffirmative : kNegative;
  } else {
    const OracleVerdict v = oracle_valid(f, cfg);
    out << v.label() << "\n";
    if (v.countermodel && !c.emit.empty())
      emit_model(out, c.emit, v.countermodel->model.frame(), v.countermodel->model.atom_val(), v.countermodel->world);
    code = v.valid ? kAffirmative : kNegative;
  }
  std::cout << out.str();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modal logic toolkit: canonical formulas, weak models and decision procedures"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized generation");

  Common c;
  auto add_phi = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--phi", c.phi, "Formula");
    if (required) o->required();
  };
  auto add_sigma = [&](CLI::App* sub) {
    sub->add_option("--sigma", c.sigma, "Comma list from T,B,4,5,D,.2");
    sub->add_flag("--gl", c.gl, "Use GL");
  };
  auto add_emit = [&](CLI::App* sub) {
    sub->add_option("--emit", c.emit, "Model output format")->check(CLI::IsMember({"json", "dot"}));
  };

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  std::uint32_t random = 0, depth = 4;
  add_phi(parse_cmd, false);
  parse_cmd->add_option("--random", random, "Print this many random formulas instead");
  parse_cmd->add_option("--depth", depth, "Depth of random formulas");

  std::string mode = "valid";
  auto* decide = app.add_subcommand("decide", "Decide validity or consistency");
  add_phi(decide, true);
  add_sigma(decide);
  add_emit(decide);
  decide->add_option("--mode", mode, "valid or sat")->check(CLI::IsMember({"valid", "sat"}));
  decide->add_option("--max-worlds", c.max_worlds, "Oracle bound");

  std::string relation = "auto";
  std::optional<std::uint32_t> h, n;
  auto* model = app.add_subcommand("model", "Build and emit the weak model of a formula");
  model->set_help_flag("--help", "Print this help message and exit");
  add_phi(model, true);
  add_sigma(model);
  add_emit(model);
  model->add_option("--relation", relation, "auto, c, m, mm, d or s")
      ->check(CLI::IsMember({"auto", "c", "m", "mm", "d", "s"}));
  model->add_option("--h", h, "Height override");
  model->add_option("--n", n, "Order override");

  std::uint32_t ch = 0, cn = 0;
  bool count = false, consistent = false;
  std::string csigma;
  auto* canonical = app.add_subcommand("canonical", "Enumerate C_{h,n}");
  canonical->set_help_flag("--help", "Print this help message and exit");
  canonical->add_option("--h", ch, "Height")->required();
  canonical->add_option("--n", cn, "Order")->required();
  canonical->add_flag("--count", count, "Print the member count only");
  canonical->add_option("--sigma", csigma, "Sigma for --consistent");
  canonical->add_flag("--consistent", consistent, "Only sigma-consistent members");

  std::string var = "x";
  bool conditions = false;
  auto* translate = app.add_subcommand("translate", "Standard translation or frame conditions");
  add_phi(translate, false);
  add_sigma(translate);
  translate->add_option("--var", var, "Free variable of the translation");
  translate->add_flag("--conditions", conditions, "Print A(psi) for each axiom of --sigma");

  std::string proof_path, cert_phi;
  auto* prove = app.add_subcommand("prove-check", "Check a Hilbert proof document");
  prove->add_option("--proof", proof_path, "Proof JSON file")->required();
  prove->add_option("--phi", cert_phi, "Check as a provability certificate for this formula");

  auto* oracle = app.add_subcommand("oracle", "Bounded frame search");
  add_phi(oracle, true);
  add_sigma(oracle);
  add_emit(oracle);
  oracle->add_option("--mode", mode, "valid or sat")->check(CLI::IsMember({"valid", "sat"}));
  oracle->add_option("--max-worlds", c.max_worlds, "Largest frame size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*parse_cmd) {
      if (random == 0 && c.phi.empty()) throw std::invalid_argument("parse needs --phi or --random");
      return cmd_parse(c, random, depth, seed);
    }
    if (*decide) return run_decide(c, mode);
    if (*model) return run_model(c, relation, h, n);
    if (*canonical) return run_canonical(ch, cn, count, csigma, consistent);
    if (*translate) {
      if (!conditions && c.phi.empty()) throw std::invalid_argument("translate needs --phi or --conditions");
      return run_translate(c, var, conditions);
    }
    if (*prove) return run_prove_check(proof_path, cert_phi);
    if (*oracle) return run_oracle(c, mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
