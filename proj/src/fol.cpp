#include "modal/fol.hpp"

#include <algorithm>
#include <unordered_map>

#include "modal/oracle.hpp"
#include "modal/parser.hpp"
#include "modal/weak_model.hpp"

namespace modal {

std::string Term::to_string() const { return is_var ? var : "w" + std::to_string(world); }

FolFormula FolFormula::pred(Atom a, Term t) {
  if (a.kind == AtomKind::Bottom) throw std::invalid_argument("bot has no predicate symbol");
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Pred, a, std::move(t), {}, {}, nullptr, nullptr}));
}

FolFormula FolFormula::rel(Term a, Term b) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Rel, Atom::bottom(), std::move(a), std::move(b), {}, nullptr, nullptr}));
}

FolFormula FolFormula::eq(Term a, Term b) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Eq, Atom::bottom(), std::move(a), std::move(b), {}, nullptr, nullptr}));
}

FolFormula FolFormula::bot() {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Bot, Atom::bottom(), {}, {}, {}, nullptr, nullptr}));
}

namespace {

std::shared_ptr<const FolFormula> share(FolFormula f) { return std::make_shared<const FolFormula>(std::move(f)); }

}  // namespace

FolFormula FolFormula::implies(FolFormula a, FolFormula b) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Implies, Atom::bottom(), {}, {}, {}, share(std::move(a)), share(std::move(b))}));
}

FolFormula FolFormula::negation(FolFormula a) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Not, Atom::bottom(), {}, {}, {}, share(std::move(a)), nullptr}));
}

FolFormula FolFormula::conj(FolFormula a, FolFormula b) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::And, Atom::bottom(), {}, {}, {}, share(std::move(a)), share(std::move(b))}));
}

FolFormula FolFormula::forall(std::string v, FolFormula body) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Forall, Atom::bottom(), {}, {}, std::move(v), share(std::move(body)), nullptr}));
}

FolFormula FolFormula::exists(std::string v, FolFormula body) {
  return FolFormula(std::make_shared<const Node>(Node{FolKind::Exists, Atom::bottom(), {}, {}, std::move(v), share(std::move(body)), nullptr}));
}

bool operator==(const FolFormula& x, const FolFormula& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case FolKind::Pred: return x.atom() == y.atom() && x.t1() == y.t1();
    case FolKind::Rel:
    case FolKind::Eq: return x.t1() == y.t1() && x.t2() == y.t2();
    case FolKind::Bot: return true;
    case FolKind::Implies:
    case FolKind::And: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    case FolKind::Not: return x.body() == y.body();
    case FolKind::Forall:
    case FolKind::Exists: return x.var() == y.var() && x.body() == y.body();
  }
  return false;
}

std::string predicate_name(Atom a) {
  switch (a.kind) {
    case AtomKind::Var: return "P" + std::to_string(a.index);
    case AtomKind::Const: return "Q" + std::to_string(a.index);
    case AtomKind::Bottom: break;
  }
  throw std::invalid_argument("bot has no predicate symbol");
}

namespace {

bool is_binary(FolKind k) { return k == FolKind::Implies || k == FolKind::And; }

std::string wrap(const FolFormula& f) {
  const std::string s = f.to_string();
  return is_binary(f.kind()) ? "(" + s + ")" : s;
}

}  // namespace

std::string FolFormula::to_string() const {
  switch (kind()) {
    case FolKind::Pred: return predicate_name(atom()) + "(" + t1().to_string() + ")";
    case FolKind::Rel: return "r(" + t1().to_string() + ", " + t2().to_string() + ")";
    case FolKind::Eq: return t1().to_string() + " = " + t2().to_string();
    case FolKind::Bot: return "bot";
    case FolKind::Implies:
      return (lhs().kind() == FolKind::Implies ? "(" + lhs().to_string() + ")" : lhs().to_string()) + " -> " +
             rhs().to_string();
    case FolKind::And: return (lhs().kind() == FolKind::And ? lhs().to_string() : wrap(lhs())) + " & " + wrap(rhs());
    case FolKind::Not: return "~" + wrap(body());
    case FolKind::Forall: return "forall " + var() + " " + wrap(body());
    case FolKind::Exists: return "exists " + var() + " " + wrap(body());
  }
  return "?";
}

std::set<std::string> FolFormula::free_variables() const {
  std::set<std::string> out;
  auto add = [&](const Term& t) {
    if (t.is_var) out.insert(t.var);
  };
  switch (kind()) {
    case FolKind::Pred: add(t1()); break;
    case FolKind::Rel:
    case FolKind::Eq:
      add(t1());
      add(t2());
      break;
    case FolKind::Bot: break;
    case FolKind::Implies:
    case FolKind::And:
      out = lhs().free_variables();
      for (const auto& v : rhs().free_variables()) out.insert(v);
      break;
    case FolKind::Not: out = body().free_variables(); break;
    case FolKind::Forall:
    case FolKind::Exists:
      out = body().free_variables();
      out.erase(var());
      break;
  }
  return out;
}

FolFormula frame_condition(Axiom a) {
  using F = FolFormula;
  const Term x = Term::variable("x"), y = Term::variable("y"), z = Term::variable("z"), w = Term::variable("w");
  switch (a) {
    case Axiom::T: return F::forall("x", F::rel(x, x));
    case Axiom::B: return F::forall("x", F::forall("y", F::implies(F::rel(x, y), F::rel(y, x))));
    case Axiom::Four:
      return F::forall("x", F::forall("y", F::forall("z", F::implies(F::conj(F::rel(x, y), F::rel(y, z)), F::rel(x, z)))));
    case Axiom::D: return F::forall("x", F::exists("y", F::rel(x, y)));
    case Axiom::Five:
      return F::forall("x", F::forall("y", F::forall("z", F::implies(F::conj(F::rel(x, y), F::rel(x, z)), F::rel(y, z)))));
    case Axiom::Dot2:
      return F::forall(
          "x", F::forall("y", F::forall("z", F::implies(F::conj(F::rel(x, y), F::rel(x, z)),
                                                         F::exists("w", F::conj(F::rel(y, w), F::rel(z, w)))))));
    default: break;
  }
  throw std::invalid_argument("no first-order frame condition for " + axiom_name(a));
}

std::vector<FolFormula> frame_conditions(const SigmaSpec& sigma) {
  std::vector<FolFormula> out;
  for (Axiom a : sigma.axioms()) out.push_back(frame_condition(a));
  return out;
}

namespace {

FolFormula st(const Formula& phi, const Term& x, std::uint32_t depth) {
  switch (phi.kind()) {
    case NodeKind::Atom:
      if (phi.is_bottom()) return FolFormula::bot();
      return FolFormula::pred(phi.atom_value(), x);
    case NodeKind::Implies: return FolFormula::implies(st(phi.lhs(), x, depth), st(phi.rhs(), x, depth));
    case NodeKind::Box: {
      const std::string y = "y_" + std::to_string(depth);
      const Term ty = Term::variable(y);
      return FolFormula::forall(y, FolFormula::implies(FolFormula::rel(x, ty), st(phi.body(), ty, depth + 1)));
    }
  }
  throw std::logic_error("unknown formula kind");
}

std::uint32_t first_fresh(const Term& x) {
  if (!x.is_var || x.var.size() < 3 || x.var.compare(0, 2, "y_") != 0) return 0;
  const std::string digits = x.var.substr(2);
  if (digits.find_first_not_of("0123456789") != std::string::npos) return 0;
  return static_cast<std::uint32_t>(std::stoul(digits)) + 1;
}

}  // namespace

FolFormula standard_translation(const Formula& phi, const Term& x) { return st(phi, x, first_fresh(x)); }

FolFormula standard_translation(const Formula& phi, const std::string& x) {
  if (x.empty()) throw std::invalid_argument("empty variable name");
  return standard_translation(phi, Term::variable(x));
}

FolFormula global_translation(const Formula& phi) { return FolFormula::forall("x", standard_translation(phi, "x")); }

namespace {

struct Evaluator {
  const FolStructure& s;
  std::set<World> dom;
  std::unordered_map<std::string, std::vector<World>> env;

  World value(const Term& t) {
    if (!t.is_var) {
      if (!dom.count(t.world)) throw FolError("world constant " + t.to_string() + " outside the domain");
      return t.world;
    }
    auto it = env.find(t.var);
    if (it == env.end() || it->second.empty()) throw FolError("free variable " + t.var);
    return it->second.back();
  }

  bool quantify(const FolFormula& f, bool universal) {
    auto& stack = env[f.var()];
    bool result = universal;
    for (World a : s.domain) {
      stack.push_back(a);
      const bool v = eval(f.body());
      env[f.var()].pop_back();
      if (v != universal) {
        result = !universal;
        break;
      }
    }
    return result;
  }

  bool eval(const FolFormula& f) {
    switch (f.kind()) {
      case FolKind::Pred: {
        auto it = s.preds.find(f.atom());
        if (it == s.preds.end()) throw FolError("uninterpreted predicate " + predicate_name(f.atom()));
        return it->second.count(value(f.t1())) != 0;
      }
      case FolKind::Rel: return s.rel.count({value(f.t1()), value(f.t2())}) != 0;
      case FolKind::Eq: return value(f.t1()) == value(f.t2());
      case FolKind::Bot: return false;
      case FolKind::Implies: return !eval(f.lhs()) || eval(f.rhs());
      case FolKind::Not: return !eval(f.body());
      case FolKind::And: return eval(f.lhs()) && eval(f.rhs());
      case FolKind::Forall: return quantify(f, true);
      case FolKind::Exists: return quantify(f, false);
    }
    return false;
  }
};

}  // namespace

bool eval_fol(const FolStructure& s, const FolFormula& sentence) {
  Evaluator ev{s, {s.domain.begin(), s.domain.end()}, {}};
  return ev.eval(sentence);
}

FolStructure kripke_to_fol(const Frame& frame, const AtomValuation& val) {
  FolStructure s;
  for (World w = 0; w < frame.size(); ++w) s.domain.push_back(w);
  for (const auto& e : frame.edges()) s.rel.insert(e);
  for (const auto& [atom, col] : val) {
    auto& ext = s.preds[atom];
    for (World w = 0; w < frame.size(); ++w)
      if (w < col.size() && col[w]) ext.insert(w);
  }
  return s;
}

FolStructure kripke_to_fol(const KripkeModel& m) { return kripke_to_fol(m.frame(), m.atom_val()); }

KripkeModel fol_to_kripke(const FolStructure& s, const std::vector<Atom>& atoms, const std::vector<Formula>& extra) {
  std::vector<World> dom = s.domain;
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  std::map<World, World> pos;
  for (std::size_t i = 0; i < dom.size(); ++i) pos.emplace(dom[i], static_cast<World>(i));
  std::vector<std::pair<World, World>> edges;
  for (const auto& [a, b] : s.rel) {
    if (!pos.count(a) || !pos.count(b)) throw FolError("relation pair outside the domain");
    edges.emplace_back(pos.at(a), pos.at(b));
  }
  Frame frame(static_cast<std::uint32_t>(dom.size()), edges);
  AtomValuation val;
  std::vector<Formula> closure = extra;
  for (const Atom& a : atoms) {
    auto it = s.preds.find(a);
    if (it == s.preds.end()) throw FolError("uninterpreted predicate " + predicate_name(a));
    std::vector<bool> col(dom.size(), false);
    for (World w : it->second)
      if (pos.count(w)) col[pos.at(w)] = true;
    val.emplace(a, std::move(col));
    closure.push_back(Formula::atom(a));
  }
  for (const Atom& a : atoms_of(extra))
    if (!val.count(a)) throw FolError("no predicate listed for " + atom_name(a));
  return make_model(frame, val, closure);
}

SrightfReport srightf_witness(const std::vector<Formula>& gamma0, const Formula& phi, const SigmaSpec& sigma) {
  const SigmaSpec tb4d{Axiom::T, Axiom::B, Axiom::Four, Axiom::D};
  if (!sigma.subset_of(tb4d)) throw std::invalid_argument("srightf witness needs sigma within {T,B,4,D}");
  const Formula target = conj(conj_all(gamma0), neg(phi));
  if (!pipeline_consistent(target, sigma))
    throw SrightfPrecondition("the pipeline proves " + render(conj_all(gamma0)) + " -> " + render(phi) + " in K" +
                              sigma.to_string());
  SrightfReport r;
  FolStructure s;
  try {
    const WeakModel m = build_weak_model(target, sigma);
    s = kripke_to_fol(m.frame, m.atom_valuation());
    r.worlds = m.size();
    r.target_world = m.target_worlds().front();
  } catch (const CapExceeded&) {
    OracleConfig cfg;
    cfg.max_worlds = 4;
    cfg.sigma = sigma;
    auto w = oracle_satisfiable(target, cfg);
    if (!w) throw;
    s = kripke_to_fol(w->model);
    r.source = "oracle";
    r.worlds = w->model.frame().size();
    r.target_world = w->world;
  }
  for (const auto& theta : gamma0) {
    if (!eval_fol(s, global_translation(theta))) {
      r.gamma_global = false;
      r.failures.push_back("forall x ST_x(" + render(theta) + ") fails");
    }
    if (!eval_fol(s, standard_translation(theta, Term::constant(r.target_world)))) r.local = false;
  }
  for (Axiom a : sigma.axioms()) {
    if (!eval_fol(s, frame_condition(a))) {
      r.conditions = false;
      r.failures.push_back("A(" + axiom_name(a) + ") fails");
    }
  }
  if (eval_fol(s, global_translation(phi))) {
    r.phi_refuted = false;
    r.failures.push_back("forall x ST_x(" + render(phi) + ") holds");
  }
  if (eval_fol(s, standard_translation(phi, Term::constant(r.target_world)))) r.local = false;
  return r;
}

}  // namespace modal
