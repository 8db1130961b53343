#include "modal/kripke.hpp"

#include <stdexcept>
#include <unordered_set>

#include "bit_eval.hpp"
#include "modal/oracle.hpp"

namespace modal {

Frame::Frame(std::uint32_t n, const std::vector<std::pair<World, World>>& edges) : Frame(n) {
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::invalid_argument("edge endpoint outside the frame");
    set_rel(a, b);
  }
}

std::vector<World> Frame::successors(World w) const {
  std::vector<World> out;
  for (World u = 0; u < n_; ++u)
    if (rel(w, u)) out.push_back(u);
  return out;
}

std::vector<std::pair<World, World>> Frame::edges() const {
  std::vector<std::pair<World, World>> out;
  for (World a = 0; a < n_; ++a)
    for (World b = 0; b < n_; ++b)
      if (rel(a, b)) out.emplace_back(a, b);
  return out;
}

bool is_reflexive(const Frame& f) {
  for (World w = 0; w < f.size(); ++w)
    if (!f.rel(w, w)) return false;
  return true;
}

bool is_irreflexive(const Frame& f) {
  for (World w = 0; w < f.size(); ++w)
    if (f.rel(w, w)) return false;
  return true;
}

bool is_symmetric(const Frame& f) {
  for (World a = 0; a < f.size(); ++a)
    for (World b = 0; b < f.size(); ++b)
      if (f.rel(a, b) && !f.rel(b, a)) return false;
  return true;
}

bool is_transitive(const Frame& f) {
  const World n = f.size();
  for (World a = 0; a < n; ++a)
    for (World b = 0; b < n; ++b)
      if (f.rel(a, b))
        for (World c = 0; c < n; ++c)
          if (f.rel(b, c) && !f.rel(a, c)) return false;
  return true;
}

bool is_euclidean(const Frame& f) {
  const World n = f.size();
  for (World w = 0; w < n; ++w)
    for (World u = 0; u < n; ++u)
      if (f.rel(w, u))
        for (World v = 0; v < n; ++v)
          if (f.rel(w, v) && !f.rel(u, v)) return false;
  return true;
}

bool is_serial(const Frame& f) {
  for (World w = 0; w < f.size(); ++w) {
    bool any = false;
    for (World u = 0; u < f.size() && !any; ++u) any = f.rel(w, u);
    if (!any) return false;
  }
  return true;
}

bool is_directed(const Frame& f) {
  const World n = f.size();
  for (World w = 0; w < n; ++w)
    for (World u = 0; u < n; ++u) {
      if (!f.rel(w, u)) continue;
      for (World v = 0; v < n; ++v) {
        if (!f.rel(w, v)) continue;
        bool joined = false;
        for (World s = 0; s < n && !joined; ++s) joined = f.rel(u, s) && f.rel(v, s);
        if (!joined) return false;
      }
    }
  return true;
}

bool is_cwf(const Frame& f) {
  // Kahn-style peeling: repeatedly drop worlds with no remaining successor.
  const World n = f.size();
  std::vector<bool> alive(n, true);
  bool changed = true;
  World remaining = n;
  while (changed) {
    changed = false;
    for (World w = 0; w < n; ++w) {
      if (!alive[w]) continue;
      bool has_succ = false;
      for (World u = 0; u < n && !has_succ; ++u) has_succ = alive[u] && f.rel(w, u);
      if (!has_succ) {
        alive[w] = false;
        --remaining;
        changed = true;
      }
    }
  }
  return remaining == 0;
}

bool satisfies_axiom_property(const Frame& f, Axiom a) {
  switch (a) {
    case Axiom::T: return is_reflexive(f);
    case Axiom::B: return is_symmetric(f);
    case Axiom::Four: return is_transitive(f);
    case Axiom::Five: return is_euclidean(f);
    case Axiom::D: return is_serial(f);
    case Axiom::Dot2: return is_directed(f);
    case Axiom::L: return is_transitive(f) && is_cwf(f);
    default: return true;
  }
}

bool check_appropriate(const Frame& f, const SigmaSpec& sigma) {
  for (Axiom a : sigma.axioms())
    if (!satisfies_axiom_property(f, a)) return false;
  return true;
}

bool KripkeModel::value(World w, const Formula& f) const { return table_.at(f).at(w); }

bool is_subformula_closed(const std::vector<Formula>& closure) {
  std::unordered_set<Formula> s(closure.begin(), closure.end());
  for (const auto& f : closure) {
    if (f.is_implies() && (!s.count(f.lhs()) || !s.count(f.rhs()))) return false;
    if (f.is_box() && !s.count(f.body())) return false;
  }
  return true;
}

KripkeModel extend_valuation(const Frame& frame, const AtomValuation& atom_val, const std::vector<Formula>& closure) {
  if (!is_subformula_closed(closure)) throw std::invalid_argument("closure is not subformula-closed");
  const World n = frame.size();
  std::unordered_map<Formula, std::vector<bool>> table;
  std::vector<std::vector<World>> succ(n);
  for (World w = 0; w < n; ++w) succ[w] = frame.successors(w);
  // Children-first order so every part is tabulated before its parent.
  for (const auto& f : sub_formulas(closure)) {
    std::vector<bool> col(n, false);
    if (f.is_atom()) {
      if (!f.is_bottom()) {
        auto it = atom_val.find(f.atom_value());
        if (it == atom_val.end() || it->second.size() < n)
          throw std::invalid_argument("no valuation for atom " + atom_name(f.atom_value()));
        for (World w = 0; w < n; ++w) col[w] = it->second[w];
      }
    } else if (f.is_implies()) {
      const auto& a = table.at(f.lhs());
      const auto& b = table.at(f.rhs());
      for (World w = 0; w < n; ++w) col[w] = !a[w] || b[w];
    } else {
      const auto& b = table.at(f.body());
      for (World w = 0; w < n; ++w) {
        bool all = true;
        for (World u : succ[w]) all = all && b[u];
        col[w] = all;
      }
    }
    table.emplace(f, std::move(col));
  }
  return KripkeModel(frame, atom_val, closure, std::move(table));
}

KripkeModel make_model(const Frame& frame, const AtomValuation& atom_val, const std::vector<Formula>& formulas) {
  return extend_valuation(frame, atom_val, sub_formulas(formulas));
}

bool eval(const KripkeModel& m, World w, const Formula& f) {
  if (!m.in_closure(f)) throw std::out_of_range("formula outside the model closure");
  if (w >= m.frame().size()) throw std::out_of_range("world outside the frame");
  return m.value(w, f);
}

bool eval_recursive(const Frame& frame, const AtomValuation& atom_val, World w, const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Atom:
      if (f.is_bottom()) return false;
      return atom_val.at(f.atom_value()).at(w);
    case NodeKind::Implies:
      return !eval_recursive(frame, atom_val, w, f.lhs()) || eval_recursive(frame, atom_val, w, f.rhs());
    case NodeKind::Box:
      for (World u = 0; u < frame.size(); ++u)
        if (frame.rel(w, u) && !eval_recursive(frame, atom_val, u, f.body())) return false;
      return true;
  }
  return false;
}

bool forces_everywhere(const KripkeModel& m, const Formula& f) {
  for (World w = 0; w < m.frame().size(); ++w)
    if (!eval(m, w, f)) return false;
  return true;
}

namespace {

detail::SmallFrame to_small(const Frame& f) {
  if (f.size() > 8) throw std::invalid_argument("frame too large for exhaustive valuation sweep");
  detail::SmallFrame s{f.size(), 0};
  for (World a = 0; a < f.size(); ++a)
    for (World b = 0; b < f.size(); ++b)
      if (f.rel(a, b)) s.rel |= 1ULL << (a * f.size() + b);
  return s;
}

}  // namespace

bool frame_forces(const Frame& frame, const Formula& f) {
  detail::BitEvaluator ev({f});
  bool ok = true;
  ev.run(to_small(frame), [&](std::uint64_t, std::uint64_t, std::uint64_t valid, const std::vector<std::uint64_t>& w) {
    ok = (w[0] & valid) == valid;
    return ok;
  });
  return ok;
}

bool gamma_forces(const Frame& frame, const std::vector<Formula>& gamma) {
  for (const auto& g : gamma)
    if (!frame_forces(frame, g)) return false;
  return true;
}

bool consequence_holds(const std::vector<Formula>& gamma, const Formula& phi, const SigmaSpec& sigma,
                       std::uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be at least 1");
  OracleConfig cfg;
  cfg.max_worlds = bound;
  cfg.sigma = sigma;
  bool ok = true;
  for_each_frame(cfg, [&](const Frame& f) {
    if (gamma_forces(f, gamma) && !frame_forces(f, phi)) ok = false;
    return ok;
  });
  return ok;
}

}  // namespace modal
