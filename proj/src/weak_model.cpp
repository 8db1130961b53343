#include "modal/weak_model.hpp"

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "modal/parser.hpp"

namespace modal {

namespace {

const SigmaSpec kTB4D{Axiom::T, Axiom::B, Axiom::Four, Axiom::D};

// Entailment tables over C_{level,n}, computed with canonical_decides.
struct Tables {
  std::vector<std::uint64_t> dia;      // bit xi: alpha entails <>xi
  std::vector<std::uint64_t> box_not;  // bit xi: alpha entails [](!xi)
  std::vector<std::uint32_t> proj;     // id of alpha' in C_{level-1,n}
};

const Tables& tables(const CanonicalFamily& F) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(F.level(), F.n());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const CanonicalFamily& low = F.lower();
  if (low.size() > 64) throw std::invalid_argument("entailment tables need at most 64 lower members");
  auto t = std::make_unique<Tables>();
  t->dia.assign(F.size(), 0);
  t->box_not.assign(F.size(), 0);
  for (std::uint32_t xi = 0; xi < low.size(); ++xi) {
    const auto d = canonical_extension(F, dia(low.rendered(xi)));
    const auto b = canonical_extension(F, Formula::box(neg(low.rendered(xi))));
    for (std::uint32_t a = 0; a < F.size(); ++a) {
      if (d[a]) t->dia[a] |= 1ULL << xi;
      if (b[a]) t->box_not[a] |= 1ULL << xi;
    }
  }
  t->proj.resize(F.size());
  for (std::uint32_t a = 0; a < F.size(); ++a) t->proj[a] = project(F.member(a)).id;
  auto& ref = *t;
  cache.emplace(key, std::move(t));
  return ref;
}

bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

bool related(WeakRelation r, const CanonicalFamily& F, const Tables& t, const SigmaSpec& sigma, std::uint32_t a,
             std::uint32_t b) {
  auto m = [&](std::uint32_t x, std::uint32_t y) {
    return ((t.dia[x] >> t.proj[y]) & 1ULL) && subset(t.dia[y], t.dia[x]);
  };
  switch (r) {
    case WeakRelation::C: return diamond_consistent(F.member(a), F.member(b), sigma);
    case WeakRelation::M: return m(a, b);
    case WeakRelation::MM: return m(a, b) && m(b, a);
    case WeakRelation::D: return m(a, b) && (t.dia[a] & t.box_not[b]) != 0;
    case WeakRelation::S: return m(a, b) && subset(t.dia[a], t.dia[b]);
  }
  return false;
}

struct Skeleton {
  std::vector<std::uint32_t> ids;
  Frame frame;
};

Skeleton make_skeleton(WeakRelation r, const CanonicalFamily& F, const SigmaSpec& sigma,
                       const std::vector<std::uint32_t>& ids) {
  const Tables& t = tables(F);
  Skeleton s{ids, Frame(static_cast<std::uint32_t>(ids.size()))};
  for (std::uint32_t a = 0; a < ids.size(); ++a)
    for (std::uint32_t b = 0; b < ids.size(); ++b)
      if (related(r, F, t, sigma, ids[a], ids[b])) s.frame.set_rel(a, b);
  return s;
}

const Skeleton& cached_skeleton(WeakRelation r, const CanonicalFamily& F, const SigmaSpec& sigma) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<Skeleton>> cache;
  const auto key = std::make_tuple(static_cast<int>(r), F.level(), F.n(), sigma.bits());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  const auto& alive = consistent_members(F.level(), F.n(), sigma);
  std::vector<std::uint32_t> ids;
  for (std::uint32_t x = 0; x < F.size(); ++x)
    if (alive[x]) ids.push_back(x);
  auto s = std::make_unique<Skeleton>(make_skeleton(r, F, sigma, ids));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(s));
  return *it->second;
}

WeakModel build(WeakRelation r, const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  const std::uint32_t h = opt.h.value_or(height(phi));
  const std::uint32_t n = opt.n.value_or(order(phi));
  if (!in_language(phi, h, n))
    throw std::invalid_argument("target lies outside L_{" + std::to_string(h) + "," + std::to_string(n) + "}");
  const CanonicalFamily& F = CanonicalFamily::get(h + 1, n, opt.cap);

  WeakModel m;
  m.target = phi;
  m.sigma = sigma;
  m.relation = r;
  m.world_set = opt.worlds;
  m.level = h + 1;
  m.n = n;
  m.closure = sub_formulas(phi);

  const auto entails = canonical_extension(F, phi);
  const auto& alive = consistent_members(F.level(), n, sigma);
  bool any = false;
  for (std::uint32_t x = 0; x < F.size() && !any; ++x) any = alive[x] && entails[x];
  if (!any) throw InconsistentTarget(render(phi) + " is " + sigma.to_string() + "-inconsistent");

  if (opt.worlds == WorldSet::Consistent) {
    const Skeleton& s = cached_skeleton(r, F, sigma);
    m.ids = s.ids;
    m.frame = s.frame;
  } else {
    std::vector<std::uint32_t> ids;
    for (std::uint32_t x = 0; x < F.size(); ++x)
      if (alive[x] && entails[x]) ids.push_back(x);
    Skeleton s = make_skeleton(r, F, sigma, ids);
    m.ids = std::move(s.ids);
    m.frame = std::move(s.frame);
  }

  for (const auto& psi : m.closure) {
    const auto ext = canonical_extension(F, psi);
    std::vector<bool> col(m.ids.size());
    for (std::size_t w = 0; w < m.ids.size(); ++w) col[w] = ext[m.ids[w]];
    m.val.emplace(psi, std::move(col));
  }
  return m;
}

}  // namespace

std::string relation_name(WeakRelation r) {
  switch (r) {
    case WeakRelation::C: return "c";
    case WeakRelation::M: return "m";
    case WeakRelation::MM: return "mm";
    case WeakRelation::D: return "d";
    case WeakRelation::S: return "s";
  }
  return "?";
}

std::vector<World> WeakModel::target_worlds() const {
  std::vector<World> out;
  const auto& col = val.at(target);
  for (World w = 0; w < col.size(); ++w)
    if (col[w]) out.push_back(w);
  return out;
}

AtomValuation WeakModel::atom_valuation() const {
  const CanonicalFamily& F = CanonicalFamily::get(level, n, std::numeric_limits<std::uint64_t>::max());
  AtomValuation v;
  for (std::uint32_t r = 0; r <= n; ++r) {
    std::vector<bool> col(ids.size());
    for (std::size_t w = 0; w < ids.size(); ++w) col[w] = (F.member(ids[w]).T >> r) & 1U;
    v.emplace(atom_of_rank(r), std::move(col));
  }
  return v;
}

KripkeModel WeakModel::kripke() const { return extend_valuation(frame, atom_valuation(), closure); }

Formula WeakModel::world_formula(World w) const {
  return CanonicalFamily::get(level, n, std::numeric_limits<std::uint64_t>::max()).rendered(ids.at(w));
}

WeakModel build_c_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  if (!sigma.is_gl() && !sigma.subset_of(kTB4D))
    throw UnsupportedSigma("c-model needs sigma within {T,B,4,D} or GL, got " + sigma.to_string());
  return build(WeakRelation::C, phi, sigma, opt);
}

WeakModel build_m_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  if (!(sigma.is_gl() || (sigma.has(Axiom::Four) && !sigma.has(Axiom::B) && sigma.subset_of(kTB4D))))
    throw UnsupportedSigma("m-model needs 4 in sigma, B absent, sigma within {T,4,D}, or GL; got " + sigma.to_string());
  return build(WeakRelation::M, phi, sigma, opt);
}

WeakModel build_mm_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  if (!sigma.has(Axiom::Four) || !sigma.has(Axiom::B) || !sigma.subset_of(kTB4D))
    throw UnsupportedSigma("mm-model needs 4 and B in sigma within {T,B,4,D}, got " + sigma.to_string());
  return build(WeakRelation::MM, phi, sigma, opt);
}

WeakModel build_d_model(const Formula& phi, const WeakModelOptions& opt) {
  return build(WeakRelation::D, phi, SigmaSpec::gl(), opt);
}

WeakModel build_s_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  if (!sigma.has(Axiom::Five) || sigma.has(Axiom::L))
    throw UnsupportedSigma("s-model needs 5 in sigma, got " + sigma.to_string());
  return build(WeakRelation::S, phi, sigma, opt);
}

WeakRelation dispatch_relation(const SigmaSpec& sigma) {
  if (sigma.is_gl()) return WeakRelation::D;
  if (!sigma.subset_of(kTB4D))
    throw UnsupportedSigma("no weak-model construction for " + sigma.to_string() + "; use the oracle");
  if (!sigma.has(Axiom::Four)) return WeakRelation::C;
  return sigma.has(Axiom::B) ? WeakRelation::MM : WeakRelation::M;
}

WeakModel build_weak_model(const Formula& phi, const SigmaSpec& sigma, const WeakModelOptions& opt) {
  switch (dispatch_relation(sigma)) {
    case WeakRelation::C: return build_c_model(phi, sigma, opt);
    case WeakRelation::M: return build_m_model(phi, sigma, opt);
    case WeakRelation::MM: return build_mm_model(phi, sigma, opt);
    case WeakRelation::D: return build_d_model(phi, opt);
    case WeakRelation::S: break;
  }
  throw std::logic_error("unreachable relation");
}

WeakModelReport verify_weak_model(const WeakModel& m, const Formula& phi, const SigmaSpec& sigma) {
  WeakModelReport r;
  const KripkeModel k = extend_valuation(m.frame, m.atom_valuation(), sub_formulas(phi));
  for (const auto& psi : sub_formulas(phi)) {
    auto it = m.val.find(psi);
    for (World w = 0; w < m.size(); ++w) {
      const bool want = k.value(w, psi);
      if (it == m.val.end() || it->second.at(w) != want) {
        r.clauses = false;
        r.failures.push_back({w, psi, it != m.val.end() && it->second.at(w), want});
      }
    }
  }
  auto it = m.val.find(phi);
  std::vector<World> targets;
  if (it != m.val.end())
    for (World w = 0; w < m.size(); ++w)
      if (it->second[w]) targets.push_back(w);
  r.target = !targets.empty();
  for (World w : targets) r.target = r.target && k.value(w, phi);
  r.appropriate = check_appropriate(m.frame, sigma);
  return r;
}

bool structural_m(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b) {
  const auto& x = F.member(a);
  const auto& y = F.member(b);
  return ((x.S >> F.truncate(b)) & 1ULL) && (y.S & ~x.S) == 0;
}

bool structural_d(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b) {
  return structural_m(F, a, b) && F.member(a).S != F.member(b).S;
}

bool structural_s(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b) {
  return structural_m(F, a, b) && F.member(a).S == F.member(b).S;
}

}  // namespace modal
