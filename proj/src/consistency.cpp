#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "modal/canonical.hpp"
#include "modal/oracle.hpp"

namespace modal {

namespace {

const SigmaSpec kTB4D{Axiom::T, Axiom::B, Axiom::Four, Axiom::D};
const SigmaSpec kEuclidean{Axiom::T, Axiom::B, Axiom::Four, Axiom::Five, Axiom::D, Axiom::Dot2};

const CanonicalFamily& family_of(const CanonicalFormula& a) {
  return CanonicalFamily::get(a.level, a.n, std::numeric_limits<std::uint64_t>::max());
}

// Type elimination over C_{h,n} with the filtration relation of the sigma.
std::vector<bool> eliminate(const CanonicalFamily& F, const SigmaSpec& sigma) {
  const std::uint32_t size = F.size();
  std::vector<bool> alive(size, true);
  if (F.level() == 0) return alive;
  if (sigma.has(Axiom::T))
    for (std::uint32_t x = 0; x < size; ++x) alive[x] = (F.member(x).S >> F.truncate(x)) & 1ULL;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t x = 0; x < size; ++x) {
      if (!alive[x]) continue;
      std::uint64_t covered = 0;
      bool any = false;
      for (std::uint32_t y = 0; y < size; ++y) {
        if (!alive[y] || !elimination_edge(F, x, y, sigma)) continue;
        covered |= 1ULL << F.truncate(y);
        any = true;
      }
      const bool ok = (F.member(x).S & ~covered) == 0 && (!sigma.has(Axiom::D) || any);
      if (!ok) {
        alive[x] = false;
        changed = true;
      }
    }
  }
  return alive;
}

// Rooted Euclidean frames are a point seeing a subset of a cluster, a world of
// the cluster, or a dead end. The realised types are generated directly.
std::vector<bool> euclidean_types(const CanonicalFamily& F, const SigmaSpec& sigma) {
  const std::uint32_t size = F.size();
  std::vector<bool> ok(size, F.level() == 0);
  if (F.level() == 0) return ok;
  const std::uint32_t h = F.level();
  std::vector<const CanonicalFamily*> fams(h + 1);
  fams[h] = &F;
  for (std::uint32_t k = h; k > 0; --k) fams[k - 1] = &fams[k]->lower();
  const std::uint32_t masks = 1U << (F.n() + 1);
  const bool outside_allowed = !sigma.has(Axiom::T) && !sigma.has(Axiom::B);
  const bool dead_end_allowed = !sigma.has(Axiom::T) && !sigma.has(Axiom::D);
  if (dead_end_allowed)
    for (std::uint32_t t = 0; t < masks; ++t) ok[F.find(t, 0)] = true;
  for (std::uint32_t Q = 1; Q < (1U << masks); ++Q) {
    // type[k][t]: id in C_{k,n} of the cluster world with valuation t.
    std::vector<std::vector<std::uint32_t>> type(h + 1, std::vector<std::uint32_t>(masks, 0));
    for (std::uint32_t t = 0; t < masks; ++t) type[0][t] = t;
    for (std::uint32_t k = 1; k <= h; ++k) {
      std::uint64_t s = 0;
      for (std::uint32_t t = 0; t < masks; ++t)
        if ((Q >> t) & 1U) s |= 1ULL << type[k - 1][t];
      for (std::uint32_t t = 0; t < masks; ++t)
        if ((Q >> t) & 1U) type[k][t] = fams[k]->find(t, s);
    }
    for (std::uint32_t t = 0; t < masks; ++t)
      if ((Q >> t) & 1U) ok[type[h][t]] = true;
    if (!outside_allowed) continue;
    for (std::uint32_t A = Q; A != 0; A = (A - 1) & Q) {
      if (sigma.has(Axiom::Four) && A != Q) continue;
      std::uint64_t s = 0;
      for (std::uint32_t t = 0; t < masks; ++t)
        if ((A >> t) & 1U) s |= 1ULL << type[h - 1][t];
      for (std::uint32_t t = 0; t < masks; ++t) ok[F.find(t, s)] = true;
    }
  }
  return ok;
}

std::vector<bool> oracle_members(const CanonicalFamily& F, const SigmaSpec& sigma) {
  std::vector<bool> out(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x) out[x] = oracle_consistent(F.member(x), sigma, 4);
  return out;
}

}  // namespace

std::string route_name(ConsistencyRoute r) {
  switch (r) {
    case ConsistencyRoute::Structural: return "structural";
    case ConsistencyRoute::Elimination: return "elimination";
    case ConsistencyRoute::Cluster: return "cluster";
    case ConsistencyRoute::OracleBounded: return "oracle-bounded";
  }
  return "?";
}

ConsistencyRoute consistency_route(const SigmaSpec& sigma) {
  if (sigma.has(Axiom::L) && !sigma.is_gl()) throw std::invalid_argument("L combined with other axioms is unsupported");
  if (sigma.empty()) return ConsistencyRoute::Structural;
  if (sigma.is_gl() || sigma.subset_of(kTB4D)) return ConsistencyRoute::Elimination;
  if (sigma.has(Axiom::Five) && sigma.subset_of(kEuclidean)) return ConsistencyRoute::Cluster;
  return ConsistencyRoute::OracleBounded;
}

const std::vector<bool>& consistent_members(std::uint32_t h, std::uint32_t n, const SigmaSpec& sigma) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<std::vector<bool>>> cache;
  const auto key = std::make_tuple(h, n, sigma.bits());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  const CanonicalFamily& F = CanonicalFamily::get(h, n);
  std::vector<bool> result;
  switch (consistency_route(sigma)) {
    case ConsistencyRoute::Structural: result.assign(F.size(), true); break;
    case ConsistencyRoute::Elimination: result = eliminate(F, sigma); break;
    case ConsistencyRoute::Cluster: result = euclidean_types(F, sigma); break;
    case ConsistencyRoute::OracleBounded: result = oracle_members(F, sigma); break;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::make_unique<std::vector<bool>>(std::move(result)));
  return *it->second;
}

bool sigma_consistent(const CanonicalFormula& a, const SigmaSpec& sigma) {
  return consistent_members(a.level, a.n, sigma).at(a.id);
}

bool pipeline_consistent(const Formula& phi, const SigmaSpec& sigma, std::uint64_t cap) {
  const CanonicalFamily& F = CanonicalFamily::get(phi.height(), order(phi), cap);
  const auto& alive = consistent_members(F.level(), F.n(), sigma);
  const auto ext = canonical_extension(F, phi);
  for (std::uint32_t x = 0; x < F.size(); ++x)
    if (alive[x] && ext[x]) return true;
  return false;
}

bool oracle_consistent(const CanonicalFormula& a, const SigmaSpec& sigma, std::uint32_t max_worlds) {
  OracleConfig cfg;
  cfg.max_worlds = max_worlds;
  cfg.sigma = sigma;
  return oracle_satisfiable(render_canonical(a), cfg).has_value();
}

bool elimination_edge(const CanonicalFamily& F, std::uint32_t a, std::uint32_t b, const SigmaSpec& sigma) {
  const CanonicalFormula& x = F.member(a);
  const CanonicalFormula& y = F.member(b);
  if (!((x.S >> F.truncate(b)) & 1ULL)) return false;
  if (sigma.has(Axiom::B) && !((y.S >> F.truncate(a)) & 1ULL)) return false;
  if (sigma.has(Axiom::Four) || sigma.has(Axiom::L)) {
    if ((y.S & ~x.S) != 0) return false;
    if (sigma.has(Axiom::B) && (x.S & ~y.S) != 0) return false;
  }
  if (sigma.has(Axiom::L) && x.S == y.S) return false;
  return true;
}

bool diamond_consistent(const CanonicalFormula& a, const CanonicalFormula& b, const SigmaSpec& sigma) {
  if (a.level != b.level || a.n != b.n) throw std::invalid_argument("canonical formulas from different families");
  if (a.level == 0) throw std::invalid_argument("diamond consistency needs level at least 1");
  if (!sigma_consistent(a, sigma) || !sigma_consistent(b, sigma)) return false;
  const CanonicalFamily& F = family_of(a);
  if (sigma.is_gl()) {
    // In GL the successor need not be maximal, so only the K4 conditions apply.
    return ((a.S >> F.truncate(b.id)) & 1ULL) && (b.S & ~a.S) == 0;
  }
  if (!sigma.subset_of(kTB4D)) throw std::invalid_argument("diamond consistency unsupported for " + sigma.to_string());
  return elimination_edge(F, a.id, b.id, sigma);
}

}  // namespace modal
