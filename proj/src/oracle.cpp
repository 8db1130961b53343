#include "modal/oracle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "bit_eval.hpp"

namespace modal {

namespace {

using detail::BitEvaluator;
using detail::SmallFrame;

Frame to_frame(const SmallFrame& s) {
  Frame f(s.k);
  for (std::uint32_t a = 0; a < s.k; ++a)
    for (std::uint32_t b = 0; b < s.k; ++b)
      if (s.r(a, b)) f.set_rel(a, b);
  return f;
}

// Cached list of appropriate frames per (sigma, k).
const std::vector<SmallFrame>& frames_of_size(const SigmaSpec& sigma, std::uint32_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<std::vector<SmallFrame>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(sigma.bits(), k);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  if (k == 0 || k > 8) throw std::invalid_argument("frame size out of range");
  if (k * k > 20) throw std::invalid_argument("exhaustive frame enumeration beyond 4 worlds is not supported");
  auto out = std::make_unique<std::vector<SmallFrame>>();
  const std::uint64_t count = 1ULL << (k * k);
  for (std::uint64_t r = 0; r < count; ++r) {
    SmallFrame s{k, r};
    if (check_appropriate(to_frame(s), sigma)) out->push_back(s);
  }
  auto& ref = *out;
  cache.emplace(key, std::move(out));
  return ref;
}

Witness make_witness(const SmallFrame& s, const std::vector<Atom>& atoms, std::uint64_t v, World w,
                     const std::vector<Formula>& formulas) {
  Frame f = to_frame(s);
  AtomValuation val;
  for (std::uint32_t j = 0; j < atoms.size(); ++j) {
    std::vector<bool> column(s.k);
    for (std::uint32_t x = 0; x < s.k; ++x) column[x] = BitEvaluator::atom_at(v, j, s.k, x);
    val.emplace(atoms[j], std::move(column));
  }
  return {make_model(f, val, formulas), w};
}

}  // namespace

void for_each_frame(const OracleConfig& cfg, const std::function<bool(const Frame&)>& fn) {
  for (std::uint32_t k = 1; k <= cfg.max_worlds; ++k)
    for (const auto& s : frames_of_size(cfg.sigma, k))
      if (!fn(to_frame(s))) return;
}

std::vector<Frame> enumerate_frames(const OracleConfig& cfg) {
  std::vector<Frame> out;
  for_each_frame(cfg, [&](const Frame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::uint64_t count_frames(const OracleConfig& cfg) {
  std::uint64_t n = 0;
  for (std::uint32_t k = 1; k <= cfg.max_worlds; ++k) n += frames_of_size(cfg.sigma, k).size();
  return n;
}

std::optional<Witness> oracle_satisfiable(const Formula& phi, const OracleConfig& cfg) {
  return oracle_satisfiable(std::vector<Formula>{phi}, cfg);
}

std::optional<Witness> oracle_satisfiable(const std::vector<Formula>& conjuncts, const OracleConfig& cfg) {
  if (cfg.max_worlds == 0) throw std::invalid_argument("max_worlds must be at least 1");
  const Formula target = conj_all(conjuncts);
  BitEvaluator ev({target});
  for (std::uint32_t k = 1; k <= cfg.max_worlds; ++k) {
    for (const auto& s : frames_of_size(cfg.sigma, k)) {
      std::optional<Witness> found;
      ev.run(s, [&](std::uint64_t start, std::uint64_t, std::uint64_t, const std::vector<std::uint64_t>& words) {
        if (words[0] == 0) return true;
        const auto bit = static_cast<std::uint32_t>(__builtin_ctzll(words[0]));
        const std::uint64_t v = start + bit / k;
        std::vector<Formula> closure = conjuncts;
        closure.push_back(target);
        found = make_witness(s, ev.atoms(), v, bit % k, closure);
        return false;
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

std::string OracleVerdict::label() const {
  if (!valid) return "invalid";
  return confidence == Confidence::Certified ? "valid (certified)" : "valid up to bound";
}

OracleVerdict oracle_valid(const Formula& phi, const OracleConfig& cfg) {
  OracleVerdict out;
  auto w = oracle_satisfiable(neg(phi), cfg);
  if (w) {
    out.valid = false;
    out.confidence = Confidence::Certified;
    out.countermodel = std::move(w);
    return out;
  }
  out.valid = true;
  out.confidence = cfg.completeness_bound && *cfg.completeness_bound <= cfg.max_worlds ? Confidence::Certified
                                                                                         : Confidence::UpToBound;
  return out;
}

}  // namespace modal
