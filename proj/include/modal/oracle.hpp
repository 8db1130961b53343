#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/sigma.hpp"

namespace modal {

struct OracleConfig {
  std::uint32_t max_worlds = 4;
  SigmaSpec sigma;
  // Frame size known to suffice for the query, when one is known.
  std::optional<std::uint32_t> completeness_bound;
};

// All sigma-appropriate frames on worlds 0..k-1 for k = 1..max_worlds. Order:
// by k, then by the relation read as a k*k-bit number (bit a*k+b is aRb).
std::vector<Frame> enumerate_frames(const OracleConfig& cfg);
std::uint64_t count_frames(const OracleConfig& cfg);

struct Witness {
  KripkeModel model;
  World world = 0;
};

// First witness in enumeration order (frame, then valuation, then world).
std::optional<Witness> oracle_satisfiable(const Formula& phi, const OracleConfig& cfg);
std::optional<Witness> oracle_satisfiable(const std::vector<Formula>& conjuncts, const OracleConfig& cfg);

enum class Confidence { Certified, UpToBound };

struct OracleVerdict {
  bool valid = false;
  Confidence confidence = Confidence::UpToBound;
  std::optional<Witness> countermodel;
  [[nodiscard]] std::string label() const;
};

OracleVerdict oracle_valid(const Formula& phi, const OracleConfig& cfg);

// Visits every sigma-appropriate frame up to the bound; stops when fn returns false.
void for_each_frame(const OracleConfig& cfg, const std::function<bool(const Frame&)>& fn);

}  // namespace modal
