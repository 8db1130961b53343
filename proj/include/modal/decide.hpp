#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "modal/canonical.hpp"
#include "modal/oracle.hpp"
#include "modal/sigma.hpp"

namespace modal {

enum class Verdict { Valid, Invalid, Consistent, Inconsistent };
enum class Route { CanonicalPipeline, Oracle, OracleBounded };
enum class DecideMode { Validity, Consistency };

std::string verdict_name(Verdict v);
std::string route_name(Route r);
// True for valid and consistent.
bool affirmative(Verdict v);

struct DecideOptions {
  DecideMode mode = DecideMode::Validity;
  std::uint32_t max_worlds = 4;
  std::uint64_t cap = kDefaultCanonicalCap;
};

struct DecisionReport {
  Verdict verdict = Verdict::Valid;
  Route route = Route::CanonicalPipeline;
  // Model of phi (consistent) or of !phi (invalid), with the focus world.
  std::optional<Witness> witness;
  // "weak-model" or "oracle".
  std::string witness_source;
  std::uint64_t cap = kDefaultCanonicalCap;
  std::uint32_t max_worlds = 4;
  [[nodiscard]] bool certified() const { return route != Route::OracleBounded; }
};

// Canonical pipeline for sigma within {T,B,4,D} or GL when C_{h,n} fits the
// cap; bounded oracle otherwise. Throws std::invalid_argument for L mixed
// with other axioms.
DecisionReport cmd_decide(const Formula& phi, const SigmaSpec& sigma, const DecideOptions& opt = {});

}  // namespace modal
