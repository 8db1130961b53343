#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "modal/kripke.hpp"

namespace modal {

struct LoadedModel {
  Frame frame;
  AtomValuation val;
};

// {"worlds":[0,1],"rel":[[0,1]],"val":{"0":{"p0":false},"1":{"p0":true}}}
std::string model_to_json(const Frame& frame, const AtomValuation& val, std::optional<World> focus = std::nullopt);
// Worlds must be 0..k-1; missing valuation entries read as false. Throws
// std::invalid_argument on malformed input.
LoadedModel model_from_json(const std::string& text);

std::string model_to_dot(const Frame& frame, const AtomValuation& val, std::optional<World> focus = std::nullopt);

}  // namespace modal
