#pragma once

#include <optional>
#include <vector>

#include "modal/formula.hpp"
#include "modal/oracle.hpp"

namespace modal {

// Exact K-satisfiability of a finite conjunction by a signed tableau. On
// success returns a finite tree model with the root as the witness world.
std::optional<Witness> k_tableau(const std::vector<Formula>& conjuncts);
bool k_consistent(const std::vector<Formula>& conjuncts);

}  // namespace modal
