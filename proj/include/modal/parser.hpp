#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "modal/formula.hpp"

namespace modal {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  [[nodiscard]] std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// formula := impl ; impl := disj ["->" impl] ; disj := conj {"|" conj}
// conj := neg {"&" neg} ; neg := {"!" | "[]" | "<>"} atomexpr
// atomexpr := "bot" | "p" digits | "c" digits | "(" formula ")"
Formula parse(std::string_view text);

// Sugar rules, tried in order on an implication X -> Y:
//   Y = bot and X = [](Z -> bot)         prints "<>Z"
//   Y = bot and X = A -> (B -> bot)      prints "A & B"
//   Y = bot                              prints "!X"
//   X = A -> bot                         prints "A | Y"
// Everything else prints "X -> Y". Hence top prints as "!bot".
std::string render(const Formula& f);

}  // namespace modal
