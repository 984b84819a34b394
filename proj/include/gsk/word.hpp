#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsk/config.hpp"

namespace gsk {

struct GateToken {
  std::string label;  // net index, lattice point or generator name
  bool inverted = false;
  bool operator==(const GateToken&) const = default;
};

struct GateWord {
  std::vector<GateToken> tokens;
  std::size_t length() const { return tokens.size(); }
  bool operator==(const GateWord&) const = default;
};

GateWord inverse(const GateWord& w);
GateWord concat(std::initializer_list<const GateWord*> parts);

using TokenResolver = std::function<Mat(const std::string&)>;

// left-to-right product; inverted tokens use the symplectic inverse; n is the matrix size
Mat resolve(const GateWord& w, const TokenResolver& element, int n);

nlohmann::json word_to_json(const GateWord& w);
GateWord word_from_json(const nlohmann::json& j);

}  // namespace gsk
