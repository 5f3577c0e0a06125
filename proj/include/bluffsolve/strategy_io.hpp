// Copyright 2026 The bluffsolve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLUFFSOLVE_STRATEGY_IO_HPP_
#define BLUFFSOLVE_STRATEGY_IO_HPP_

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "bluffsolve/strategy.hpp"

namespace bluffsolve {

// Malformed strategy text. `position` is a byte offset for syntax errors and
// an element path such as "breakpoints[1]" for semantic ones.
class StrategyParseError : public std::runtime_error {
 public:
  StrategyParseError(std::string position, std::string reason)
      : std::runtime_error(position + ": " + reason),
        position_(std::move(position)),
        reason_(std::move(reason)) {}

  const std::string& position() const { return position_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string position_;
  std::string reason_;
};

inline nlohmann::ordered_json to_json(const Strategy& s) {
  nlohmann::ordered_json j;
  j["breakpoints"] = std::vector<double>(s.breakpoints().begin(),
                                         s.breakpoints().end());
  j["high_prob"] =
      std::vector<double>(s.high_probs().begin(), s.high_probs().end());
  return j;
}

// Doubles are written in shortest round-trip form, so parsing the output
// reproduces every value bit for bit.
inline std::string serialize(const Strategy& s) { return to_json(s).dump(); }

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& root,
                                        const char* key) {
  auto it = root.find(key);
  if (it == root.end()) {
    throw StrategyParseError(key, "missing key");
  }
  if (!it->is_array()) {
    throw StrategyParseError(key, "expected an array of numbers");
  }
  std::vector<double> out;
  out.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& item = (*it)[i];
    if (!item.is_number()) {
      throw StrategyParseError(std::string(key) + "[" + std::to_string(i) + "]",
                               "expected a number");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace detail

inline Strategy strategy_from_json(const nlohmann::json& root) {
  if (!root.is_object()) {
    throw StrategyParseError("$", "expected an object");
  }
  std::vector<double> bps = detail::number_array(root, "breakpoints");
  std::vector<double> probs = detail::number_array(root, "high_prob");
  if (probs.size() != bps.size() + 1) {
    throw StrategyParseError(
        "high_prob", "expected " + std::to_string(bps.size() + 1) +
                         " entries for " + std::to_string(bps.size()) +
                         " breakpoints, got " + std::to_string(probs.size()));
  }
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const std::string where = "breakpoints[" + std::to_string(i) + "]";
    if (!(bps[i] > 0.0 && bps[i] < 1.0)) {
      throw StrategyParseError(where, "breakpoint must lie strictly inside (0, 1)");
    }
    if (i > 0 && !(bps[i] > bps[i - 1])) {
      throw StrategyParseError(where, "breakpoints must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw StrategyParseError("high_prob[" + std::to_string(i) + "]",
                               "probability must lie in [0, 1]");
    }
  }
  return Strategy(std::move(bps), std::move(probs));
}

inline Strategy deserialize(std::string_view text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StrategyParseError("byte " + std::to_string(e.byte), e.what());
  }
  return strategy_from_json(root);
}

namespace detail {

inline double parse_number(std::string_view spec, std::string_view field,
                           std::size_t offset) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw StrategyParseError(
        "byte " + std::to_string(offset),
        "expected a number, got '" + std::string(field) + "' in '" +
            std::string(spec) + "'");
  }
  return value;
}

}  // namespace detail

// Inline forms: "a-type", "b-type", "m-det:T", "threshold:T:P".
inline NamedStrategy parse_named_strategy(std::string_view spec) {
  std::vector<std::string_view> fields;
  std::vector<std::size_t> offsets;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    fields.push_back(spec.substr(start, colon - start));
    offsets.push_back(start);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view head = fields.front();
  auto arity = [&](std::size_t n, const char* usage) {
    if (fields.size() != n) {
      throw StrategyParseError("byte 0", "expected '" + std::string(usage) +
                                             "', got '" + std::string(spec) +
                                             "'");
    }
  };
  if (head == "a-type") {
    arity(1, "a-type");
    return AType{};
  }
  if (head == "b-type") {
    arity(1, "b-type");
    return BType{};
  }
  if (head == "m-det") {
    arity(2, "m-det:T");
    return MDeterministic{detail::parse_number(spec, fields[1], offsets[1])};
  }
  if (head == "threshold") {
    arity(3, "threshold:T:P");
    return ThresholdMix{detail::parse_number(spec, fields[1], offsets[1]),
                        detail::parse_number(spec, fields[2], offsets[2])};
  }
  throw StrategyParseError(
      "byte 0", "unknown strategy '" + std::string(head) +
                    "' (expected a-type, b-type, m-det:T or threshold:T:P)");
}

inline Strategy parse_strategy_spec(std::string_view spec) {
  try {
    return to_strategy(parse_named_strategy(spec));
  } catch (const StrategyError& e) {
    throw StrategyParseError("byte 0", e.what());
  }
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_STRATEGY_IO_HPP_
