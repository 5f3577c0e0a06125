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

#ifndef BLUFFSOLVE_STRATEGY_HPP_
#define BLUFFSOLVE_STRATEGY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bluffsolve/game.hpp"
#include "bluffsolve/random.hpp"

namespace bluffsolve {

class StrategyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A betting strategy: the probability of betting high as a piecewise-constant
// function of the holder's card value.
//
// Piece i covers [breakpoints[i-1], breakpoints[i]) with the conventions
// breakpoints[-1] = 0 and breakpoints[n] = 1; the last piece also contains 1.
// A card sitting exactly on a breakpoint uses the piece to its right, so a
// threshold card bets in the above-threshold regime.
class Strategy {
 public:
  // Always-low.
  Strategy() : high_prob_{0.0} {}

  Strategy(std::vector<double> breakpoints, std::vector<double> high_prob)
      : breakpoints_(std::move(breakpoints)), high_prob_(std::move(high_prob)) {
    validate();
  }

  static Strategy constant(double high_prob) {
    return Strategy({}, {high_prob});
  }

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> high_probs() const { return high_prob_; }
  std::size_t piece_count() const { return high_prob_.size(); }

  double piece_lower(std::size_t i) const {
    return i == 0 ? 0.0 : breakpoints_[i - 1];
  }
  double piece_upper(std::size_t i) const {
    return i == breakpoints_.size() ? 1.0 : breakpoints_[i];
  }
  double piece_length(std::size_t i) const {
    return piece_upper(i) - piece_lower(i);
  }
  double piece_prob(std::size_t i) const { return high_prob_[i]; }

  // Index of the piece holding card value v (v must already be in [0, 1]).
  std::size_t piece_index(double v) const {
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), v) -
        breakpoints_.begin());
  }

  double high_probability(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::out_of_range("card value outside [0, 1]: " +
                              std::to_string(v));
    }
    return high_prob_[piece_index(v)];
  }

  // High iff a uniform draw lands below h(v); h = 1 and h = 0 are exact.
  BetAction sample_action(double v, RandomStream& rng) const {
    return rng.uniform() < high_probability(v) ? BetAction::kHigh
                                                : BetAction::kLow;
  }

  // Unconditional probability of a high bet under uniform cards.
  double mean_high_probability() const {
    double total = 0.0;
    for (std::size_t i = 0; i < piece_count(); ++i) {
      total += high_prob_[i] * piece_length(i);
    }
    return total;
  }

  // Same function with adjacent equal pieces merged.
  Strategy coalesced() const {
    std::vector<double> bps;
    std::vector<double> probs{high_prob_.front()};
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (high_prob_[i + 1] != probs.back()) {
        bps.push_back(breakpoints_[i]);
        probs.push_back(high_prob_[i + 1]);
      }
    }
    return Strategy(std::move(bps), std::move(probs));
  }

  // Same function on a finer, strictly increasing interior grid that must
  // contain every existing breakpoint.
  Strategy on_grid(std::span<const double> grid) const {
    std::vector<double> probs;
    probs.reserve(grid.size() + 1);
    probs.push_back(high_prob_[piece_index(0.0)]);
    for (double x : grid) probs.push_back(high_prob_[piece_index(x)]);
    return Strategy(std::vector<double>(grid.begin(), grid.end()),
                    std::move(probs));
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  void validate() const {
    if (high_prob_.size() != breakpoints_.size() + 1) {
      throw StrategyError("strategy needs exactly one probability per piece (" +
                          std::to_string(breakpoints_.size() + 1) +
                          " expected, got " +
                          std::to_string(high_prob_.size()) + ")");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      const double x = breakpoints_[i];
      if (!(x > 0.0 && x < 1.0)) {
        throw StrategyError("breakpoint " + std::to_string(i) +
                            " is not inside (0, 1)");
      }
      if (i > 0 && !(x > breakpoints_[i - 1])) {
        throw StrategyError("breakpoint " + std::to_string(i) +
                            " is not strictly increasing");
      }
    }
    for (std::size_t i = 0; i < high_prob_.size(); ++i) {
      const double p = high_prob_[i];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw StrategyError("probability " + std::to_string(i) +
                            " is not inside [0, 1]");
      }
    }
  }

  std::vector<double> breakpoints_;
  std::vector<double> high_prob_;
};

// Named families.

// Always bets high.
struct AType {};
// Always bets low.
struct BType {};
// Low below the threshold, high at and above it.
struct MDeterministic {
  double threshold = 0.5;
};
// High with probability `bluff` below the threshold, always high at and
// above it.
struct ThresholdMix {
  double threshold = 0.5;
  double bluff = 1.0 / 3.0;
};

using NamedStrategy = std::variant<AType, BType, MDeterministic, ThresholdMix>;

namespace detail {
inline void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw StrategyError("threshold must lie in (0, 1), got " +
                        std::to_string(t));
  }
}
}  // namespace detail

inline Strategy to_strategy(const NamedStrategy& named) {
  struct Visitor {
    Strategy operator()(AType) const { return Strategy::constant(1.0); }
    Strategy operator()(BType) const { return Strategy::constant(0.0); }
    Strategy operator()(MDeterministic m) const {
      detail::check_threshold(m.threshold);
      return Strategy({m.threshold}, {0.0, 1.0});
    }
    Strategy operator()(ThresholdMix m) const {
      detail::check_threshold(m.threshold);
      return Strategy({m.threshold}, {m.bluff, 1.0});
    }
  };
  return std::visit(Visitor{}, named);
}

inline Strategy always_high() { return to_strategy(AType{}); }
inline Strategy always_low() { return to_strategy(BType{}); }
inline Strategy deterministic_threshold(double t) {
  return to_strategy(MDeterministic{t});
}
inline Strategy threshold_mix(double t, double p) {
  return to_strategy(ThresholdMix{t, p});
}

// Sorted union of the breakpoints of both strategies.
inline std::vector<double> merged_breakpoints(const Strategy& s1,
                                              const Strategy& s2) {
  std::vector<double> grid;
  grid.reserve(s1.breakpoints().size() + s2.breakpoints().size());
  std::set_union(s1.breakpoints().begin(), s1.breakpoints().end(),
                 s2.breakpoints().begin(), s2.breakpoints().end(),
                 std::back_inserter(grid));
  return grid;
}

// Re-expresses both strategies on their common breakpoint grid.
inline std::pair<Strategy, Strategy> refine(const Strategy& s1,
                                            const Strategy& s2) {
  const std::vector<double> grid = merged_breakpoints(s1, s2);
  return {s1.on_grid(grid), s2.on_grid(grid)};
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_STRATEGY_HPP_
