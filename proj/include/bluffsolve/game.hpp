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

#ifndef BLUFFSOLVE_GAME_HPP_
#define BLUFFSOLVE_GAME_HPP_

#include <stdexcept>
#include <string>

namespace bluffsolve {

// Thrown for configurations that break the betting or deck invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BetAction { kLow, kHigh };

inline const char* to_string(BetAction action) {
  return action == BetAction::kHigh ? "high" : "low";
}

// A private card. Values live in [0, 1]; under a discrete deck only the
// grid points k / (M - 1) occur.
struct Card {
  double value = 0.0;

  friend bool operator==(const Card&, const Card&) = default;
};

class CardModel {
 public:
  enum class Kind { kContinuous, kDiscrete };

  static CardModel continuous() { return CardModel(Kind::kContinuous, 0); }
  static CardModel discrete(long card_count) {
    return CardModel(Kind::kDiscrete, card_count);
  }

  Kind kind() const { return kind_; }
  bool is_continuous() const { return kind_ == Kind::kContinuous; }
  bool is_discrete() const { return kind_ == Kind::kDiscrete; }
  // Number of grid points M; zero for the continuous model.
  long card_count() const { return card_count_; }

  // Value of the k-th grid card (discrete model only).
  double grid_value(long k) const {
    return static_cast<double>(k) / static_cast<double>(card_count_ - 1);
  }

  friend bool operator==(const CardModel&, const CardModel&) = default;

 private:
  CardModel(Kind kind, long card_count)
      : kind_(kind), card_count_(card_count) {}

  Kind kind_;
  long card_count_;
};

// Bet sizes and card law. The default is the two-to-one game: a = 2, b = 1
// on a continuous uniform deck.
struct GameConfig {
  double high_bet = 2.0;
  double low_bet = 1.0;
  CardModel cards = CardModel::continuous();

  double ratio() const { return high_bet / low_bet; }

  // Net amount changing hands when the settled stake is `stake`.
  double stake_amount(BetAction stake) const {
    return stake == BetAction::kHigh ? high_bet : low_bet;
  }

  static GameConfig from_ratio(double ratio,
                               CardModel cards = CardModel::continuous()) {
    return GameConfig{ratio, 1.0, cards};
  }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

inline GameConfig validate_config(const GameConfig& cfg) {
  // Written so that NaN fails every check.
  if (!(cfg.low_bet > 0.0)) {
    throw ConfigError("low bet must be positive, got " +
                      std::to_string(cfg.low_bet));
  }
  if (!(cfg.high_bet > cfg.low_bet)) {
    throw ConfigError("high bet must exceed low bet, got a=" +
                      std::to_string(cfg.high_bet) +
                      " b=" + std::to_string(cfg.low_bet));
  }
  if (cfg.cards.is_discrete() && cfg.cards.card_count() < 2) {
    throw ConfigError("discrete deck needs at least 2 cards, got " +
                      std::to_string(cfg.cards.card_count()));
  }
  return cfg;
}

inline void require_continuous(const GameConfig& cfg, const char* what) {
  if (!cfg.cards.is_continuous()) {
    throw ConfigError(std::string(what) +
                      " requires the continuous card model");
  }
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_GAME_HPP_
