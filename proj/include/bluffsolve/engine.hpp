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

#ifndef BLUFFSOLVE_ENGINE_HPP_
#define BLUFFSOLVE_ENGINE_HPP_

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "bluffsolve/game.hpp"
#include "bluffsolve/random.hpp"
#include "bluffsolve/strategy.hpp"

namespace bluffsolve {

enum class Outcome { kPlayer1Wins, kPlayer2Wins, kReplay };

// Result of one showdown. The amount is carried as the stake that settled
// (a or b), so the transfer is exactly one of the configured bet sizes.
struct Settlement {
  Outcome outcome = Outcome::kReplay;
  BetAction stake = BetAction::kLow;

  bool is_replay() const { return outcome == Outcome::kReplay; }

  // Net gain of player 1; player 2 receives the negation.
  double payoff_to_player1(const GameConfig& cfg) const {
    switch (outcome) {
      case Outcome::kPlayer1Wins:
        return cfg.stake_amount(stake);
      case Outcome::kPlayer2Wins:
        return -cfg.stake_amount(stake);
      case Outcome::kReplay:
        break;
    }
    return 0.0;
  }

  friend bool operator==(const Settlement&, const Settlement&) = default;
};

inline Settlement settle(const GameConfig& /*cfg*/, Card card1, Card card2,
                         BetAction bet1, BetAction bet2) {
  if (bet1 != bet2) {
    // The high bettor collects the low stake whatever the cards are.
    return {bet1 == BetAction::kHigh ? Outcome::kPlayer1Wins
                                     : Outcome::kPlayer2Wins,
            BetAction::kLow};
  }
  if (card1.value > card2.value) return {Outcome::kPlayer1Wins, bet1};
  if (card2.value > card1.value) return {Outcome::kPlayer2Wins, bet1};
  return {Outcome::kReplay, bet1};
}

inline Card draw_card(const GameConfig& cfg, RandomStream& rng) {
  const double u = rng.uniform();
  if (cfg.cards.is_continuous()) return Card{u};
  const long m = cfg.cards.card_count();
  long k = static_cast<long>(u * static_cast<double>(m));
  if (k >= m) k = m - 1;
  return Card{cfg.cards.grid_value(k)};
}

inline std::pair<Card, Card> deal(const GameConfig& cfg, RandomStream& rng) {
  Card first = draw_card(cfg, rng);
  Card second = draw_card(cfg, rng);
  return {first, second};
}

// Mirrored order hands player 1 the draws that the normal order gives
// player 2 (and vice versa). Playing (s2, s1) mirrored on the same stream
// replays the (s1, s2) hands from the other seat.
enum class SeatOrder { kNormal, kMirrored };

inline constexpr std::uint64_t kMaxConsecutiveReplays = 1'000'000;

class ReplayLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HandResult {
  double payoff = 0.0;  // net to player 1
  std::uint64_t replays = 0;
};

// Deals, bets and settles; a tie with matching bets restarts the hand with
// fresh cards and fresh bets.
inline HandResult play_hand(const GameConfig& cfg, const Strategy& s1,
                            const Strategy& s2, RandomStream& rng,
                            SeatOrder order = SeatOrder::kNormal) {
  HandResult result;
  while (true) {
    auto [c1, c2] = deal(cfg, rng);
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    if (order == SeatOrder::kMirrored) {
      std::swap(c1, c2);
      std::swap(u1, u2);
    }
    const BetAction b1 =
        u1 < s1.high_probability(c1.value) ? BetAction::kHigh : BetAction::kLow;
    const BetAction b2 =
        u2 < s2.high_probability(c2.value) ? BetAction::kHigh : BetAction::kLow;
    const Settlement s = settle(cfg, c1, c2, b1, b2);
    if (!s.is_replay()) {
      result.payoff = s.payoff_to_player1(cfg);
      return result;
    }
    if (++result.replays >= kMaxConsecutiveReplays) {
      throw ReplayLimitError("hand did not settle after " +
                             std::to_string(result.replays) + " replays");
    }
  }
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_ENGINE_HPP_
