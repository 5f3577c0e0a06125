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

#ifndef BLUFFSOLVE_ANALYTIC_HPP_
#define BLUFFSOLVE_ANALYTIC_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bluffsolve/game.hpp"
#include "bluffsolve/strategy.hpp"

namespace bluffsolve {

// Continuous piecewise-linear function on [0, 1]. Piece i spans
// [knots[i], knots[i+1]] and equals start[i] + slope[i] * (v - knots[i]).
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> knots, std::vector<double> start,
                  std::vector<double> slope)
      : knots_(std::move(knots)),
        start_(std::move(start)),
        slope_(std::move(slope)) {}

  std::span<const double> knots() const { return knots_; }
  std::size_t piece_count() const { return slope_.size(); }
  double piece_lower(std::size_t i) const { return knots_[i]; }
  double piece_upper(std::size_t i) const { return knots_[i + 1]; }
  double piece_start(std::size_t i) const { return start_[i]; }
  double piece_slope(std::size_t i) const { return slope_[i]; }
  double piece_end(std::size_t i) const {
    return start_[i] + slope_[i] * (knots_[i + 1] - knots_[i]);
  }

  std::size_t piece_index(double v) const {
    auto it = std::upper_bound(knots_.begin() + 1, knots_.end() - 1, v);
    return static_cast<std::size_t>(it - (knots_.begin() + 1));
  }

  double operator()(double v) const {
    const std::size_t i = piece_index(v);
    return start_[i] + slope_[i] * (v - knots_[i]);
  }

  // Exact integral over [lo, hi] with 0 <= lo <= hi <= 1.
  double integral(double lo, double hi) const {
    double total = 0.0;
    for (std::size_t i = piece_index(lo); i < piece_count(); ++i) {
      const double l = std::max(lo, knots_[i]);
      const double h = std::min(hi, knots_[i + 1]);
      if (h <= l) {
        if (knots_[i] >= hi) break;
        continue;
      }
      const double mid = 0.5 * (l + h) - knots_[i];
      total += (start_[i] + slope_[i] * mid) * (h - l);
    }
    return total;
  }

  double integral() const { return integral(0.0, 1.0); }

  // Integral of piece i's line over [lo, hi], which must lie inside it.
  double piece_integral(std::size_t i, double lo, double hi) const {
    const double mid = 0.5 * (lo + hi) - knots_[i];
    return (start_[i] + slope_[i] * mid) * (hi - lo);
  }

  PiecewiseLinear operator-(const PiecewiseLinear& other) const {
    // Both operands come from the same opponent and share knots.
    std::vector<double> start(start_.size()), slope(slope_.size());
    for (std::size_t i = 0; i < slope_.size(); ++i) {
      start[i] = start_[i] - other.start_[i];
      slope[i] = slope_[i] - other.slope_[i];
    }
    return PiecewiseLinear(knots_, std::move(start), std::move(slope));
  }

 private:
  std::vector<double> knots_;
  std::vector<double> start_;
  std::vector<double> slope_;
};

// Expected payoff of each action as a function of the holder's own card,
// against a fixed opponent.
struct ConditionalEV {
  PiecewiseLinear high;
  PiecewiseLinear low;

  PiecewiseLinear advantage() const { return high - low; }
};

// Per bet-pair contributions; the first letter is player 1's bet.
struct RegimeBreakdown {
  double high_high = 0.0;
  double high_low = 0.0;
  double low_high = 0.0;
  double low_low = 0.0;

  double total() const { return high_high + high_low + low_high + low_low; }
};

struct PayoffValue {
  double value = 0.0;  // expected net to player 1
  RegimeBreakdown regimes;
};

struct EquilibriumPoint {
  double t_star = 0.0;
  double p_star = 0.0;
};

// Expected payoff to player 1 under independent uniform cards.
//
// On the merged grid both strategies are constant per cell. Two cards in the
// same cell are equally likely to be ordered either way, so the expected sign
// of the comparison is zero there; across cells it is +1 or -1. Every term is
// therefore a product of cell masses and the result is exact up to rounding.
inline PayoffValue expected_payoff(const GameConfig& cfg, const Strategy& s1,
                                   const Strategy& s2) {
  validate_config(cfg);
  require_continuous(cfg, "expected_payoff");
  const auto [r1, r2] = refine(s1, s2);
  const std::size_t n = r1.piece_count();
  const double a = cfg.high_bet;
  const double b = cfg.low_bet;

  // Opponent high / low mass strictly above cell i.
  double high_above = 0.0;
  double low_above = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    high_above += r2.piece_prob(j) * r2.piece_length(j);
    low_above += (1.0 - r2.piece_prob(j)) * r2.piece_length(j);
  }
  const double high_total = high_above;
  const double low_total = low_above;

  RegimeBreakdown out;
  double high_below = 0.0;
  double low_below = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double len = r1.piece_length(i);
    const double h1 = r1.piece_prob(i);
    const double h2 = r2.piece_prob(i);
    high_above -= h2 * len;
    low_above -= (1.0 - h2) * len;

    out.high_high += h1 * len * a * (high_below - high_above);
    out.high_low += h1 * len * b * low_total;
    out.low_high -= (1.0 - h1) * len * b * high_total;
    out.low_low += (1.0 - h1) * len * b * (low_below - low_above);

    high_below += h2 * len;
    low_below += (1.0 - h2) * len;
  }
  return {out.total(), out};
}

// ev_high(v) = E_w[h(w) a sgn(v - w) + (1 - h(w)) b]
// ev_low(v)  = E_w[-h(w) b + (1 - h(w)) b sgn(v - w)]
// where h is the opponent's high probability. Both are exact and
// piecewise-linear with knots at the opponent's breakpoints.
inline ConditionalEV conditional_evs(const GameConfig& cfg,
                                     const Strategy& opponent) {
  validate_config(cfg);
  require_continuous(cfg, "conditional_evs");
  const std::size_t n = opponent.piece_count();
  const double a = cfg.high_bet;
  const double b = cfg.low_bet;

  std::vector<double> knots(n + 1);
  knots[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) knots[i + 1] = opponent.piece_upper(i);

  double high_above = 0.0;
  double low_above = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    high_above += opponent.piece_prob(j) * opponent.piece_length(j);
    low_above += (1.0 - opponent.piece_prob(j)) * opponent.piece_length(j);
  }
  const double high_total = high_above;
  const double low_total = low_above;

  std::vector<double> hi_start(n), hi_slope(n), lo_start(n), lo_slope(n);
  double high_below = 0.0;
  double low_below = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = opponent.piece_prob(i);
    const double len = opponent.piece_length(i);
    high_above -= g * len;
    low_above -= (1.0 - g) * len;
    // At the left end of the cell the whole cell lies above v.
    const double signed_high = high_below - high_above - g * len;
    const double signed_low = low_below - low_above - (1.0 - g) * len;
    hi_start[i] = a * signed_high + b * low_total;
    hi_slope[i] = 2.0 * a * g;
    lo_start[i] = -b * high_total + b * signed_low;
    lo_slope[i] = 2.0 * b * (1.0 - g);
    high_below += g * len;
    low_below += (1.0 - g) * len;
  }
  return {PiecewiseLinear(knots, std::move(hi_start), std::move(hi_slope)),
          PiecewiseLinear(std::move(knots), std::move(lo_start),
                          std::move(lo_slope))};
}

// Threshold at which the marginal card is indifferent, given the bluffing
// probability p below it: (ratio - 1)(1 - t) = (ratio + 1) t p.
// At ratio 2 this is 1/t = 1 + 3p.
inline double indifference_threshold(double p, double ratio) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("bluff probability must lie in [0, 1], got " +
                            std::to_string(p));
  }
  if (!(ratio > 1.0)) {
    throw std::domain_error("bet ratio must exceed 1, got " +
                            std::to_string(ratio));
  }
  const double t = (ratio - 1.0) / ((ratio - 1.0) + (ratio + 1.0) * p);
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::domain_error("indifference threshold outside (0, 1]");
  }
  return t;
}

// Bluffing probability that makes every below-threshold card indifferent:
// ratio * p = 1 - p.
inline double indifference_bluff(double ratio) {
  if (!(ratio > 1.0)) {
    throw std::domain_error("bet ratio must exceed 1, got " +
                            std::to_string(ratio));
  }
  return 1.0 / (ratio + 1.0);
}

inline EquilibriumPoint closed_form_equilibrium(const GameConfig& cfg) {
  validate_config(cfg);
  require_continuous(cfg, "closed_form_equilibrium");
  const double ratio = cfg.ratio();
  const double p = indifference_bluff(ratio);
  return {indifference_threshold(p, ratio), p};
}

inline Strategy equilibrium_strategy(const GameConfig& cfg) {
  const EquilibriumPoint eq = closed_form_equilibrium(cfg);
  return threshold_mix(eq.t_star, eq.p_star);
}

// Strategy types of the always-high / always-low / deterministic-threshold
// taxonomy, in table order.
enum class PlayerType { kA, kB, kM };

inline constexpr std::array<PlayerType, 3> kPlayerTypes = {
    PlayerType::kA, PlayerType::kB, PlayerType::kM};

inline const char* type_label(PlayerType t) {
  switch (t) {
    case PlayerType::kA:
      return "a";
    case PlayerType::kB:
      return "b";
    case PlayerType::kM:
      return "m";
  }
  return "?";
}

inline Strategy type_strategy(PlayerType t) {
  switch (t) {
    case PlayerType::kA:
      return always_high();
    case PlayerType::kB:
      return always_low();
    case PlayerType::kM:
      return deterministic_threshold(0.5);
  }
  throw std::logic_error("unknown player type");
}

// table[row][col] is the expected payoff of the row type against the
// column type.
using TaxonomyTable = std::array<std::array<PayoffValue, 3>, 3>;

inline TaxonomyTable taxonomy_table(const GameConfig& cfg) {
  TaxonomyTable table;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      table[r][c] = expected_payoff(cfg, type_strategy(kPlayerTypes[r]),
                                    type_strategy(kPlayerTypes[c]));
    }
  }
  return table;
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_ANALYTIC_HPP_
