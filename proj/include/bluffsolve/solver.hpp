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

#ifndef BLUFFSOLVE_SOLVER_HPP_
#define BLUFFSOLVE_SOLVER_HPP_

#include <algorithm>
#include <cstddef>
#include <future>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "bluffsolve/analytic.hpp"
#include "bluffsolve/game.hpp"
#include "bluffsolve/strategy.hpp"

namespace bluffsolve {

struct BestResponse {
  Strategy action_rule;  // every piece is 0 or 1
  double value = 0.0;    // expected payoff of action_rule against the opponent
};

// Pointwise argmax of the two conditional EV lines, ties to High. The
// advantage ev_high - ev_low is linear on each opponent piece, so each piece
// splits at most once, at its exact root.
inline BestResponse best_response(const GameConfig& cfg,
                                  const Strategy& opponent) {
  const ConditionalEV evs = conditional_evs(cfg, opponent);
  const PiecewiseLinear adv = evs.advantage();

  struct Segment {
    double lo, hi;
    bool high;
  };
  std::vector<Segment> segments;
  double value = 0.0;
  auto take = [&](std::size_t piece, double lo, double hi, bool high) {
    if (!(hi > lo)) return;
    value += high ? evs.high.piece_integral(piece, lo, hi)
                  : evs.low.piece_integral(piece, lo, hi);
    if (!segments.empty() && segments.back().high == high) {
      segments.back().hi = hi;
    } else {
      segments.push_back({lo, hi, high});
    }
  };

  for (std::size_t i = 0; i < adv.piece_count(); ++i) {
    const double lo = adv.piece_lower(i);
    const double hi = adv.piece_upper(i);
    const double d0 = adv.piece_start(i);
    const double d1 = adv.piece_end(i);
    const bool high0 = d0 >= 0.0;
    const bool high1 = d1 >= 0.0;
    if (high0 == high1) {
      take(i, lo, hi, high0);
      continue;
    }
    double root = lo + d0 / (d0 - d1) * (hi - lo);
    root = std::clamp(root, lo, hi);
    take(i, lo, root, high0);
    take(i, root, hi, high1);
  }

  std::vector<double> bps;
  std::vector<double> probs{segments.front().high ? 1.0 : 0.0};
  // Segments have positive length and alternate actions, so every later
  // segment starts strictly inside (0, 1) and after the previous one.
  for (std::size_t k = 1; k < segments.size(); ++k) {
    bps.push_back(segments[k].lo);
    probs.push_back(segments[k].high ? 1.0 : 0.0);
  }
  return {Strategy(std::move(bps), std::move(probs)).coalesced(), value};
}

// Best-response value against s. The game is symmetric with value zero, so
// this is zero exactly for equilibrium strategies; it is floored at zero to
// absorb rounding.
inline double exploitability(const GameConfig& cfg, const Strategy& s) {
  return std::max(0.0, best_response(cfg, s).value);
}

struct FictitiousPlayOptions {
  std::size_t bins = 200;
  double epsilon = 1e-3;
  std::size_t max_iters = 100'000;
};

struct EquilibriumResult {
  Strategy strategy;  // constant on each of the uniform bins
  double exploitability = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::size_t bin_count = 0;
  bool converged = false;
  // Exploitability of the running average after each iteration.
  std::vector<double> history;
};

inline std::vector<double> uniform_bin_edges(std::size_t bins) {
  std::vector<double> edges;
  edges.reserve(bins - 1);
  for (std::size_t k = 1; k < bins; ++k) {
    edges.push_back(static_cast<double>(k) / static_cast<double>(bins));
  }
  return edges;
}

// Fictitious play between a player restricted to the uniform bins and an
// unrestricted opponent. The opponent best-responds exactly to the binned
// average; the binned player best-responds, bin by bin, to the opponent's
// average. Averaging strategies pointwise is exact because payoffs are affine
// in each player's high probability, so the binned player's response only
// needs the running sum of per-bin advantage integrals. The exploitability of
// the binned average comes for free as the opponent's response value.
inline EquilibriumResult fictitious_play(const GameConfig& cfg,
                                         const FictitiousPlayOptions& opts) {
  validate_config(cfg);
  require_continuous(cfg, "fictitious_play");
  if (opts.bins < 2) throw std::invalid_argument("fictitious play needs >= 2 bins");
  if (!(opts.epsilon > 0.0)) {
    throw std::invalid_argument("fictitious play needs epsilon > 0");
  }
  const std::size_t bins = opts.bins;
  const std::vector<double> edges = uniform_bin_edges(bins);
  auto bin_lo = [&](std::size_t k) { return k == 0 ? 0.0 : edges[k - 1]; };
  auto bin_hi = [&](std::size_t k) { return k + 1 == bins ? 1.0 : edges[k]; };

  EquilibriumResult result;
  result.bin_count = bins;

  Strategy average(edges, std::vector<double>(bins, 0.5));
  std::vector<double> advantage_sum(bins, 0.0);
  std::vector<std::size_t> high_count(bins, 0);
  std::vector<double> probs(bins);

  auto record = [&](std::size_t iters, double expl) {
    result.history.push_back(expl);
    if (expl < result.exploitability) {
      result.exploitability = expl;
      result.strategy = average;
      result.iterations = iters;
    }
    if (expl <= opts.epsilon) {
      result.converged = true;
      return true;
    }
    return false;
  };

  for (std::size_t it = 0;; ++it) {
    // `average` is the mean of `it` binned responses (the uniform start when
    // it == 0, which is not part of any average).
    const BestResponse reply = best_response(cfg, average);
    if (it > 0 && record(it, std::max(0.0, reply.value))) break;
    if (it == opts.max_iters) break;

    const PiecewiseLinear adv = conditional_evs(cfg, reply.action_rule).advantage();
    for (std::size_t k = 0; k < bins; ++k) {
      advantage_sum[k] += adv.integral(bin_lo(k), bin_hi(k));
      if (advantage_sum[k] >= 0.0) ++high_count[k];
      probs[k] = static_cast<double>(high_count[k]) / static_cast<double>(it + 1);
    }
    average = Strategy(edges, probs);
  }
  result.strategy = result.strategy.coalesced();
  return result;
}

// Lower end of the longest top run of pieces whose high probability is at
// least 1 - tol. Returns 1 when the top piece itself mixes.
inline double detect_threshold(const Strategy& s, double tol = 1e-6) {
  double threshold = 1.0;
  for (std::size_t i = s.piece_count(); i-- > 0;) {
    if (s.piece_prob(i) < 1.0 - tol) break;
    threshold = s.piece_lower(i);
  }
  return threshold;
}

// Mean high probability over [0, below).
inline double mean_high_probability_below(const Strategy& s, double below) {
  if (!(below > 0.0)) return 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < s.piece_count(); ++i) {
    const double lo = s.piece_lower(i);
    const double hi = std::min(s.piece_upper(i), below);
    if (hi <= lo) break;
    mass += s.piece_prob(i) * (hi - lo);
  }
  return mass / below;
}

struct SweepRow {
  double ratio = 0.0;
  double t_star = 0.0;
  double p_star = 0.0;
  double exploitability = 0.0;  // fictitious-play result
  std::size_t iterations = 0;
  bool converged = false;
  double closed_form_exploitability = 0.0;
};

// One row per ratio (b = 1): the closed-form point and an independent
// fictitious-play solve. Rows are computed concurrently.
inline std::vector<SweepRow> ratio_sweep(std::span<const double> ratios,
                                         const FictitiousPlayOptions& opts) {
  for (double r : ratios) {
    if (!(r > 1.0)) {
      throw ConfigError("sweep ratios must exceed 1, got " + std::to_string(r));
    }
  }
  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(ratios.size());
  for (double r : ratios) {
    jobs.push_back(std::async(std::launch::async, [r, opts] {
      const GameConfig cfg = GameConfig::from_ratio(r);
      const EquilibriumPoint eq = closed_form_equilibrium(cfg);
      const EquilibriumResult fp = fictitious_play(cfg, opts);
      SweepRow row;
      row.ratio = r;
      row.t_star = eq.t_star;
      row.p_star = eq.p_star;
      row.exploitability = fp.exploitability;
      row.iterations = fp.iterations;
      row.converged = fp.converged;
      row.closed_form_exploitability =
          exploitability(cfg, threshold_mix(eq.t_star, eq.p_star));
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_SOLVER_HPP_
