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

#ifndef BLUFFSOLVE_MONTECARLO_HPP_
#define BLUFFSOLVE_MONTECARLO_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bluffsolve/engine.hpp"
#include "bluffsolve/game.hpp"
#include "bluffsolve/random.hpp"
#include "bluffsolve/strategy.hpp"

namespace bluffsolve {

using Rational = boost::multiprecision::cpp_rational;

struct MCEstimate {
  double mean = 0.0;       // net payoff to player 1 per settled hand
  double std_error = 0.0;  // sample standard deviation / sqrt(hands)
  std::uint64_t hands = 0;
  std::uint64_t seed = 0;
  double replay_rate = 0.0;  // replayed deals / all deals
  std::uint64_t chunk_size = 0;
};

struct SimulationOptions {
  std::uint64_t hands = 1'000'000;
  std::uint64_t seed = 0;
  // Hands per independent stream. Part of the result's provenance: the
  // estimate is a pure function of (seed, chunk_size).
  std::uint64_t chunk_size = 1u << 16;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  SeatOrder order = SeatOrder::kNormal;
};

namespace detail {

// Running mean and squared deviations (Welford), merged with Chan's rule.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t replays = 0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(other.count);
    const double n = n1 + n2;
    const double delta = other.mean - mean;
    mean += delta * (n2 / n);
    m2 += other.m2 + delta * delta * (n1 * n2 / n);
    count += other.count;
    replays += other.replays;
  }
};

}  // namespace detail

// Plays `hands` settled hands. Chunk c draws from the stream seeded by
// derive_seed(seed, c); chunks may run on any thread, and are merged in
// index order, so the result does not depend on the thread count.
inline MCEstimate simulate(const GameConfig& cfg, const Strategy& s1,
                           const Strategy& s2, const SimulationOptions& opts) {
  validate_config(cfg);
  if (opts.hands < 1) throw std::invalid_argument("simulate needs hands >= 1");
  if (opts.chunk_size < 1) {
    throw std::invalid_argument("simulate needs chunk_size >= 1");
  }
  const std::uint64_t chunks = (opts.hands + opts.chunk_size - 1) / opts.chunk_size;
  std::vector<detail::Moments> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    RandomStream rng(derive_seed(opts.seed, c));
    const std::uint64_t begin = c * opts.chunk_size;
    const std::uint64_t end = std::min(opts.hands, begin + opts.chunk_size);
    detail::Moments m;
    for (std::uint64_t h = begin; h < end; ++h) {
      const HandResult r = play_hand(cfg, s1, s2, rng, opts.order);
      m.add(r.payoff);
      m.replays += r.replays;
    }
    partial[c] = m;
  };

  unsigned threads = opts.threads != 0 ? opts.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) run_chunk(c);
        } catch (...) {
          errors[t] = std::current_exception();
          next.store(chunks);
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  detail::Moments total;
  for (const auto& m : partial) total.merge(m);

  MCEstimate est;
  est.mean = total.mean;
  est.hands = total.count;
  est.seed = opts.seed;
  est.chunk_size = opts.chunk_size;
  est.std_error =
      total.count > 1
          ? std::sqrt(total.m2 / static_cast<double>(total.count - 1)) /
                std::sqrt(static_cast<double>(total.count))
          : 0.0;
  est.replay_rate = static_cast<double>(total.replays) /
                    static_cast<double>(total.replays + total.count);
  return est;
}

// One simulate run per schedule entry; row k uses derive_seed(seed, k).
inline std::vector<MCEstimate> convergence_report(
    const GameConfig& cfg, const Strategy& s1, const Strategy& s2,
    std::span<const std::uint64_t> schedule, const SimulationOptions& base) {
  std::vector<MCEstimate> rows;
  rows.reserve(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    SimulationOptions opts = base;
    opts.hands = schedule[k];
    opts.seed = derive_seed(base.seed, k);
    rows.push_back(simulate(cfg, s1, s2, opts));
  }
  return rows;
}

class DegenerateGameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactDiscreteValue {
  Rational value;  // expected net to player 1 per settled hand
  Rational replay_probability;

  double value_as_double() const { return value.convert_to<double>(); }
  double replay_probability_as_double() const {
    return replay_probability.convert_to<double>();
  }
};

inline constexpr long kMaxBruteForceCards = 10'000;

// Exact value on a discrete deck with independent draws. Card pairs are
// enumerated through prefix sums over the opponent's cards: only the order
// of the two cards matters, so for card i the M opponent cards split into
// the i below, the one equal and the M - 1 - i above. Replays are folded in
// by conditioning on settlement:
//   value = E[payoff; settled] / (1 - P(replay)).
// Probabilities enter as the exact binary values of the stored doubles.
inline ExactDiscreteValue brute_force_discrete(const GameConfig& cfg,
                                               const Strategy& s1,
                                               const Strategy& s2) {
  validate_config(cfg);
  if (!cfg.cards.is_discrete()) {
    throw ConfigError("brute_force_discrete requires a discrete deck");
  }
  const long m = cfg.cards.card_count();
  if (m > kMaxBruteForceCards) {
    throw ConfigError("deck too large to enumerate (" + std::to_string(m) +
                      " > " + std::to_string(kMaxBruteForceCards) + ")");
  }
  const Rational a(cfg.high_bet);
  const Rational b(cfg.low_bet);

  std::vector<Rational> h1(m), h2(m);
  for (long k = 0; k < m; ++k) {
    const double v = cfg.cards.grid_value(k);
    h1[k] = Rational(s1.high_probability(v));
    h2[k] = Rational(s2.high_probability(v));
  }
  Rational high_total = 0;
  for (const auto& g : h2) high_total += g;
  const Rational low_total = Rational(m) - high_total;

  // Sums over the grid of (count-weighted) settled payoff and of replay
  // weight; both are later divided by M^2.
  Rational settled = 0;
  Rational replay = 0;
  Rational high_below = 0;
  Rational high_above = high_total;
  for (long i = 0; i < m; ++i) {
    high_above -= h2[i];
    const Rational low_below = Rational(i) - high_below;
    const Rational low_above = Rational(m - 1 - i) - high_above;
    const Rational& p = h1[i];
    const Rational q = 1 - p;
    settled += p * (a * (high_below - high_above) + b * low_total);
    settled += q * (b * (low_below - low_above) - b * high_total);
    replay += p * h2[i] + q * (1 - h2[i]);
    high_below += h2[i];
  }
  const Rational pairs = Rational(m) * Rational(m);
  if (replay == pairs) {
    throw DegenerateGameError("every deal replays; the hand never settles");
  }
  return {settled / (pairs - replay), replay / pairs};
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_MONTECARLO_HPP_
