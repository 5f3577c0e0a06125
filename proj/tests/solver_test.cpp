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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bluffsolve/montecarlo.hpp"
#include "bluffsolve/solver.hpp"
#include "oracle.hpp"

namespace bluffsolve {
namespace {

const GameConfig kTwoToOne{2.0, 1.0};
const Strategy kEquilibrium = threshold_mix(0.5, 1.0 / 3.0);

TEST(BestResponse, AgainstAlwaysLowAlwaysBetsHigh) {
  const BestResponse br = best_response(kTwoToOne, always_low());
  EXPECT_EQ(br.action_rule, always_high());
  EXPECT_NEAR(br.value, 1.0, 1e-15);
  EXPECT_NEAR(testing::quadrature_payoff(kTwoToOne, br.action_rule, always_low(), 200),
              1.0, 1e-12);
}

TEST(BestResponse, AgainstEquilibriumIsWorthZero) {
  EXPECT_NEAR(best_response(kTwoToOne, kEquilibrium).value, 0.0, 1e-15);
}

// Oracle: quadrature of the rule "high iff v > 1/4" against always-high
// gives 0.125 (frozen).
TEST(BestResponse, AgainstAlwaysHighBetsHighAboveAQuarter) {
  const BestResponse br = best_response(kTwoToOne, always_high());
  ASSERT_EQ(br.action_rule.breakpoints().size(), 1u);
  EXPECT_NEAR(br.action_rule.breakpoints()[0], 0.25, 1e-15);
  EXPECT_EQ(br.action_rule.high_probability(0.2), 0.0);
  EXPECT_EQ(br.action_rule.high_probability(0.3), 1.0);
  EXPECT_NEAR(br.value, 0.125, 1e-15);
  EXPECT_NEAR(testing::quadrature_payoff(kTwoToOne, deterministic_threshold(0.25),
                                         always_high(), 400),
              0.125, 1e-12);

  const MCEstimate mc = simulate(kTwoToOne, br.action_rule, always_high(),
                                 {.hands = 400000, .seed = 17});
  EXPECT_NEAR(mc.mean, 0.125, 4 * mc.std_error);
}

TEST(BestResponse, ValueEqualsPayoffOfReturnedRule) {
  std::mt19937_64 rng(41);
  const GameConfig cfg{3.0, 1.0};
  for (int trial = 0; trial < 200; ++trial) {
    const Strategy opp = testing::random_strategy(rng);
    const BestResponse br = best_response(cfg, opp);
    for (double p : br.action_rule.high_probs()) EXPECT_TRUE(p == 0.0 || p == 1.0);
    EXPECT_NEAR(br.value, expected_payoff(cfg, br.action_rule, opp).value, 1e-12);
  }
}

TEST(BestResponse, ChoosesTheBetterActionPointwise) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Strategy opp = testing::random_strategy(rng);
    const BestResponse br = best_response(kTwoToOne, opp);
    const ConditionalEV evs = conditional_evs(kTwoToOne, opp);
    for (int k = 0; k < 200; ++k) {
      const double v = unit(rng);
      const double gap = evs.high(v) - evs.low(v);
      if (std::abs(gap) < 1e-12) continue;
      EXPECT_EQ(br.action_rule.high_probability(v), gap > 0 ? 1.0 : 0.0) << v;
    }
  }
}

TEST(BestResponse, NeverBeatenByRandomStrategies) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Strategy opp = testing::random_strategy(rng);
    const BestResponse br = best_response(kTwoToOne, opp);
    for (int k = 0; k < 100; ++k) {
      const Strategy alt = testing::random_strategy(rng);
      EXPECT_GE(br.value, expected_payoff(kTwoToOne, alt, opp).value - 1e-10);
    }
  }
}

TEST(Exploitability, Examples) {
  EXPECT_LE(exploitability(kTwoToOne, kEquilibrium), 1e-9);
  EXPECT_NEAR(exploitability(kTwoToOne, always_low()), 1.0, 1e-15);
  EXPECT_NEAR(exploitability(kTwoToOne, always_high()), 0.125, 1e-15);
}

TEST(Exploitability, NonNegative) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    EXPECT_GE(exploitability(kTwoToOne, testing::random_strategy(rng)), 0.0);
  }
}

TEST(Exploitability, ClosedFormIsUnexploitableAtEveryRatio) {
  for (double ratio : {1.1, 1.5, 2.0, 3.0, 5.0, 12.0}) {
    const GameConfig cfg = GameConfig::from_ratio(ratio);
    EXPECT_LE(exploitability(cfg, equilibrium_strategy(cfg)), 1e-9) << ratio;
  }
}

TEST(Exploitability, OffEquilibriumMixesAreExploitable) {
  for (double p : {0.2, 0.3, 0.36, 0.5}) {
    EXPECT_GT(exploitability(kTwoToOne, threshold_mix(0.5, p)), 1e-4) << p;
  }
  for (double t : {0.4, 0.45, 0.55, 0.6}) {
    EXPECT_GT(exploitability(kTwoToOne, threshold_mix(t, 1.0 / 3.0)), 1e-4) << t;
  }
}

TEST(Maximin, EquilibriumNeverLosesInExpectation) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 1000; ++trial) {
    const Strategy s = testing::random_strategy(rng);
    EXPECT_GE(expected_payoff(kTwoToOne, kEquilibrium, s).value, -1e-9);
  }
}

TEST(Indifference, AnyBelowThresholdCompletionIsABestResponse) {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double ratio : {1.5, 2.0, 3.0}) {
    const GameConfig cfg = GameConfig::from_ratio(ratio);
    const EquilibriumPoint eq = closed_form_equilibrium(cfg);
    const Strategy sigma = threshold_mix(eq.t_star, eq.p_star);
    for (int k = 0; k < 20; ++k) {
      // Random pure pieces on [0, t*), high from t* up.
      std::vector<double> bps;
      for (int j = 0; j < 4; ++j) bps.push_back(eq.t_star * unit(rng));
      std::sort(bps.begin(), bps.end());
      bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
      bps.push_back(eq.t_star);
      std::vector<double> probs;
      for (std::size_t j = 0; j < bps.size(); ++j) probs.push_back(unit(rng) < 0.5 ? 0.0 : 1.0);
      probs.push_back(1.0);
      const Strategy rule(bps, probs);
      EXPECT_NEAR(expected_payoff(cfg, rule, sigma).value, 0.0, 1e-12) << ratio;
    }
  }
}

TEST(FictitiousPlay, TwoToOneWithTwoHundredBins) {
  const EquilibriumResult res = fictitious_play(kTwoToOne, {200, 1e-3, 100000});
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.exploitability, 1e-3);
  EXPECT_EQ(res.bin_count, 200u);
  EXPECT_NEAR(exploitability(kTwoToOne, res.strategy), res.exploitability, 1e-15);
  EXPECT_NEAR(detect_threshold(res.strategy), 0.5, 0.05);
  // Mean high probability over (0.5, 1].
  const double above = 2.0 * (res.strategy.mean_high_probability() -
                              0.5 * mean_high_probability_below(res.strategy, 0.5));
  EXPECT_GT(above, 0.97);
}

TEST(FictitiousPlay, RecoversThreeToOneEquilibrium) {
  const GameConfig cfg{3.0, 1.0};
  const EquilibriumResult res = fictitious_play(cfg, {200, 1e-3, 100000});
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.exploitability, 1e-3);
  const double threshold = detect_threshold(res.strategy);
  EXPECT_NEAR(threshold, 2.0 / 3.0, 0.05);
  EXPECT_NEAR(mean_high_probability_below(res.strategy, threshold), 0.25, 0.05);
}

TEST(FictitiousPlay, TwoBinsExpressTheExactEquilibrium) {
  const EquilibriumResult res = fictitious_play(kTwoToOne, {2, 1e-9, 100000});
  EXPECT_TRUE(res.converged);
  EXPECT_LE(res.exploitability, 1e-9);
  EXPECT_NEAR(res.strategy.high_probability(0.25), 1.0 / 3.0, 1e-9);
  EXPECT_EQ(res.strategy.high_probability(0.75), 1.0);
}

TEST(FictitiousPlay, CheckpointsDoNotRegress) {
  for (double ratio : {1.5, 2.0, 3.0}) {
    const EquilibriumResult res =
        fictitious_play(GameConfig::from_ratio(ratio), {200, 1e-3, 100000});
    const auto& h = res.history;
    for (std::size_t i = 50 + 49; i < h.size(); i += 50) {
      EXPECT_LE(h[i], h[i - 50] + 1e-6) << ratio << " at " << i + 1;
    }
  }
}

TEST(FictitiousPlay, ReportsNonConvergence) {
  const EquilibriumResult res = fictitious_play(GameConfig{3.0, 1.0}, {50, 1e-12, 5});
  EXPECT_FALSE(res.converged);
  EXPECT_GT(res.exploitability, 1e-12);
  EXPECT_LE(res.iterations, 5u);
  EXPECT_EQ(res.history.size(), 5u);
  EXPECT_NEAR(exploitability(GameConfig{3.0, 1.0}, res.strategy), res.exploitability, 1e-15);
}

TEST(FictitiousPlay, RejectsBadOptions) {
  EXPECT_THROW(fictitious_play(kTwoToOne, {1, 1e-3, 10}), std::invalid_argument);
  EXPECT_THROW(fictitious_play(kTwoToOne, {10, 0.0, 10}), std::invalid_argument);
  EXPECT_THROW(fictitious_play(GameConfig{2.0, 1.0, CardModel::discrete(5)}, {10, 1e-3, 10}),
               ConfigError);
}

TEST(RatioSweep, RowsMatchClosedForm) {
  const std::vector<double> ratios = {1.5, 2.0, 3.0};
  const std::vector<SweepRow> rows = ratio_sweep(ratios, {200, 1e-3, 100000});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].t_star, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rows[0].p_star, 0.4, 1e-15);
  EXPECT_NEAR(rows[1].t_star, 0.5, 1e-15);
  EXPECT_NEAR(rows[1].p_star, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(rows[2].t_star, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rows[2].p_star, 0.25, 1e-15);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.converged);
    EXPECT_LE(row.exploitability, 1e-3);
    EXPECT_LE(row.closed_form_exploitability, 1e-9);
  }
}

TEST(RatioSweep, MonotoneInRatio) {
  const std::vector<double> ratios = {1.1, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0};
  const std::vector<SweepRow> rows = ratio_sweep(ratios, {20, 1e-2, 200});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].t_star, rows[i - 1].t_star);
    EXPECT_LT(rows[i].p_star, rows[i - 1].p_star);
  }
}

TEST(RatioSweep, RejectsRatiosAtOrBelowOne) {
  const std::vector<double> ratios = {2.0, 1.0};
  EXPECT_THROW(ratio_sweep(ratios, {}), ConfigError);
}

}  // namespace
}  // namespace bluffsolve
