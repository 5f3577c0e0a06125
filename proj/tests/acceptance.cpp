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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances and runtime limits are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bluffsolve.hpp"
#include "cli.hpp"
#include "oracle.hpp"

namespace bluffsolve {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

const GameConfig kTwoToOne{2.0, 1.0};
constexpr double kB = 1.0;

Verdict equilibrium_point() {
  std::ostringstream out, err;
  const int code = cli::run({"equilibrium", "--ratio", "2"}, out, err);
  Verdict v;
  v.require(code == 0, "exit code " + std::to_string(code));
  if (code != 0) return v;
  const auto j = nlohmann::json::parse(out.str());
  const double t = j["t_star"].get<double>();
  const double p = j["p_star"].get<double>();
  v.require(std::abs(t - 0.5) <= 1e-12, "t_star=" + format_double(t));
  v.require(std::abs(p - 1.0 / 3.0) <= 1e-12, "p_star=" + format_double(p));
  v.detail = "t*=" + format_double(t) + " p*=" + format_double(p) +
             (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict equilibrium_certificate() {
  Verdict v;
  const Strategy sigma = threshold_mix(0.5, 1.0 / 3.0);
  const BestResponse br = best_response(kTwoToOne, sigma);
  const double expl = exploitability(kTwoToOne, sigma);
  v.require(expl <= 1e-9 * kB, "exploitability " + fmt(expl));
  const MCEstimate mc =
      simulate(kTwoToOne, br.action_rule, sigma, {.hands = 1'000'000, .seed = 2024});
  v.require(std::abs(mc.mean) <= 3 * mc.std_error,
            "MC mean " + fmt(mc.mean) + " vs 3SE " + fmt(3 * mc.std_error));
  v.detail = "exploitability=" + fmt(expl) + " MC best-response mean=" + fmt(mc.mean) +
             " (3SE=" + fmt(3 * mc.std_error) + ")" + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict indifference_structure() {
  Verdict v;
  const ConditionalEV evs = conditional_evs(kTwoToOne, threshold_mix(0.5, 1.0 / 3.0));
  double worst_gap = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double card = 0.5 * k / 1000.0;
    worst_gap = std::max(worst_gap, std::abs(evs.high(card) - evs.low(card)));
  }
  double least_edge = INFINITY;
  for (int k = 1; k <= 1000; ++k) {
    const double card = 0.5 + 0.5 * k / 1000.0;
    least_edge = std::min(least_edge, evs.high(card) - evs.low(card));
  }
  v.require(worst_gap <= 1e-10 * kB, "max |gap| below 0.5 = " + fmt(worst_gap));
  v.require(least_edge > 0.0, "min edge above 0.5 = " + fmt(least_edge));
  v.detail = "max|ev_high-ev_low| below=" + fmt(worst_gap) + " min edge above=" +
             fmt(least_edge) + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict indifference_equations() {
  Verdict v;
  const EquilibriumPoint eq = closed_form_equilibrium(kTwoToOne);
  const double t = eq.t_star, p = eq.p_star;
  const double first = std::abs(1.0 / t - (1.0 + 3.0 * p));
  const double second = std::abs(2.0 * p - (1.0 - p));
  const double cost_benefit = std::abs(kB * (1 - t) - 3 * kB * t * p);
  v.require(first <= 1e-12, "1/t=1+3p residual " + fmt(first));
  v.require(second <= 1e-12, "2p=1-p residual " + fmt(second));
  v.require(cost_benefit <= 1e-12, "b(1-t)=3btp residual " + fmt(cost_benefit));
  v.detail = "residuals " + fmt(first) + ", " + fmt(second) + ", " + fmt(cost_benefit) +
             (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict maximin_guarantee() {
  Verdict v;
  const Strategy sigma = threshold_mix(0.5, 1.0 / 3.0);
  std::mt19937_64 rng(5005);
  double worst = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    worst = std::min(worst,
                     expected_payoff(kTwoToOne, sigma, testing::random_strategy(rng)).value);
  }
  v.require(worst >= -1e-9 * kB, "worst payoff " + fmt(worst));
  v.detail = "min payoff over 1000 strategies=" + fmt(worst) + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict generalized_ratios() {
  Verdict v;
  std::string summary;
  for (double ratio : {1.5, 2.0, 3.0}) {
    const GameConfig cfg = GameConfig::from_ratio(ratio);
    const double eps = 1e-3 * cfg.low_bet;
    const EquilibriumResult fp = fictitious_play(cfg, {200, eps, 100'000});
    const double closed = exploitability(cfg, threshold_mix(1.0 - 1.0 / ratio, 1.0 / (ratio + 1.0)));
    v.require(fp.exploitability <= eps, "ratio " + fmt(ratio) + " FP " + fmt(fp.exploitability));
    v.require(closed <= 1e-9 * cfg.low_bet, "ratio " + fmt(ratio) + " closed form " + fmt(closed));
    summary += " rho=" + fmt(ratio) + ":fp=" + fmt(fp.exploitability) + "@" +
               std::to_string(fp.iterations) + ",cf=" + fmt(closed);
  }
  v.detail = summary.substr(1) + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict taxonomy() {
  Verdict v;
  const TaxonomyTable table = taxonomy_table(kTwoToOne);
  // Frozen oracle values plus a fresh run of the quadrature oracle.
  const double expected[3][3] = {{0.0, 1.0, 0.0}, {-1.0, 0.0, -0.25}, {0.0, 0.25, 0.0}};
  double worst = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double oracle = testing::quadrature_payoff(
          kTwoToOne, type_strategy(kPlayerTypes[r]), type_strategy(kPlayerTypes[c]), 1000);
      worst = std::max({worst, std::abs(table[r][c].value - expected[r][c]),
                        std::abs(table[r][c].value - oracle)});
      v.require(std::abs(table[r][c].value + table[c][r].value) <= 1e-10, "not antisymmetric");
    }
  }
  v.require(worst <= 1e-10, "max deviation " + fmt(worst));
  v.detail = "E(a|b)=" + format_double(table[0][1].value) + " E(m|b)=" +
             format_double(table[2][1].value) + " E(m|a)=" + format_double(table[2][0].value) +
             " max deviation=" + fmt(worst) + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict cross_validation() {
  Verdict v;
  std::mt19937_64 rng(8008);
  const GameConfig discrete{2.0, 1.0, CardModel::discrete(1001)};
  double worst_discrete = 0.0;
  double worst_z = 0.0;
  int reruns = 0;
  for (int pair = 0; pair < 50; ++pair) {
    // Breakpoints on the 1/1000 grid, so they coincide with deck cards.
    const Strategy s1 = testing::random_strategy(rng, 1000);
    const Strategy s2 = testing::random_strategy(rng, 1000);
    const double exact = expected_payoff(kTwoToOne, s1, s2).value;

    double z = INFINITY;
    for (int attempt = 0; attempt < 3 && !(z <= 4.0); ++attempt) {
      if (attempt > 0) ++reruns;
      const MCEstimate mc = simulate(
          kTwoToOne, s1, s2,
          {.hands = 1'000'000, .seed = derive_seed(31337, 3 * pair + attempt)});
      z = mc.std_error > 0 ? std::abs(mc.mean - exact) / mc.std_error
                           : (mc.mean == exact ? 0.0 : INFINITY);
    }
    worst_z = std::max(worst_z, z);
    v.require(z <= 4.0, "pair " + std::to_string(pair) + " MC off by " + fmt(z) + " SE");

    const double brute = brute_force_discrete(discrete, s1, s2).value_as_double();
    worst_discrete = std::max(worst_discrete, std::abs(brute - exact));
  }
  v.require(worst_discrete <= 5e-3 * kB, "discrete deviation " + fmt(worst_discrete));
  v.detail = "max MC |z|=" + fmt(worst_z) + " (reruns " + std::to_string(reruns) +
             ") max |discrete-analytic|=" + fmt(worst_discrete) +
             (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

Verdict engine_conformance() {
  Verdict v;
  const BetAction H = BetAction::kHigh, L = BetAction::kLow;
  const GameConfig cfg = kTwoToOne;
  int cases = 0;
  // Card orderings: player 1 higher, lower, equal.
  const std::pair<double, double> orderings[] = {{0.8, 0.3}, {0.1, 0.9}, {0.4, 0.4}};
  for (BetAction b1 : {H, L}) {
    for (BetAction b2 : {H, L}) {
      for (auto [c1, c2] : orderings) {
        ++cases;
        const Settlement s = settle(cfg, Card{c1}, Card{c2}, b1, b2);
        double expected;
        bool replay = false;
        if (b1 != b2) {
          expected = b1 == H ? cfg.low_bet : -cfg.low_bet;
        } else if (c1 == c2) {
          replay = true;
          expected = 0.0;
        } else {
          const double stake = b1 == H ? cfg.high_bet : cfg.low_bet;
          expected = c1 > c2 ? stake : -stake;
        }
        v.require(s.is_replay() == replay && s.payoff_to_player1(cfg) == expected,
                  std::string(to_string(b1)) + "/" + to_string(b2) + " " + fmt(c1) + " vs " +
                      fmt(c2));
      }
    }
  }
  v.detail = std::to_string(cases) + " cases" + (v.detail.empty() ? "" : " " + v.detail);
  return v;
}

struct Criterion {
  const char* id;
  const char* name;
  double time_limit_s;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace bluffsolve

int main() {
  using namespace bluffsolve;
  const std::vector<Criterion> criteria = {
      {"AC1", "equilibrium point at ratio 2", 1.0, equilibrium_point},
      {"AC2", "equilibrium certificate", 5.0, equilibrium_certificate},
      {"AC3", "indifference structure", 1e9, indifference_structure},
      {"AC4", "indifference equations at the solution", 1e9, indifference_equations},
      {"AC5", "maximin guarantee", 10.0, maximin_guarantee},
      {"AC6", "generalized ratios", 30.0, generalized_ratios},
      {"AC7", "a/b/m taxonomy table", 1e9, taxonomy},
      {"AC8", "analytic / Monte Carlo / discrete cross-validation", 120.0, cross_validation},
      {"AC9", "engine conformance", 1e9, engine_conformance},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
      v.pass = false;
      v.detail += " runtime " + fmt(seconds) + "s over limit " + fmt(c.time_limit_s) + "s";
    }
    if (!v.pass) ++failures;
    std::printf("[%s] %s %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
