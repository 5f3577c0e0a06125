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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bluffsolve.hpp"

namespace bluffsolve::cli {
namespace {

// Bad input that the user can fix; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that ran but did not deliver (e.g. --strict
// non-convergence); maps to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::optional<double> high_bet;
  std::optional<double> low_bet;
  std::optional<double> ratio;
  std::string deck = "continuous";

  std::string first;   // --s1 / --s / --opponent
  std::string second;  // --s2
  std::string strategy_file;
  std::string second_file;
  std::string dump_strategy;

  std::uint64_t hands = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::uint64_t chunk = 1u << 16;
  unsigned threads = 0;
  std::vector<std::uint64_t> schedule;

  std::size_t bins = 200;
  std::optional<double> epsilon;
  std::size_t max_iters = 100'000;
  std::vector<std::string> ratios;
  std::size_t grid = 101;

  std::string format;
  std::string out;
  bool strict = false;
};

enum class Format { kJson, kCsv };

void add_game_options(CLI::App* cmd, Args& args) {
  auto* a = cmd->add_option("--a", args.high_bet, "High bet size (default 2)");
  auto* b = cmd->add_option("--b", args.low_bet, "Low bet size (default 1)");
  auto* r = cmd->add_option("--ratio", args.ratio, "Bet ratio a/b; sets b = 1");
  r->excludes(a)->excludes(b);
  cmd->add_option("--deck", args.deck,
                  "Card model: 'continuous' or a card count M >= 2")
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, Args& args) {
  cmd->add_option("--format", args.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", args.out, "Write the report to PATH instead of stdout");
}

void add_first_strategy(CLI::App* cmd, Args& args, const std::string& names,
                        const std::string& what) {
  auto* inline_opt = cmd->add_option(names, args.first, what + " (inline form)");
  auto* file_opt = cmd->add_option("--strategy-file", args.strategy_file,
                                   what + " (strategy file)");
  inline_opt->excludes(file_opt);
  cmd->add_option("--dump-strategy", args.dump_strategy,
                  "Also write " + what + " to PATH in file format");
}

void add_second_strategy(CLI::App* cmd, Args& args, const std::string& what) {
  auto* inline_opt = cmd->add_option("--s2", args.second, what + " (inline form)");
  auto* file_opt =
      cmd->add_option("--s2-file", args.second_file, what + " (strategy file)");
  inline_opt->excludes(file_opt);
}

void add_simulation_options(CLI::App* cmd, Args& args) {
  cmd->add_option("--hands", args.hands, "Settled hands to play")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed,
                  "Random seed (default: $BLUFFSOLVE_SEED, else 0)");
  cmd->add_option("--chunk", args.chunk, "Hands per random stream")
      ->capture_default_str();
  cmd->add_option("--threads", args.threads, "Worker threads (0 = all cores)");
}

void add_solver_options(CLI::App* cmd, Args& args) {
  cmd->add_option("--bins", args.bins, "Uniform bins")->capture_default_str();
  cmd->add_option("--epsilon", args.epsilon,
                  "Target exploitability in money (default 1e-3 * b)");
  cmd->add_option("--max-iters", args.max_iters, "Iteration cap")
      ->capture_default_str();
  cmd->add_flag("--strict", args.strict, "Exit 1 when the target is not reached");
}

GameConfig make_config(const Args& args) {
  GameConfig cfg;
  if (args.ratio) {
    cfg = GameConfig::from_ratio(*args.ratio);
  } else {
    if (args.high_bet) cfg.high_bet = *args.high_bet;
    if (args.low_bet) cfg.low_bet = *args.low_bet;
  }
  if (args.deck != "continuous") {
    long m = 0;
    const char* first = args.deck.data();
    const char* last = first + args.deck.size();
    auto [ptr, ec] = std::from_chars(first, last, m);
    if (args.deck.empty() || ec != std::errc() || ptr != last) {
      throw UsageError("--deck must be 'continuous' or a card count, got '" +
                       args.deck + "'");
    }
    cfg.cards = CardModel::discrete(m);
  }
  return validate_config(cfg);
}

Strategy read_strategy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read strategy file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return deserialize(buffer.str());
  } catch (const StrategyParseError& e) {
    throw UsageError("strategy file '" + path + "' at " + e.position() + ": " +
                     e.reason());
  }
}

Strategy resolve_strategy(const std::string& inline_spec,
                          const std::string& file, const char* flag) {
  if (!file.empty()) return read_strategy_file(file);
  if (inline_spec.empty()) {
    throw UsageError(std::string("missing strategy: pass ") + flag +
                     " (e.g. threshold:0.5:0.3333333333333333) or a file");
  }
  try {
    return parse_strategy_spec(inline_spec);
  } catch (const StrategyParseError& e) {
    throw UsageError(std::string(flag) + " " + e.what());
  }
}

std::uint64_t resolve_seed(const Args& args, const Environment& env) {
  if (args.seed) return *args.seed;
  if (env.seed) {
    std::uint64_t seed = 0;
    const std::string& s = *env.seed;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("BLUFFSOLVE_SEED must be a non-negative integer, got '" +
                       s + "'");
    }
    return seed;
  }
  return 0;
}

std::vector<double> parse_ratio_list(const std::vector<std::string>& items) {
  std::vector<double> ratios;
  for (const std::string& item : items) {
    if (item.empty()) continue;
    double r = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), r);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("--ratios entry '" + item + "' is not a number");
    }
    ratios.push_back(r);
  }
  if (ratios.empty()) throw UsageError("--ratios needs at least one ratio");
  return ratios;
}

Format pick_format(const Args& args, Format fallback) {
  if (args.format == "json") return Format::kJson;
  if (args.format == "csv") return Format::kCsv;
  return fallback;
}

void dump_if_requested(const Args& args, const Strategy& s) {
  if (args.dump_strategy.empty()) return;
  std::ofstream file(args.dump_strategy);
  if (!file) throw UsageError("cannot write '" + args.dump_strategy + "'");
  file << serialize(s) << '\n';
}

std::string json_line(const Json& j) { return j.dump() + "\n"; }

std::string run_equilibrium(const Args& args) {
  const GameConfig cfg = make_config(args);
  const EquilibriumPoint eq = closed_form_equilibrium(cfg);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    std::ostringstream out;
    write_csv_header(out, {"t_star", "p_star"});
    out << format_double(eq.t_star) << ',' << format_double(eq.p_star) << '\n';
    return out.str();
  }
  return json_line(Json{{"t_star", eq.t_star}, {"p_star", eq.p_star}});
}

std::string run_payoff(const Args& args) {
  const GameConfig cfg = make_config(args);
  const Strategy s1 = resolve_strategy(args.first, args.strategy_file, "--s1");
  const Strategy s2 = resolve_strategy(args.second, args.second_file, "--s2");
  dump_if_requested(args, s1);
  if (!cfg.cards.is_continuous()) {
    throw UsageError("payoff is exact for the continuous deck; use brute-force for --deck M");
  }
  const PayoffValue v = expected_payoff(cfg, s1, s2);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    std::ostringstream out;
    write_csv_header(out, {"value", "high_high", "high_low", "low_high", "low_low"});
    out << format_double(v.value) << ',' << format_double(v.regimes.high_high)
        << ',' << format_double(v.regimes.high_low) << ','
        << format_double(v.regimes.low_high) << ','
        << format_double(v.regimes.low_low) << '\n';
    return out.str();
  }
  return json_line(to_json(v));
}

std::string run_evs(const Args& args) {
  const GameConfig cfg = make_config(args);
  const Strategy opp =
      resolve_strategy(args.first, args.strategy_file, "--opponent");
  dump_if_requested(args, opp);
  if (args.grid < 2) throw UsageError("--grid needs at least 2 points");
  const ConditionalEV evs = conditional_evs(cfg, opp);
  std::ostringstream out;
  if (pick_format(args, Format::kCsv) == Format::kCsv) {
    write_evs_csv(out, evs, args.grid);
    return out.str();
  }
  Json rows = Json::array();
  for (std::size_t k = 0; k < args.grid; ++k) {
    const double v = static_cast<double>(k) / static_cast<double>(args.grid - 1);
    rows.push_back(Json{{"v", v}, {"ev_high", evs.high(v)}, {"ev_low", evs.low(v)}});
  }
  return json_line(Json{{"rows", rows}});
}

Json best_response_json(const BestResponse& br) {
  return Json{{"value", br.value}, {"action_rule", to_json(br.action_rule)}};
}

std::string run_best_response(const Args& args) {
  const GameConfig cfg = make_config(args);
  const Strategy opp =
      resolve_strategy(args.first, args.strategy_file, "--opponent");
  dump_if_requested(args, opp);
  const BestResponse br = best_response(cfg, opp);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    std::ostringstream out;
    write_csv_header(out, {"lower", "upper", "high_prob"});
    for (std::size_t i = 0; i < br.action_rule.piece_count(); ++i) {
      out << format_double(br.action_rule.piece_lower(i)) << ','
          << format_double(br.action_rule.piece_upper(i)) << ','
          << format_double(br.action_rule.piece_prob(i)) << '\n';
    }
    return out.str();
  }
  return json_line(best_response_json(br));
}

std::string run_exploit(const Args& args) {
  const GameConfig cfg = make_config(args);
  const Strategy s = resolve_strategy(args.first, args.strategy_file, "--s");
  dump_if_requested(args, s);
  const BestResponse br = best_response(cfg, s);
  const double expl = std::max(0.0, br.value);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    return "exploitability\n" + format_double(expl) + "\n";
  }
  return json_line(Json{{"exploitability", expl},
                        {"best_response", best_response_json(br)}});
}

FictitiousPlayOptions solver_options(const Args& args, const GameConfig& cfg) {
  FictitiousPlayOptions opts;
  opts.bins = args.bins;
  opts.epsilon = args.epsilon.value_or(1e-3 * cfg.low_bet);
  opts.max_iters = args.max_iters;
  if (opts.bins < 2) throw UsageError("--bins must be at least 2");
  if (!(opts.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  return opts;
}

std::string run_solve(const Args& args, std::ostream& err) {
  const GameConfig cfg = make_config(args);
  const EquilibriumResult res = fictitious_play(cfg, solver_options(args, cfg));
  if (!res.converged) {
    err << "warning: exploitability " << format_double(res.exploitability)
        << " above target after " << args.max_iters << " iterations\n";
    if (args.strict) throw ComputationError("fictitious play did not converge");
  }
  const double threshold = detect_threshold(res.strategy);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    std::ostringstream out;
    write_csv_header(out, {"lower", "upper", "high_prob"});
    for (std::size_t i = 0; i < res.strategy.piece_count(); ++i) {
      out << format_double(res.strategy.piece_lower(i)) << ','
          << format_double(res.strategy.piece_upper(i)) << ','
          << format_double(res.strategy.piece_prob(i)) << '\n';
    }
    return out.str();
  }
  return json_line(
      Json{{"exploitability", res.exploitability},
           {"iterations", res.iterations},
           {"bin_count", res.bin_count},
           {"converged", res.converged},
           {"threshold", threshold},
           {"bluff_below_threshold", mean_high_probability_below(res.strategy, threshold)},
           {"strategy", to_json(res.strategy)}});
}

std::string run_sweep(const Args& args, std::ostream& err) {
  const std::vector<double> ratios = parse_ratio_list(args.ratios);
  for (double r : ratios) {
    if (!(r > 1.0)) throw UsageError("--ratios entries must exceed 1");
  }
  FictitiousPlayOptions opts;
  opts.bins = args.bins;
  opts.epsilon = args.epsilon.value_or(1e-3);
  opts.max_iters = args.max_iters;
  if (opts.bins < 2) throw UsageError("--bins must be at least 2");
  if (!(opts.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  const std::vector<SweepRow> rows = ratio_sweep(ratios, opts);
  bool all_converged = true;
  for (const auto& row : rows) {
    if (!row.converged) {
      all_converged = false;
      err << "warning: ratio " << format_double(row.ratio)
          << " did not reach the target exploitability\n";
    }
  }
  if (!all_converged && args.strict) {
    throw ComputationError("fictitious play did not converge for every ratio");
  }
  if (pick_format(args, Format::kCsv) == Format::kCsv) {
    std::ostringstream out;
    write_sweep_csv(out, rows);
    return out.str();
  }
  Json j = Json::array();
  for (const auto& row : rows) j.push_back(to_json(row));
  return json_line(Json{{"rows", j}});
}

std::string run_simulate(const Args& args, const Environment& env) {
  const GameConfig cfg = make_config(args);
  const Strategy s1 = resolve_strategy(args.first, args.strategy_file, "--s1");
  const Strategy s2 = resolve_strategy(args.second, args.second_file, "--s2");
  dump_if_requested(args, s1);
  if (args.hands < 1) throw UsageError("--hands must be at least 1");
  if (args.chunk < 1) throw UsageError("--chunk must be at least 1");
  SimulationOptions opts;
  opts.hands = args.hands;
  opts.seed = resolve_seed(args, env);
  opts.chunk_size = args.chunk;
  opts.threads = args.threads;

  std::vector<MCEstimate> rows;
  if (args.schedule.empty()) {
    rows.push_back(simulate(cfg, s1, s2, opts));
  } else {
    for (auto h : args.schedule) {
      if (h < 1) throw UsageError("--schedule entries must be at least 1");
    }
    rows = convergence_report(cfg, s1, s2, args.schedule, opts);
  }
  const Format fallback = args.schedule.empty() ? Format::kJson : Format::kCsv;
  if (pick_format(args, fallback) == Format::kCsv) {
    std::ostringstream out;
    write_estimates_csv(out, rows);
    return out.str();
  }
  if (rows.size() == 1) return json_line(to_json(rows.front()));
  Json j = Json::array();
  for (const auto& row : rows) j.push_back(to_json(row));
  return json_line(Json{{"rows", j}});
}

std::string run_brute_force(const Args& args) {
  const GameConfig cfg = make_config(args);
  if (!cfg.cards.is_discrete()) {
    throw UsageError("brute-force needs a discrete deck: pass --deck M");
  }
  const Strategy s1 = resolve_strategy(args.first, args.strategy_file, "--s1");
  const Strategy s2 = resolve_strategy(args.second, args.second_file, "--s2");
  dump_if_requested(args, s1);
  const ExactDiscreteValue v = brute_force_discrete(cfg, s1, s2);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    return "value,replay_probability\n" + format_double(v.value_as_double()) +
           "," + format_double(v.replay_probability_as_double()) + "\n";
  }
  return json_line(to_json(v));
}

std::string run_taxonomy(const Args& args) {
  const GameConfig cfg = make_config(args);
  const TaxonomyTable table = taxonomy_table(cfg);
  if (pick_format(args, Format::kJson) == Format::kCsv) {
    std::ostringstream out;
    write_csv_header(out, {"row", "a", "b", "m"});
    for (std::size_t r = 0; r < 3; ++r) {
      out << type_label(kPlayerTypes[r]);
      for (std::size_t c = 0; c < 3; ++c) out << ',' << format_double(table[r][c].value);
      out << '\n';
    }
    return out.str();
  }
  Json rows = Json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back(table[r][c].value);
    rows.push_back(row);
  }
  return json_line(Json{{"types", {"a", "b", "m"}}, {"table", rows}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env) {
  CLI::App app{"Analysis workbench for the two-bet sealed-bid poker game",
               "bluffsolve"};
  app.require_subcommand(1);
  Args a;
  std::string command;

  auto* equilibrium = app.add_subcommand("equilibrium", "Closed-form equilibrium (t*, p*)");
  add_game_options(equilibrium, a);
  add_output_options(equilibrium, a);

  auto* payoff = app.add_subcommand("payoff", "Exact expected payoff of s1 against s2");
  add_game_options(payoff, a);
  add_first_strategy(payoff, a, "--s1", "player 1 strategy");
  add_second_strategy(payoff, a, "player 2 strategy");
  add_output_options(payoff, a);

  auto* evs = app.add_subcommand("evs", "Conditional EV of each bet against an opponent");
  add_game_options(evs, a);
  add_first_strategy(evs, a, "--opponent,--s", "opponent strategy");
  evs->add_option("--grid", a.grid, "Number of evenly spaced cards")->capture_default_str();
  add_output_options(evs, a);

  auto* best = app.add_subcommand("best-response", "Exact best response to an opponent");
  add_game_options(best, a);
  add_first_strategy(best, a, "--opponent,--s", "opponent strategy");
  add_output_options(best, a);

  auto* exploit = app.add_subcommand("exploit", "Exploitability of a strategy");
  add_game_options(exploit, a);
  add_first_strategy(exploit, a, "--s", "strategy");
  add_output_options(exploit, a);

  auto* solve = app.add_subcommand("solve", "Fictitious-play equilibrium over uniform bins");
  add_game_options(solve, a);
  add_solver_options(solve, a);
  add_output_options(solve, a);

  auto* sweep = app.add_subcommand("sweep", "Closed form and solver check per bet ratio");
  sweep->add_option("--ratios", a.ratios, "Comma-separated bet ratios a/b")
      ->required()
      ->delimiter(',');
  add_solver_options(sweep, a);
  add_output_options(sweep, a);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of s1 against s2");
  add_game_options(sim, a);
  add_first_strategy(sim, a, "--s1", "player 1 strategy");
  add_second_strategy(sim, a, "player 2 strategy");
  add_simulation_options(sim, a);
  sim->add_option("--schedule", a.schedule,
                  "Comma-separated hand counts for a convergence table")
      ->delimiter(',');
  add_output_options(sim, a);

  auto* brute = app.add_subcommand("brute-force", "Exact value on a discrete deck");
  add_game_options(brute, a);
  add_first_strategy(brute, a, "--s1", "player 1 strategy");
  add_second_strategy(brute, a, "player 2 strategy");
  add_output_options(brute, a);

  auto* taxonomy = app.add_subcommand("taxonomy", "Payoff table of the a/b/m player types");
  add_game_options(taxonomy, a);
  add_output_options(taxonomy, a);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::string report;
    if (equilibrium->parsed()) report = run_equilibrium(a);
    else if (payoff->parsed()) report = run_payoff(a);
    else if (evs->parsed()) report = run_evs(a);
    else if (best->parsed()) report = run_best_response(a);
    else if (exploit->parsed()) report = run_exploit(a);
    else if (solve->parsed()) report = run_solve(a, err);
    else if (sweep->parsed()) report = run_sweep(a, err);
    else if (sim->parsed()) report = run_simulate(a, env);
    else if (brute->parsed()) report = run_brute_force(a);
    else if (taxonomy->parsed()) report = run_taxonomy(a);

    if (a.out.empty()) {
      out << report;
    } else {
      std::ofstream file(a.out, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + a.out + "'");
      file << report;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: invalid game config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StrategyError& e) {
    err << "error: invalid strategy: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace bluffsolve::cli
