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

#ifndef BLUFFSOLVE_REPORT_HPP_
#define BLUFFSOLVE_REPORT_HPP_

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "bluffsolve/analytic.hpp"
#include "bluffsolve/montecarlo.hpp"
#include "bluffsolve/solver.hpp"

namespace bluffsolve {

using Json = nlohmann::ordered_json;

// 17 significant digits: enough for every double to parse back exactly.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline Json to_json(const RegimeBreakdown& r) {
  return Json{{"high_high", r.high_high},
              {"high_low", r.high_low},
              {"low_high", r.low_high},
              {"low_low", r.low_low}};
}

inline Json to_json(const PayoffValue& v) {
  return Json{{"value", v.value}, {"regimes", to_json(v.regimes)}};
}

inline Json to_json(const MCEstimate& e) {
  return Json{{"mean", e.mean},           {"std_err", e.std_error},
              {"hands", e.hands},         {"replay_rate", e.replay_rate},
              {"seed", e.seed},           {"chunk_size", e.chunk_size}};
}

inline Json to_json(const ExactDiscreteValue& v) {
  return Json{{"value", v.value_as_double()},
              {"value_exact", v.value.str()},
              {"replay_probability", v.replay_probability_as_double()},
              {"replay_probability_exact", v.replay_probability.str()}};
}

inline Json to_json(const SweepRow& r) {
  return Json{{"ratio", r.ratio},
              {"t_star", r.t_star},
              {"p_star", r.p_star},
              {"exploitability", r.exploitability},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"closed_form_exploitability", r.closed_form_exploitability}};
}

inline void write_csv_header(std::ostream& out,
                             std::initializer_list<const char*> columns) {
  bool first = true;
  for (const char* c : columns) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

inline void write_estimates_csv(std::ostream& out,
                                std::span<const MCEstimate> rows) {
  write_csv_header(out, {"hands", "mean", "std_err", "replay_rate", "seed"});
  for (const auto& e : rows) {
    out << e.hands << ',' << format_double(e.mean) << ','
        << format_double(e.std_error) << ',' << format_double(e.replay_rate)
        << ',' << e.seed << '\n';
  }
}

inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  write_csv_header(out,
                   {"ratio", "t_star", "p_star", "exploitability", "iterations"});
  for (const auto& r : rows) {
    out << format_double(r.ratio) << ',' << format_double(r.t_star) << ','
        << format_double(r.p_star) << ',' << format_double(r.exploitability)
        << ',' << r.iterations << '\n';
  }
}

// Samples both EV curves at `points` evenly spaced cards in [0, 1].
inline void write_evs_csv(std::ostream& out, const ConditionalEV& evs,
                          std::size_t points) {
  write_csv_header(out, {"v", "ev_high", "ev_low"});
  for (std::size_t k = 0; k < points; ++k) {
    const double v = points == 1 ? 0.0
                                 : static_cast<double>(k) /
                                       static_cast<double>(points - 1);
    out << format_double(v) << ',' << format_double(evs.high(v)) << ','
        << format_double(evs.low(v)) << '\n';
  }
}

}  // namespace bluffsolve

#endif  // BLUFFSOLVE_REPORT_HPP_
