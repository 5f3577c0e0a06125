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

#ifndef BLUFFSOLVE_BLUFFSOLVE_HPP_
#define BLUFFSOLVE_BLUFFSOLVE_HPP_

#include "bluffsolve/analytic.hpp"
#include "bluffsolve/engine.hpp"
#include "bluffsolve/game.hpp"
#include "bluffsolve/montecarlo.hpp"
#include "bluffsolve/random.hpp"
#include "bluffsolve/report.hpp"
#include "bluffsolve/solver.hpp"
#include "bluffsolve/strategy.hpp"
#include "bluffsolve/strategy_io.hpp"

#endif  // BLUFFSOLVE_BLUFFSOLVE_HPP_
