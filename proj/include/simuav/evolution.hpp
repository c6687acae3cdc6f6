// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "simuav/rng.hpp"

#include <functional>
#include <span>
#include <vector>

namespace simuav {

enum class EvoKind { Pso, De };

struct Fitness {
    double value = 0.0; // penalized objective used for ranking (maximized)
    bool feasible = true;
};

using FitnessFn = std::function<Fitness(std::span<const double>)>;

struct EvoSettings {
    std::size_t population = 30;
    std::size_t iterations = 50;
    // PSO: constriction-equivalent inertia and acceleration constants.
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    // DE rand/1/bin.
    double scale = 0.5;
    double crossover = 0.9;
};

struct EvoResult {
    std::vector<double> best;    // best feasible point seen
    double value = 0.0;          // its fitness value
    std::vector<double> history; // best feasible value after each generation
};

// Box-constrained maximization. `incumbent` must be feasible; it seeds the
// population, so the result is never worse than it.
EvoResult evolve(EvoKind kind, std::span<const double> lower, std::span<const double> upper, const FitnessFn& fitness,
                 std::span<const double> incumbent, const EvoSettings& s, Rng& gen);

} // namespace simuav
