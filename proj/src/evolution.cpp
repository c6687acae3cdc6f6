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

#include "simuav/evolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace simuav {

namespace {

struct Tracker {
    std::vector<double> best;
    double value = 0.0;
    bool any = false;

    void offer(std::span<const double> x, const Fitness& f)
    {
        if (f.feasible && (!any || f.value > value)) {
            best.assign(x.begin(), x.end());
            value = f.value;
            any = true;
        }
    }
};

} // namespace

EvoResult evolve(EvoKind kind, std::span<const double> lower, std::span<const double> upper, const FitnessFn& fitness,
                 std::span<const double> incumbent, const EvoSettings& s, Rng& gen)
{
    const std::size_t dim = lower.size();
    if (upper.size() != dim || incumbent.size() != dim)
        throw std::invalid_argument("evolve: bound/incumbent dimension mismatch");
    const std::size_t n = std::max<std::size_t>(s.population, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto clamp = [&](std::vector<double>& x) {
        for (std::size_t d = 0; d < dim; ++d)
            x[d] = std::clamp(x[d], lower[d], upper[d]);
    };

    std::vector<std::vector<double>> pop(n, std::vector<double>(dim));
    pop[0].assign(incumbent.begin(), incumbent.end());
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d)
            pop[i][d] = lower[d] + unit(gen) * (upper[d] - lower[d]);

    std::vector<Fitness> fit(n);
    fit[0] = fitness(pop[0]);
    if (!fit[0].feasible)
        throw std::invalid_argument("evolve: incumbent is infeasible");
    Tracker tracker;
    tracker.offer(pop[0], fit[0]);
    for (std::size_t i = 1; i < n; ++i) {
        fit[i] = fitness(pop[i]);
        tracker.offer(pop[i], fit[i]);
    }

    EvoResult out;
    if (kind == EvoKind::Pso) {
        std::vector<std::vector<double>> vel(n, std::vector<double>(dim, 0.0));
        auto pbest = pop;
        auto pbest_fit = fit;
        std::size_t g = static_cast<std::size_t>(
            std::max_element(fit.begin(), fit.end(), [](auto& a, auto& b) { return a.value < b.value; }) - fit.begin());
        std::vector<double> gbest = pbest[g];
        double gbest_value = pbest_fit[g].value;
        for (std::size_t it = 0; it < s.iterations; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t d = 0; d < dim; ++d) {
                    const double vmax = 0.5 * (upper[d] - lower[d]);
                    double v = s.inertia * vel[i][d] + s.cognitive * unit(gen) * (pbest[i][d] - pop[i][d]) +
                               s.social * unit(gen) * (gbest[d] - pop[i][d]);
                    vel[i][d] = std::clamp(v, -vmax, vmax);
                    pop[i][d] += vel[i][d];
                }
                clamp(pop[i]);
                fit[i] = fitness(pop[i]);
                tracker.offer(pop[i], fit[i]);
                if (fit[i].value > pbest_fit[i].value) {
                    pbest[i] = pop[i];
                    pbest_fit[i] = fit[i];
                    if (fit[i].value > gbest_value) {
                        gbest = pop[i];
                        gbest_value = fit[i].value;
                    }
                }
            }
            out.history.push_back(tracker.value);
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
        std::vector<double> trial(dim);
        for (std::size_t it = 0; it < s.iterations; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t r1, r2, r3;
                do { r1 = pick(gen); } while (r1 == i);
                do { r2 = pick(gen); } while (r2 == i || r2 == r1);
                do { r3 = pick(gen); } while (r3 == i || r3 == r1 || r3 == r2);
                const std::size_t forced = pick_dim(gen);
                for (std::size_t d = 0; d < dim; ++d) {
                    if (d == forced || unit(gen) < s.crossover)
                        trial[d] = pop[r1][d] + s.scale * (pop[r2][d] - pop[r3][d]);
                    else
                        trial[d] = pop[i][d];
                }
                clamp(trial);
                const Fitness f = fitness(trial);
                tracker.offer(trial, f);
                if (f.value >= fit[i].value) {
                    pop[i] = trial;
                    fit[i] = f;
                }
            }
            out.history.push_back(tracker.value);
        }
    }
    out.best = std::move(tracker.best);
    out.value = tracker.value;
    return out;
}

} // namespace simuav
