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

#include "simuav/baselines.hpp"
#include "simuav/evolution.hpp"
#include "simuav/rng.hpp"

#include <doctest.h>

using namespace simuav;

namespace {

struct Setup {
    SimConfig cfg;
    SimStack stack;
    Scenario scenario;
    ChannelSet channels;
};

Setup make_setup(std::uint64_t seed, SimConfig cfg = {})
{
    Setup s;
    s.cfg = cfg;
    s.stack = SimStack::build(cfg);
    s.scenario = build_scenario(cfg, seed);
    s.channels = sample_channels(s.stack, s.scenario, cfg.effective_ref_gain(), seed + 500);
    return s;
}

// Capacity of a returned state, recomputed from scratch.
double recompute(const Setup& s, const State& st)
{
    return st.association.objective(sim_rates(s.stack, s.channels, LinkBudget::from(s.cfg), st));
}

void check_feasible(const Setup& s, const Solution& sol)
{
    CHECK(sol.termination != Termination::Error);
    CHECK(check_feasibility(sol.state.scenario).empty());
    CHECK(Association::is_valid(sol.state.association.matrix()));
    CHECK(sol.state.phases.in_range());
    CHECK(sol.state.phases.uavs() == s.cfg.num_uavs);
}

} // namespace

TEST_CASE("names")
{
    for (auto k : {BaselineKind::NoSim, BaselineKind::Random, BaselineKind::Uniform, BaselineKind::Pso,
                   BaselineKind::De})
        CHECK(parse_baseline(method_name(k)) == k);
    CHECK(!parse_baseline("ao"));
    auto spec = BaselineSpec::from(SimConfig{}, BaselineKind::Pso, 3);
    CHECK(spec.iterations == 50);
    CHECK(spec.population == 30);
    CHECK(spec.candidates == 100);
}

TEST_CASE("strip centres")
{
    auto one = uniform_positions(1, 1000);
    CHECK(one[0] == Eigen::Vector2d(500, 500));
    auto two = uniform_positions(2, 1000);
    CHECK(two[0].x() == 250);
    CHECK(two[1].x() == 750);
    auto three = uniform_positions(3, 1000);
    for (std::size_t u = 0; u < 3; ++u)
        for (std::size_t v = u + 1; v < 3; ++v)
            CHECK((three[u] - three[v]).norm() >= 100.0);
}

TEST_CASE("uniform deployment keeps the strip placement")
{
    auto s = make_setup(2);
    auto sol = uniform_deployment(s.cfg, s.stack, s.scenario, s.channels, 4);
    check_feasible(s, sol);
    auto q = uniform_positions(3, 1000);
    for (std::size_t u = 0; u < 3; ++u)
        CHECK(sol.state.scenario.uav_xy()[u] == q[u]);
    CHECK(sol.capacity == doctest::Approx(recompute(s, sol.state)).epsilon(1e-12));
    for (const auto& t : sol.trace)
        CHECK((t.block == "init" || t.block == "assoc" || t.block == "phase"));
}

TEST_CASE("random deployment")
{
    auto s = make_setup(3);
    auto one = random_solution(s.cfg, s.stack, s.scenario, s.channels, 8, 1);
    auto many = random_solution(s.cfg, s.stack, s.scenario, s.channels, 8, 100);
    auto again = random_solution(s.cfg, s.stack, s.scenario, s.channels, 8, 100);
    CHECK(many.capacity >= one.capacity);
    CHECK(many.trace.front().capacity == one.capacity);
    CHECK(many.capacity == again.capacity);
    CHECK(many.trace.size() == 100);
    for (std::size_t i = 1; i < many.trace.size(); ++i)
        CHECK(many.trace[i].capacity >= many.trace[i - 1].capacity);
    check_feasible(s, many);
    CHECK(many.state.association.size() == 3);
    CHECK(many.capacity == doctest::Approx(recompute(s, many.state)).epsilon(1e-12));
    CHECK_THROWS(random_solution(s.cfg, s.stack, s.scenario, s.channels, 8, 0));
}

TEST_CASE("without SIM, single link")
{
    SimConfig cfg;
    cfg.num_users = 1;
    cfg.num_uavs = 1;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto s = make_setup(seed, cfg);
        auto sol = without_sim_capacity(cfg, s.scenario, s.channels);
        const double d2 = sol.state.scenario.distance_sq(0, 0);
        const double expect = std::log2(1 + cfg.effective_ref_gain() * cfg.tx_power *
                                                std::norm(s.channels.h_tilde(0, 0)(0)) / (d2 * cfg.noise_power));
        CHECK(sol.capacity == doctest::Approx(expect).epsilon(1e-12));
        auto again = without_sim_capacity(cfg, s.scenario, s.channels);
        CHECK(again.capacity == sol.capacity);
    }
}

TEST_CASE("without SIM, paper setup")
{
    auto s = make_setup(6);
    auto sol = without_sim_capacity(s.cfg, s.scenario, s.channels);
    CHECK(sol.termination != Termination::Error);
    CHECK(check_feasibility(sol.state.scenario).empty());
    const auto rates = link_metrics(without_sim_power(s.channels), sol.state.scenario, LinkBudget::from(s.cfg)).rate;
    CHECK(sol.state.association.objective(rates) == doctest::Approx(sol.capacity).epsilon(1e-12));
}

TEST_CASE("evolutionary search on a toy problem")
{
    const std::vector<double> lo{-5, -5, -5}, hi{5, 5, 5}, inc{4, 4, 4};
    auto sphere = [](std::span<const double> x) {
        double v = 0.0;
        for (double c : x)
            v -= (c - 1) * (c - 1);
        return Fitness{v, x[0] >= -4.0};
    };
    for (auto kind : {EvoKind::Pso, EvoKind::De}) {
        Rng gen(1);
        auto r = evolve(kind, lo, hi, sphere, inc, EvoSettings{}, gen);
        CHECK(r.value > -1e-2);
        CHECK(r.value >= sphere(inc).value);
        CHECK(r.history.size() == 50);
        for (std::size_t i = 1; i < r.history.size(); ++i)
            CHECK(r.history[i] >= r.history[i - 1]);
        CHECK(sphere(r.best).feasible);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.best[i] >= lo[i]);
            CHECK(r.best[i] <= hi[i]);
        }
        Rng g2(1);
        CHECK(evolve(kind, lo, hi, sphere, inc, EvoSettings{}, g2).best == r.best);

        const std::vector<double> bad{-4.5, 0, 0};
        CHECK_THROWS(evolve(kind, lo, hi, sphere, bad, EvoSettings{}, gen));
    }
}

TEST_CASE("evolutionary baselines return feasible solutions")
{
    SimConfig cfg;
    cfg.evo_iters = 10;
    cfg.ao_max_iters = 3;
    auto s = make_setup(4, cfg);
    for (auto kind : {EvoKind::Pso, EvoKind::De}) {
        auto sol = evolutionary_optimize(cfg, s.stack, s.scenario, s.channels, kind, 2);
        check_feasible(s, sol);
        CHECK(sol.capacity == doctest::Approx(recompute(s, sol.state)).epsilon(1e-12));
        CHECK(sol.state.association.size() == 3);
        auto again = evolutionary_optimize(cfg, s.stack, s.scenario, s.channels, kind, 2);
        CHECK(again.capacity == sol.capacity);
        // Every block starts from the incumbent, so no block loses capacity.
        for (std::size_t i = 1; i < sol.trace.size(); ++i)
            CHECK(sol.trace[i].capacity >= sol.trace[i - 1].capacity - 1e-9);
    }
}
