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
#include "simuav/phase.hpp"

#include <cmath>
#include <numbers>

namespace simuav {

const char* method_name(BaselineKind k)
{
    switch (k) {
    case BaselineKind::NoSim:
        return "nosim";
    case BaselineKind::Random:
        return "rd";
    case BaselineKind::Uniform:
        return "ud";
    case BaselineKind::Pso:
        return "pso";
    case BaselineKind::De:
        return "de";
    }
    return "unknown";
}

std::optional<BaselineKind> parse_baseline(const std::string& name)
{
    for (auto k : {BaselineKind::NoSim, BaselineKind::Random, BaselineKind::Uniform, BaselineKind::Pso,
                   BaselineKind::De})
        if (name == method_name(k))
            return k;
    return std::nullopt;
}

BaselineSpec BaselineSpec::from(const SimConfig& cfg, BaselineKind kind, std::uint64_t seed)
{
    return {kind, cfg.evo_iters, cfg.evo_population, cfg.rd_candidates, seed};
}

Positions uniform_positions(std::size_t uavs, double side)
{
    Positions q;
    const double width = side / static_cast<double>(uavs);
    for (std::size_t u = 0; u < uavs; ++u)
        q.emplace_back((static_cast<double>(u) + 0.5) * width, 0.5 * side);
    return q;
}

Solution uniform_deployment(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                            const ChannelSet& channels, std::uint64_t seed)
{
    const LinkBudget budget = LinkBudget::from(cfg);
    ChannelSet ch = channels;
    State s{scenario.with_uavs(uniform_positions(cfg.num_uavs, cfg.area_side)),
            PhaseProfile::random(cfg.num_uavs, cfg.layers, cfg.atoms_per_layer, substream(seed, "init-phases")),
            Association(cfg.num_users, cfg.num_uavs)};
    ch.update_path_gains(s.scenario);

    std::vector<Block> blocks{
        {"assoc", [&](State& st) { st.association = solve_association(sim_rates(stack, ch, budget, st)); }},
        {"phase",
         [&](State& st) { st.phases = optimize_phases(stack, ch, st.association, st.phases, cfg.phase_iters); }},
    };
    return run_alternating(std::move(s), blocks, [&](const State& st) { return sim_rates(stack, ch, budget, st); },
                           cfg.ao_tolerance, cfg.ao_max_iters);
}

Solution random_solution(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                         const ChannelSet& channels, std::uint64_t seed, std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("random_solution needs at least one candidate");
    const LinkBudget budget = LinkBudget::from(cfg);
    Rng gen(substream(seed, "rd"));

    Solution sol;
    sol.termination = Termination::MaxIters;
    for (std::size_t i = 1; i <= count; ++i) {
        State s;
        s.scenario = scenario.with_uavs(sample_uav_positions(cfg.num_uavs, cfg.area_side, cfg.safety_distance, gen));
        s.association = random_association(cfg.num_users, cfg.num_uavs, gen);
        s.phases = PhaseProfile::random(cfg.num_uavs, cfg.layers, cfg.atoms_per_layer, gen());
        const double r = s.association.objective(sim_rates(stack, channels, budget, s));
        if (i == 1 || r > sol.capacity) {
            sol.capacity = r;
            sol.state = std::move(s);
        }
        sol.trace.push_back({i, "sample", sol.capacity});
    }
    sol.iterations = count;
    return sol;
}

Eigen::MatrixXd without_sim_power(const ChannelSet& channels)
{
    Eigen::MatrixXd P(static_cast<Eigen::Index>(channels.users), static_cast<Eigen::Index>(channels.uavs));
    for (std::size_t m = 0; m < channels.users; ++m)
        for (std::size_t u = 0; u < channels.uavs; ++u)
            P(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(u)) = std::norm(channels.h_tilde(m, u)(0));
    return P;
}

Solution without_sim_capacity(const SimConfig& cfg, const Scenario& scenario, const ChannelSet& channels)
{
    const LinkBudget budget = LinkBudget::from(cfg);
    const LocationSettings settings = location_settings(cfg);
    const Eigen::MatrixXd power = without_sim_power(channels);
    auto rates = [&](const State& st) { return link_metrics(power, st.scenario, budget).rate; };

    State s{scenario, PhaseProfile{}, Association(cfg.num_users, cfg.num_uavs)};
    std::vector<Block> blocks{
        {"assoc", [&](State& st) { st.association = solve_association(rates(st)); }},
        {"loc",
         [&](State& st) {
             const auto problem = make_location_problem(cfg, st.scenario, power, st.association);
             st.scenario = st.scenario.with_uavs(optimize_locations(problem, st.scenario.uav_xy(), settings).q);
         }},
    };
    return run_alternating(std::move(s), blocks, rates, cfg.ao_tolerance, cfg.ao_max_iters);
}

namespace {

// Decodes U reals in [0, M] to distinct users: floor, then the next free
// user cyclically on collision.
std::vector<int> decode_association(std::span<const double> x, std::size_t users)
{
    std::vector<char> taken(users, 0);
    std::vector<int> out(x.size(), -1);
    for (std::size_t u = 0; u < x.size() && u < users; ++u) {
        auto m = static_cast<std::size_t>(std::clamp(std::floor(x[u]), 0.0, static_cast<double>(users - 1)));
        while (taken[m])
            m = (m + 1) % users;
        taken[m] = 1;
        out[u] = static_cast<int>(m);
    }
    return out;
}

double separation_violation(const Positions& q, double d_min)
{
    double v = 0.0;
    for (std::size_t u = 0; u < q.size(); ++u)
        for (std::size_t i = u + 1; i < q.size(); ++i)
            v += std::max(0.0, d_min - (q[u] - q[i]).norm());
    return v;
}

} // namespace

Solution evolutionary_optimize(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                               const ChannelSet& channels, EvoKind kind, std::uint64_t seed)
{
    const LinkBudget budget = LinkBudget::from(cfg);
    const std::size_t M = cfg.num_users, U = cfg.num_uavs, L = cfg.layers, K = cfg.atoms_per_layer;
    EvoSettings es;
    es.population = cfg.evo_population;
    es.iterations = cfg.evo_iters;
    Rng gen(substream(seed, kind == EvoKind::Pso ? "pso" : "de"));
    auto rates = [&](const State& st) { return sim_rates(stack, channels, budget, st); };

    State s{scenario, PhaseProfile::random(U, L, K, substream(seed, "init-phases")), Association(M, U)};

    auto assoc_block = [&](State& st) {
        const Eigen::MatrixXd r = rates(st);
        std::vector<double> lo(U, 0.0), hi(U, static_cast<double>(M) - 1e-9), inc(U);
        std::vector<char> used(M, 0);
        for (std::size_t u = 0; u < U; ++u) {
            if (auto m = st.association.user_of(u)) {
                inc[u] = static_cast<double>(*m) + 0.5;
                used[*m] = 1;
            }
        }
        // Idle UAVs in the incumbent get any unused user; rates are >= 0 so
        // that never lowers the objective.
        for (std::size_t u = 0; u < U; ++u) {
            if (!st.association.user_of(u)) {
                std::size_t m = 0;
                while (used[m])
                    ++m;
                used[m] = 1;
                inc[u] = static_cast<double>(m) + 0.5;
            }
        }
        auto fit = [&](std::span<const double> x) {
            return Fitness{Association::from_uav_users(M, decode_association(x, M)).objective(r), true};
        };
        const auto res = evolve(kind, lo, hi, fit, inc, es, gen);
        st.association = Association::from_uav_users(M, decode_association(res.best, M));
    };

    auto loc_block = [&](State& st) {
        const auto power = normalized_gain_powers(stack, channels, st.phases);
        const auto problem = make_location_problem(cfg, st.scenario, power, st.association);
        std::vector<double> lo(2 * U, 0.0), hi(2 * U, cfg.area_side), inc;
        for (const auto& q : st.scenario.uav_xy()) {
            inc.push_back(q.x());
            inc.push_back(q.y());
        }
        auto unpack = [&](std::span<const double> x) {
            Positions q(U);
            for (std::size_t u = 0; u < U; ++u)
                q[u] = Eigen::Vector2d(x[2 * u], x[2 * u + 1]);
            return q;
        };
        auto fit = [&](std::span<const double> x) {
            const Positions q = unpack(x);
            const double viol = separation_violation(q, cfg.safety_distance);
            return Fitness{location_capacity(problem, q) - 1e3 * viol, viol == 0.0};
        };
        const auto res = evolve(kind, lo, hi, fit, inc, es, gen);
        st.scenario = st.scenario.with_uavs(unpack(res.best));
    };

    auto phase_block = [&](State& st) {
        const double two_pi = 2.0 * std::numbers::pi;
        std::vector<double> lo(U * L * K, 0.0), hi(U * L * K, two_pi);
        State trial = st;
        auto fit = [&](std::span<const double> x) {
            for (std::size_t i = 0; i < x.size(); ++i)
                trial.phases.raw()[i] = wrap_phase(x[i]);
            return Fitness{trial.association.objective(rates(trial)), true};
        };
        const auto res = evolve(kind, lo, hi, fit, st.phases.raw(), es, gen);
        for (std::size_t i = 0; i < res.best.size(); ++i)
            st.phases.raw()[i] = wrap_phase(res.best[i]);
    };

    std::vector<Block> blocks{{"assoc", assoc_block}, {"loc", loc_block}, {"phase", phase_block}};
    return run_alternating(std::move(s), blocks, rates, cfg.ao_tolerance, cfg.ao_max_iters);
}

} // namespace simuav
