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

#include "simuav/ao.hpp"
#include "simuav/rng.hpp"

#include <limits>

namespace simuav {

const char* to_string(Termination t)
{
    switch (t) {
    case Termination::Converged:
        return "converged";
    case Termination::MaxIters:
        return "max_iters";
    case Termination::Error:
        return "error";
    }
    return "unknown";
}

Solution run_alternating(State init, const std::vector<Block>& blocks, const RateFn& rates, double tolerance,
                         std::size_t max_iters)
{
    Solution sol;
    State s = std::move(init);
    auto capacity = [&](const State& st) { return st.association.objective(rates(st)); };

    // The caller's initial state has no meaningful association yet.
    s.association = solve_association(rates(s));
    double previous = capacity(s);
    sol.trace.push_back({0, "init", previous});
    sol.state = s;
    sol.capacity = previous;

    auto keep_best = [&](double r) {
        if (r > sol.capacity) {
            sol.capacity = r;
            sol.state = s;
        }
    };

    try {
        for (std::size_t tau = 1; tau <= max_iters; ++tau) {
            double r = previous;
            for (const auto& b : blocks) {
                b.apply(s);
                r = capacity(s);
                sol.trace.push_back({tau, b.name, r});
                keep_best(r);
            }
            sol.iterations = tau;
            if (r - previous <= tolerance) {
                sol.termination = Termination::Converged;
                return sol;
            }
            previous = r;
        }
        sol.termination = Termination::MaxIters;
    } catch (const std::exception& e) {
        sol.termination = Termination::Error;
        sol.error = e.what();
    }
    return sol;
}

Eigen::MatrixXd sim_rates(const SimStack& stack, const ChannelSet& channels, const LinkBudget& budget,
                          const State& s)
{
    return link_metrics(normalized_gain_powers(stack, channels, s.phases), s.scenario, budget).rate;
}

LocationProblem make_location_problem(const SimConfig& cfg, const Scenario& s, const Eigen::MatrixXd& normalized_power,
                                      const Association& a)
{
    LocationProblem p;
    for (const auto& u : s.users)
        p.users.emplace_back(u.x(), u.y());
    p.weight = cfg.effective_ref_gain() * cfg.tx_power * normalized_power;
    p.user_of_uav.resize(s.num_uavs());
    for (std::size_t u = 0; u < s.num_uavs(); ++u) {
        auto m = a.user_of(u);
        p.user_of_uav[u] = m ? static_cast<int>(*m) : -1;
    }
    p.altitude = s.altitude;
    p.area_side = s.area_side;
    p.safety_distance = s.safety_distance;
    p.noise_power = cfg.noise_power;
    p.slack_floor = cfg.sca_slack_floor;
    return p;
}

LocationSettings location_settings(const SimConfig& cfg)
{
    LocationSettings ls;
    ls.max_outer = cfg.sca_max_iters;
    ls.max_inner = cfg.sca_inner_max_iters;
    ls.inner_tolerance = cfg.sca_inner_tolerance;
    ls.position_tolerance = cfg.sca_position_tolerance;
    return ls;
}

Initialization initialize(const SimConfig& cfg, const Scenario& scenario, std::uint64_t seed)
{
    return {scenario.uav_xy(), PhaseProfile::random(cfg.num_uavs, cfg.layers, cfg.atoms_per_layer,
                                                    substream(seed, "init-phases"))};
}

Solution run_ao(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario, const ChannelSet& channels,
                std::uint64_t init_seed, AoDiagnostics* diagnostics)
{
    const LinkBudget budget = LinkBudget::from(cfg);
    const LocationSettings settings = location_settings(cfg);
    // Path gains track the UAVs; h~ stays fixed for the run.
    ChannelSet ch = channels;

    auto init = initialize(cfg, scenario, init_seed);
    State s{scenario.with_uavs(init.uavs), std::move(init.phases), Association(cfg.num_users, cfg.num_uavs)};
    ch.update_path_gains(s.scenario);
    std::size_t tau = 0;

    std::vector<Block> blocks{
        {"assoc",
         [&](State& st) {
             ++tau;
             st.association = solve_association(sim_rates(stack, ch, budget, st));
         }},
        {"loc",
         [&](State& st) {
             const auto power = normalized_gain_powers(stack, ch, st.phases);
             const auto problem = make_location_problem(cfg, st.scenario, power, st.association);
             const auto result = optimize_locations(problem, st.scenario.uav_xy(), settings);
             if (diagnostics)
                 for (const auto& row : result.trace)
                     diagnostics->sca.push_back({tau, row});
             st.scenario = st.scenario.with_uavs(result.q);
             ch.update_path_gains(st.scenario);
         }},
        {"phase",
         [&](State& st) {
             ch.update_path_gains(st.scenario);
             std::vector<GainTraceRow> rows;
             st.phases = optimize_phases(stack, ch, st.association, st.phases, cfg.phase_iters,
                                         diagnostics ? &rows : nullptr);
             if (diagnostics)
                 for (const auto& row : rows)
                     diagnostics->gains.push_back({tau, row});
         }},
    };
    return run_alternating(std::move(s), blocks, [&](const State& st) { return sim_rates(stack, ch, budget, st); },
                           cfg.ao_tolerance, cfg.ao_max_iters);
}

} // namespace simuav
