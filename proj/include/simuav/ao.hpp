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

#include "simuav/association.hpp"
#include "simuav/channel.hpp"
#include "simuav/config.hpp"
#include "simuav/location.hpp"
#include "simuav/phase.hpp"
#include "simuav/scenario.hpp"
#include "simuav/sim_physics.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace simuav {

// Decision variables of the joint problem.
struct State {
    Scenario scenario; // carries the UAV positions Q
    PhaseProfile phases;
    Association association;
};

struct TraceRow {
    std::size_t tau = 0;
    std::string block; // "init", "assoc", "loc", "phase", ...
    double capacity = 0.0;
};

enum class Termination { Converged, MaxIters, Error };
const char* to_string(Termination t);

struct Solution {
    State state;
    double capacity = 0.0; // best value over all visited iterates
    std::vector<TraceRow> trace;
    std::size_t iterations = 0;
    Termination termination = Termination::MaxIters;
    std::string error;
};

// One block of an alternating scheme: updates part of the state in place.
struct Block {
    std::string name;
    std::function<void(State&)> apply;
};

using RateFn = std::function<Eigen::MatrixXd(const State&)>;

// Cycles through `blocks` until the capacity gain of a full sweep is at most
// `tolerance` or `max_iters` sweeps ran. Capacity is always
// association.objective(rates(state)). Returns the best visited state; the
// trace keeps the raw per-block sequence. Exceptions from a block end the
// run with Termination::Error and the partial trace.
Solution run_alternating(State init, const std::vector<Block>& blocks, const RateFn& rates, double tolerance,
                         std::size_t max_iters);

// Rates for SIM-equipped UAVs under the state's phases and positions.
Eigen::MatrixXd sim_rates(const SimStack& stack, const ChannelSet& channels, const LinkBudget& budget,
                          const State& s);

// Placement sub-problem for frozen association and normalized link powers.
LocationProblem make_location_problem(const SimConfig& cfg, const Scenario& s, const Eigen::MatrixXd& normalized_power,
                                      const Association& a);
LocationSettings location_settings(const SimConfig& cfg);

struct Initialization {
    Positions uavs;
    PhaseProfile phases;
};

// Q^0 from the scenario's placement; phases i.i.d. uniform in [0, 2 pi).
Initialization initialize(const SimConfig& cfg, const Scenario& scenario, std::uint64_t seed);

// Per-step traces of the placement and phase sub-solvers, tagged with the
// AO iteration they belong to.
struct AoDiagnostics {
    struct Sca {
        std::size_t tau;
        ScaTraceRow row;
    };
    struct Gain {
        std::size_t tau;
        GainTraceRow row;
    };
    std::vector<Sca> sca;
    std::vector<Gain> gains;
};

// Association, then placement (SCA), then layer-by-layer phases.
Solution run_ao(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario, const ChannelSet& channels,
                std::uint64_t init_seed, AoDiagnostics* diagnostics = nullptr);

} // namespace simuav
