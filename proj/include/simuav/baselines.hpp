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

#include "simuav/ao.hpp"
#include "simuav/evolution.hpp"

#include <optional>
#include <string>

namespace simuav {

enum class BaselineKind { NoSim, Random, Uniform, Pso, De };

const char* method_name(BaselineKind k);
std::optional<BaselineKind> parse_baseline(const std::string& name);

struct BaselineSpec {
    BaselineKind kind = BaselineKind::Uniform;
    std::size_t iterations = 50; // PSO/DE generations per sub-problem
    std::size_t population = 30;
    std::size_t candidates = 100; // RD
    std::uint64_t seed = 0;

    static BaselineSpec from(const SimConfig& cfg, BaselineKind kind, std::uint64_t seed);
};

// Strip centres: UAV u at ((u + 1/2) side / U, side / 2).
Positions uniform_positions(std::size_t uavs, double side);

// Fixed strip placement; association and phases alternate as in AO.
Solution uniform_deployment(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                            const ChannelSet& channels, std::uint64_t seed);

// Best of `count` independent random feasible (Q, A, phases) triples.
Solution random_solution(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                         const ChannelSet& channels, std::uint64_t seed, std::size_t count);

// Bare single-antenna UAVs: scalar channel sqrt(beta) h~_1 per pair, no
// SIM gain or phases. Association and placement are still optimized.
Eigen::MatrixXd without_sim_power(const ChannelSet& channels);
Solution without_sim_capacity(const SimConfig& cfg, const Scenario& scenario, const ChannelSet& channels);

// Same alternating structure as AO with every sub-problem handed to PSO or DE.
Solution evolutionary_optimize(const SimConfig& cfg, const SimStack& stack, const Scenario& scenario,
                               const ChannelSet& channels, EvoKind kind, std::uint64_t seed);

// Random one-to-one association that serves min(M, U) users.
template <class Gen>
Association random_association(std::size_t users, std::size_t uavs, Gen& gen);

} // namespace simuav

#include <algorithm>
#include <numeric>

namespace simuav {

template <class Gen>
Association random_association(std::size_t users, std::size_t uavs, Gen& gen)
{
    std::vector<int> perm(users);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<int> user_of_uav(uavs, -1);
    for (std::size_t u = 0; u < std::min(users, uavs); ++u)
        user_of_uav[u] = perm[u];
    return Association::from_uav_users(users, user_of_uav);
}

} // namespace simuav
