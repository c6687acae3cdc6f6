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

#include "simuav/config.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace simuav {

using Point = Eigen::Vector3d;

// Ground users at z = 0 and UAV-SIMs at z = H.
struct Scenario {
    std::vector<Point> users;
    std::vector<Point> uavs;
    double area_side = 0.0;
    double altitude = 0.0;
    double safety_distance = 0.0;

    std::size_t num_users() const { return users.size(); }
    std::size_t num_uavs() const { return uavs.size(); }

    double distance(std::size_t m, std::size_t u) const { return (uavs[u] - users[m]).norm(); }
    double distance_sq(std::size_t m, std::size_t u) const { return (uavs[u] - users[m]).squaredNorm(); }

    // Copy with UAV horizontal positions replaced; z stays at H.
    Scenario with_uavs(const std::vector<Eigen::Vector2d>& xy) const;
    std::vector<Eigen::Vector2d> uav_xy() const;
};

struct Violation {
    enum class Kind { SafetyDistance, OutOfArea, Altitude } kind;
    std::size_t first = 0;
    std::size_t second = 0; // only meaningful for SafetyDistance
    double value = 0.0;     // offending distance or coordinate
    std::string describe() const;
};

class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxPlacementAttempts = 10000;

// Users uniform in the square, UAVs rejection-sampled until every pair is at
// least d_min apart. Throws PlacementError after kMaxPlacementAttempts.
Scenario build_scenario(const SimConfig& cfg, std::uint64_t seed);

// Draws U feasible horizontal UAV positions; shared with the random baseline.
template <class Gen>
std::vector<Eigen::Vector2d> sample_uav_positions(std::size_t count, double side, double d_min, Gen& gen);

std::vector<Violation> check_feasibility(const Scenario& s);

} // namespace simuav

#include "simuav/detail/scenario_impl.hpp"
