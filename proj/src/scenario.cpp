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

#include "simuav/scenario.hpp"
#include "simuav/rng.hpp"

#include <sstream>

namespace simuav {

Scenario Scenario::with_uavs(const std::vector<Eigen::Vector2d>& xy) const
{
    Scenario s = *this;
    s.uavs.resize(xy.size());
    for (std::size_t u = 0; u < xy.size(); ++u)
        s.uavs[u] = Point(xy[u].x(), xy[u].y(), altitude);
    return s;
}

std::vector<Eigen::Vector2d> Scenario::uav_xy() const
{
    std::vector<Eigen::Vector2d> xy;
    xy.reserve(uavs.size());
    for (const auto& q : uavs)
        xy.emplace_back(q.x(), q.y());
    return xy;
}

std::string Violation::describe() const
{
    std::ostringstream o;
    switch (kind) {
    case Kind::SafetyDistance:
        o << "UAVs " << first << " and " << second << " are " << value << " m apart";
        break;
    case Kind::OutOfArea:
        o << "UAV " << first << " outside the area (coordinate " << value << ")";
        break;
    case Kind::Altitude:
        o << "UAV " << first << " not at the fixed altitude (z = " << value << ")";
        break;
    }
    return o.str();
}

Scenario build_scenario(const SimConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    Rng gen(substream(seed, "scenario"));
    std::uniform_real_distribution<double> coord(0.0, cfg.area_side);

    Scenario s;
    s.area_side = cfg.area_side;
    s.altitude = cfg.altitude;
    s.safety_distance = cfg.safety_distance;
    s.users.reserve(cfg.num_users);
    for (std::size_t m = 0; m < cfg.num_users; ++m) {
        double x = coord(gen);
        double y = coord(gen);
        s.users.emplace_back(x, y, 0.0);
    }
    return s.with_uavs(sample_uav_positions(cfg.num_uavs, cfg.area_side, cfg.safety_distance, gen));
}

std::vector<Violation> check_feasibility(const Scenario& s)
{
    std::vector<Violation> out;
    for (std::size_t u = 0; u < s.uavs.size(); ++u) {
        const auto& q = s.uavs[u];
        if (q.z() != s.altitude)
            out.push_back({Violation::Kind::Altitude, u, 0, q.z()});
        for (double c : {q.x(), q.y()}) {
            if (c < 0.0 || c > s.area_side) {
                out.push_back({Violation::Kind::OutOfArea, u, 0, c});
                break;
            }
        }
        for (std::size_t i = u + 1; i < s.uavs.size(); ++i) {
            double d = (q - s.uavs[i]).norm();
            if (d < s.safety_distance)
                out.push_back({Violation::Kind::SafetyDistance, u, i, d});
        }
    }
    return out;
}

} // namespace simuav
