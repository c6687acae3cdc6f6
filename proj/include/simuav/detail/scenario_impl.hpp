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

#include <random>

namespace simuav {

template <class Gen>
std::vector<Eigen::Vector2d> sample_uav_positions(std::size_t count, double side, double d_min, Gen& gen)
{
    std::uniform_real_distribution<double> coord(0.0, side);
    std::vector<Eigen::Vector2d> out;
    out.reserve(count);
    // Whole-configuration rejection: a partial placement that boxes in the
    // remaining UAVs cannot stall the loop.
    for (std::size_t attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        out.clear();
        bool ok = true;
        for (std::size_t u = 0; u < count && ok; ++u) {
            Eigen::Vector2d q(coord(gen), coord(gen));
            for (const auto& prev : out) {
                if ((q - prev).norm() < d_min) {
                    ok = false;
                    break;
                }
            }
            out.push_back(q);
        }
        if (ok)
            return out;
    }
    throw PlacementError("could not place " + std::to_string(count) + " UAVs at pairwise distance >= " +
                         std::to_string(d_min) + " m in a " + std::to_string(side) + " m square after " +
                         std::to_string(kMaxPlacementAttempts) + " attempts");
}

} // namespace simuav
