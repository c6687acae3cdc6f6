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
#include "simuav/sim_physics.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace simuav {

// Split of the link gain around layer l: gain = F^H Phi^{lH} Lh, with
// F^H = w^H Phi^{1H} W^{2H} ... W^{lH} and Lh = W^{(l+1)H} Phi^{(l+1)H} ... Phi^{LH} h.
// Both are stored as column vectors (F, not F^H).
struct LayerPartials {
    Eigen::VectorXcd F;
    Eigen::VectorXcd Lh;
};

// `layer` is 1-based; `phases` holds the UAV's L * K shifts.
LayerPartials layer_partials(const SimStack& stack, std::span<const double> phases, std::size_t layer,
                             const Eigen::VectorXcd& h);

// F^H diag(e^{-j theta}) Lh.
cd partial_gain(const LayerPartials& p, std::span<const double> theta);

// Closed-form maximizer: aligns every summand of the gain to phase zero so
// that |gain| = sum_k |F_k| |Lh_k|. Entries with a zero factor keep the
// phase from `current`.
std::vector<double> update_layer(const LayerPartials& p, std::span<const double> current);

struct GainTraceRow {
    std::size_t uav = 0;
    std::size_t sweep = 0; // kappa, 1-based
    std::size_t layer = 0; // 1-based
    double gain = 0.0;     // |w^H G^H h| after the update
};

// kappa sweeps of layer-by-layer updates for one UAV, in place.
void optimize_uav_phases(const SimStack& stack, std::span<double> phases, const Eigen::VectorXcd& h,
                         std::size_t sweeps, std::size_t uav = 0, std::vector<GainTraceRow>* trace = nullptr);

// Every UAV with a served user steers towards that user's channel; idle
// UAVs keep their phases.
PhaseProfile optimize_phases(const SimStack& stack, const ChannelSet& channels, const Association& assoc,
                             const PhaseProfile& start, std::size_t sweeps,
                             std::vector<GainTraceRow>* trace = nullptr);

} // namespace simuav
