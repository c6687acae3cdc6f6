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

#include "simuav/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace simuav {

LayerPartials layer_partials(const SimStack& stack, std::span<const double> phases, std::size_t layer,
                             const Eigen::VectorXcd& h)
{
    const std::size_t K = stack.atoms();
    const std::size_t L = stack.layers;
    if (layer < 1 || layer > L)
        throw std::out_of_range("layer index outside [1, L]");
    if (phases.size() != L * K || static_cast<std::size_t>(h.size()) != K)
        throw std::invalid_argument("layer_partials: dimension mismatch");

    LayerPartials p;
    // F = W^l Phi^{l-1} ... W^2 Phi^1 w
    p.F = stack.output_vec;
    for (std::size_t j = 1; j < layer; ++j) {
        p.F = layer_coefficients(phases.subspan((j - 1) * K, K)).cwiseProduct(p.F);
        p.F = stack.W(j + 1) * p.F;
    }
    // Lh = W^{(l+1)H} Phi^{(l+1)H} ... W^{LH} Phi^{LH} h
    p.Lh = h;
    for (std::size_t j = L; j > layer; --j) {
        p.Lh = layer_coefficients(phases.subspan((j - 1) * K, K)).conjugate().cwiseProduct(p.Lh);
        p.Lh = stack.W(j).adjoint() * p.Lh;
    }
    return p;
}

cd partial_gain(const LayerPartials& p, std::span<const double> theta)
{
    cd g = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        g += std::conj(p.F(i)) * std::polar(1.0, -theta[k]) * p.Lh(i);
    }
    return g;
}

std::vector<double> update_layer(const LayerPartials& p, std::span<const double> current)
{
    std::vector<double> theta(current.begin(), current.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        if (p.F(i) == 0.0 || p.Lh(i) == 0.0)
            continue;
        // conj(F) e^{-j theta} Lh is real positive when theta = arg Lh - arg F.
        theta[k] = wrap_phase(std::arg(p.Lh(i)) - std::arg(p.F(i)));
    }
    return theta;
}

void optimize_uav_phases(const SimStack& stack, std::span<double> phases, const Eigen::VectorXcd& h,
                         std::size_t sweeps, std::size_t uav, std::vector<GainTraceRow>* trace)
{
    const std::size_t K = stack.atoms();
    for (std::size_t kappa = 1; kappa <= sweeps; ++kappa) {
        for (std::size_t l = 1; l <= stack.layers; ++l) {
            const auto partials = layer_partials(stack, phases, l, h);
            auto layer = phases.subspan((l - 1) * K, K);
            const auto updated = update_layer(partials, layer);
            std::copy(updated.begin(), updated.end(), layer.begin());
            if (trace)
                trace->push_back({uav, kappa, l, std::abs(partial_gain(partials, layer))});
        }
    }
}

PhaseProfile optimize_phases(const SimStack& stack, const ChannelSet& channels, const Association& assoc,
                             const PhaseProfile& start, std::size_t sweeps, std::vector<GainTraceRow>* trace)
{
    PhaseProfile out = start;
    for (std::size_t u = 0; u < out.uavs(); ++u) {
        const auto m = assoc.user_of(u);
        if (!m)
            continue;
        optimize_uav_phases(stack, out.uav(u), channels.h(*m, u), sweeps, u, trace);
    }
    return out;
}

} // namespace simuav
