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
#include "simuav/config.hpp"
#include "simuav/scenario.hpp"
#include "simuav/sim_physics.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace simuav {

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// F with F F^T = R via symmetric eigendecomposition; negative eigenvalues
// are clamped to zero. Throws if any eigenvalue is below -1e-6.
Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& R);

// Per-pair correlated Rayleigh channels. The normalized fading h~ is fixed
// for a run; path gains follow the UAV positions.
struct ChannelSet {
    std::size_t users = 0;
    std::size_t uavs = 0;
    double ref_gain = 0.0;
    std::vector<Eigen::VectorXcd> normalized; // h~, index m * U + u
    Eigen::MatrixXd path_gain;                // beta, M x U
    std::vector<Eigen::VectorXcd> realized;   // h = sqrt(beta) h~
    Eigen::MatrixXd corr_factor;

    const Eigen::VectorXcd& h_tilde(std::size_t m, std::size_t u) const { return normalized[m * uavs + u]; }
    const Eigen::VectorXcd& h(std::size_t m, std::size_t u) const { return realized[m * uavs + u]; }

    // beta = rho0 / d^2 for the scenario's current UAV positions.
    void update_path_gains(const Scenario& s);
};

ChannelSet sample_channels(const SimStack& stack, const Scenario& scenario, double ref_gain, std::uint64_t seed);

// w^H G^H h.
cd effective_gain(const Eigen::VectorXcd& w, const Eigen::MatrixXcd& G, const Eigen::VectorXcd& h);

// |w^H G_u^H h~_{m,u}|^2 for every pair: the position-independent part of
// the link power.
Eigen::MatrixXd normalized_gain_powers(const SimStack& stack, const ChannelSet& ch, const PhaseProfile& phases);

struct LinkBudget {
    double tx_power = 0.0;
    double noise_power = 0.0;
    double ref_gain = 0.0;
    static LinkBudget from(const SimConfig& cfg);
};

// SINR of user m at UAV u given the received powers |g_{m',u}|^2 p of all
// users at that UAV (column u of `gains`). Every other user interferes.
double sinr(std::size_t m, std::size_t u, const Eigen::MatrixXcd& gains, const LinkBudget& b);

double link_rate(double gamma);

// Throws std::invalid_argument when shapes disagree.
double network_capacity(const Association& a, const Eigen::MatrixXd& rates);

struct LinkMetrics {
    Eigen::MatrixXd gain_power; // |g|^2, M x U
    Eigen::MatrixXd sinr;
    Eigen::MatrixXd rate;
};

// Rates from |g~|^2 and the geometry: |g|^2 = rho0 |g~|^2 / d^2.
LinkMetrics link_metrics(const Eigen::MatrixXd& normalized_power, const Scenario& s, const LinkBudget& b);

} // namespace simuav
