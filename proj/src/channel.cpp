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

#include "simuav/channel.hpp"
#include "simuav/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace simuav {

Eigen::MatrixXd correlation_factor(const Eigen::MatrixXd& R)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
    if (eig.info() != Eigen::Success)
        throw FactorizationError("eigendecomposition of the correlation matrix failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -1e-6)
        throw FactorizationError("correlation matrix has eigenvalue " + std::to_string(lambda.minCoeff()));
    return eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

void ChannelSet::update_path_gains(const Scenario& s)
{
    path_gain.resize(static_cast<Eigen::Index>(users), static_cast<Eigen::Index>(uavs));
    realized.resize(normalized.size());
    for (std::size_t m = 0; m < users; ++m) {
        for (std::size_t u = 0; u < uavs; ++u) {
            const double beta = ref_gain / s.distance_sq(m, u);
            path_gain(m, u) = beta;
            realized[m * uavs + u] = std::sqrt(beta) * normalized[m * uavs + u];
        }
    }
}

ChannelSet sample_channels(const SimStack& stack, const Scenario& scenario, double ref_gain, std::uint64_t seed)
{
    ChannelSet ch;
    ch.users = scenario.num_users();
    ch.uavs = scenario.num_uavs();
    ch.ref_gain = ref_gain;
    ch.corr_factor = correlation_factor(stack.corr);

    const Eigen::Index K = static_cast<Eigen::Index>(stack.atoms());
    Rng gen(substream(seed, "channels"));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::VectorXcd z(K);
    ch.normalized.reserve(ch.users * ch.uavs);
    for (std::size_t m = 0; m < ch.users; ++m) {
        for (std::size_t u = 0; u < ch.uavs; ++u) {
            for (Eigen::Index k = 0; k < K; ++k) {
                const double re = normal(gen);
                const double im = normal(gen);
                z(k) = cd(re, im);
            }
            ch.normalized.push_back(ch.corr_factor * z);
        }
    }
    ch.update_path_gains(scenario);
    return ch;
}

cd effective_gain(const Eigen::VectorXcd& w, const Eigen::MatrixXcd& G, const Eigen::VectorXcd& h)
{
    if (G.rows() != w.size() || G.cols() != h.size())
        throw std::invalid_argument("effective_gain: dimension mismatch");
    return w.dot(G.adjoint() * h); // Eigen's dot conjugates the first argument
}

Eigen::MatrixXd normalized_gain_powers(const SimStack& stack, const ChannelSet& ch, const PhaseProfile& phases)
{
    Eigen::MatrixXd P(static_cast<Eigen::Index>(ch.users), static_cast<Eigen::Index>(ch.uavs));
    for (std::size_t u = 0; u < ch.uavs; ++u) {
        for (std::size_t m = 0; m < ch.users; ++m) {
            const cd g = stack.output_vec.dot(cascade_adjoint_apply(phases.uav(u), stack, ch.h_tilde(m, u)));
            P(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(u)) = std::norm(g);
        }
    }
    return P;
}

LinkBudget LinkBudget::from(const SimConfig& cfg)
{
    return {cfg.tx_power, cfg.noise_power, cfg.effective_ref_gain()};
}

double sinr(std::size_t m, std::size_t u, const Eigen::MatrixXcd& gains, const LinkBudget& b)
{
    const Eigen::Index col = static_cast<Eigen::Index>(u);
    double interference = 0.0;
    for (Eigen::Index i = 0; i < gains.rows(); ++i)
        if (i != static_cast<Eigen::Index>(m))
            interference += std::norm(gains(i, col)) * b.tx_power;
    return std::norm(gains(static_cast<Eigen::Index>(m), col)) * b.tx_power / (interference + b.noise_power);
}

double link_rate(double gamma) { return std::log2(1.0 + gamma); }

double network_capacity(const Association& a, const Eigen::MatrixXd& rates) { return a.objective(rates); }

LinkMetrics link_metrics(const Eigen::MatrixXd& normalized_power, const Scenario& s, const LinkBudget& b)
{
    const Eigen::Index M = normalized_power.rows();
    const Eigen::Index U = normalized_power.cols();
    LinkMetrics out;
    out.gain_power.resize(M, U);
    out.sinr.resize(M, U);
    out.rate.resize(M, U);
    for (Eigen::Index u = 0; u < U; ++u)
        for (Eigen::Index m = 0; m < M; ++m)
            out.gain_power(m, u) = b.ref_gain * normalized_power(m, u) /
                                   s.distance_sq(static_cast<std::size_t>(m), static_cast<std::size_t>(u));
    for (Eigen::Index u = 0; u < U; ++u) {
        for (Eigen::Index m = 0; m < M; ++m) {
            double interference = 0.0;
            for (Eigen::Index i = 0; i < M; ++i)
                if (i != m)
                    interference += out.gain_power(i, u) * b.tx_power;
            out.sinr(m, u) = out.gain_power(m, u) * b.tx_power / (interference + b.noise_power);
            out.rate(m, u) = link_rate(out.sinr(m, u));
        }
    }
    return out;
}

} // namespace simuav
