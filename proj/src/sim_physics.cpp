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

#include "simuav/sim_physics.hpp"
#include "simuav/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace simuav {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x)
{
    const double px = std::numbers::pi * x;
    if (std::abs(x) < 1e-6)
        return 1.0 - px * px / 6.0;
    return std::sin(px) / px;
}

std::pair<std::size_t, std::size_t> atom_index(std::size_t k, std::size_t k_max)
{
    if (k_max == 0 || k < 1 || k > k_max * k_max)
        throw std::out_of_range("atom index " + std::to_string(k) + " outside [1, " +
                                std::to_string(k_max * k_max) + "]");
    return {(k - 1) % k_max + 1, (k + k_max - 1) / k_max};
}

double pair_distance(std::size_t k, std::size_t k2, double spacing, std::size_t k_max, double layer_offset)
{
    if (layer_offset < 0.0)
        throw std::invalid_argument("layer offset must be non-negative");
    auto [kx, ky] = atom_index(k, k_max);
    auto [jx, jy] = atom_index(k2, k_max);
    const double dx = static_cast<double>(kx) - static_cast<double>(jx);
    const double dy = static_cast<double>(ky) - static_cast<double>(jy);
    const double lateral = spacing * std::sqrt(dx * dx + dy * dy);
    return std::sqrt(lateral * lateral + layer_offset * layer_offset);
}

cd propagation_coefficient(double s, double cos_chi, double atom_area, double wavelength)
{
    if (!(s > 0.0))
        throw std::invalid_argument("propagation distance must be positive (coincident points)");
    const double amp = atom_area * cos_chi / s;
    const cd factor(1.0 / (kTwoPi * s), -1.0 / wavelength);
    return amp * factor * std::polar(1.0, kTwoPi * s / wavelength);
}

Geometry Geometry::from(const SimConfig& cfg)
{
    cfg.validate();
    Geometry g;
    g.k_max = cfg.k_max();
    g.spacing = cfg.effective_atom_spacing();
    g.layer_spacing = cfg.layer_spacing();
    g.atom_area = cfg.effective_atom_area();
    g.wavelength = cfg.wavelength;
    g.antenna_offset = cfg.effective_antenna_offset();
    return g;
}

Eigen::MatrixXcd build_inter_layer_matrix(const Geometry& g)
{
    const std::size_t K = g.atoms();
    const double r = g.layer_spacing;
    Eigen::MatrixXcd W(K, K);
    for (std::size_t k = 1; k <= K; ++k) {
        for (std::size_t j = 1; j <= K; ++j) {
            const double s = pair_distance(k, j, g.spacing, g.k_max, r);
            W(k - 1, j - 1) = propagation_coefficient(s, r / s, g.atom_area, g.wavelength);
        }
    }
    return W;
}

Eigen::VectorXcd build_output_vector(const Geometry& g)
{
    if (!(g.antenna_offset > 0.0))
        throw std::invalid_argument("antenna offset must be positive");
    const std::size_t K = g.atoms();
    const double center = 0.5 * (static_cast<double>(g.k_max) + 1.0);
    const double d = g.antenna_offset;
    Eigen::VectorXcd w(K);
    for (std::size_t k = 1; k <= K; ++k) {
        auto [kx, ky] = atom_index(k, g.k_max);
        const double dx = g.spacing * (static_cast<double>(kx) - center);
        const double dy = g.spacing * (static_cast<double>(ky) - center);
        const double s = std::sqrt(dx * dx + dy * dy + d * d);
        w(k - 1) = propagation_coefficient(s, d / s, g.atom_area, g.wavelength);
    }
    return w;
}

Eigen::MatrixXd build_correlation_matrix(const Geometry& g)
{
    const std::size_t K = g.atoms();
    Eigen::MatrixXd R(K, K);
    for (std::size_t k = 1; k <= K; ++k) {
        R(k - 1, k - 1) = 1.0;
        for (std::size_t j = k + 1; j <= K; ++j) {
            const double v = sinc(2.0 * pair_distance(k, j, g.spacing, g.k_max, 0.0) / g.wavelength);
            R(k - 1, j - 1) = v;
            R(j - 1, k - 1) = v;
        }
    }
    return R;
}

SimStack SimStack::build(const SimConfig& cfg)
{
    SimStack s;
    s.geometry = Geometry::from(cfg);
    s.layers = cfg.layers;
    if (s.layers > 1) {
        const Eigen::MatrixXcd W = build_inter_layer_matrix(s.geometry);
        s.inter_layer.assign(s.layers - 1, W);
    }
    s.output_vec = build_output_vector(s.geometry);
    s.corr = build_correlation_matrix(s.geometry);
    return s;
}

PhaseProfile::PhaseProfile(std::size_t uavs, std::size_t layers, std::size_t atoms)
    : uavs_(uavs), layers_(layers), atoms_(atoms), theta_(uavs * layers * atoms, 0.0)
{
}

PhaseProfile PhaseProfile::random(std::size_t uavs, std::size_t layers, std::size_t atoms, std::uint64_t seed)
{
    PhaseProfile p(uavs, layers, atoms);
    Rng gen(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (auto& t : p.theta_)
        t = wrap_phase(angle(gen));
    return p;
}

bool PhaseProfile::in_range() const
{
    for (double t : theta_)
        if (!(t >= 0.0 && t < kTwoPi))
            return false;
    return true;
}

double wrap_phase(double theta)
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0)
        t += kTwoPi;
    // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
    if (t >= kTwoPi)
        t = 0.0;
    return t;
}

Eigen::VectorXcd layer_coefficients(std::span<const double> theta)
{
    Eigen::VectorXcd phi(static_cast<Eigen::Index>(theta.size()));
    for (std::size_t k = 0; k < theta.size(); ++k)
        phi(static_cast<Eigen::Index>(k)) = std::polar(1.0, theta[k]);
    return phi;
}

namespace {

void check_phase_span(std::span<const double> phases, const SimStack& stack)
{
    if (phases.size() != stack.layers * stack.atoms())
        throw std::invalid_argument("phase slice has " + std::to_string(phases.size()) + " entries, expected " +
                                    std::to_string(stack.layers * stack.atoms()));
}

} // namespace

Eigen::MatrixXcd cascade_response(std::span<const double> phases, const SimStack& stack)
{
    check_phase_span(phases, stack);
    const std::size_t K = stack.atoms();
    Eigen::MatrixXcd G = layer_coefficients(phases.subspan(0, K)).asDiagonal();
    for (std::size_t l = 2; l <= stack.layers; ++l) {
        G = stack.W(l) * G;
        G = layer_coefficients(phases.subspan((l - 1) * K, K)).asDiagonal() * G;
    }
    return G;
}

Eigen::VectorXcd cascade_adjoint_apply(std::span<const double> phases, const SimStack& stack,
                                       const Eigen::VectorXcd& h)
{
    check_phase_span(phases, stack);
    if (static_cast<std::size_t>(h.size()) != stack.atoms())
        throw std::invalid_argument("channel vector length does not match K");
    const std::size_t K = stack.atoms();
    Eigen::VectorXcd v = h;
    for (std::size_t l = stack.layers; l >= 1; --l) {
        v = layer_coefficients(phases.subspan((l - 1) * K, K)).conjugate().cwiseProduct(v);
        if (l >= 2)
            v = stack.W(l).adjoint() * v;
    }
    return v;
}

} // namespace simuav
