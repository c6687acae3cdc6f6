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

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace simuav {

using cd = std::complex<double>;

// Normalized sinc, sin(pi x) / (pi x); series below |x| < 1e-6.
double sinc(double x);

// 1-based lattice coordinates (k_x, k_y) of the k-th meta-atom (1-based).
std::pair<std::size_t, std::size_t> atom_index(std::size_t k, std::size_t k_max);

// Distance between atom k on one layer and atom k2 on a layer `layer_offset`
// away (0 for the same layer). Indices are 1-based.
double pair_distance(std::size_t k, std::size_t k2, double spacing, std::size_t k_max, double layer_offset);

// Rayleigh-Sommerfeld point-to-point response
//   (A cos_chi / s) (1 / (2 pi s) - j / lambda) exp(j 2 pi s / lambda).
cd propagation_coefficient(double s, double cos_chi, double atom_area, double wavelength);

struct Geometry {
    std::size_t k_max = 1;
    double spacing = 0.0;       // s_e
    double layer_spacing = 0.0; // r
    double atom_area = 0.0;
    double wavelength = 0.0;
    double antenna_offset = 0.0;

    static Geometry from(const SimConfig& cfg);
    std::size_t atoms() const { return k_max * k_max; }
};

Eigen::MatrixXcd build_inter_layer_matrix(const Geometry& g);
Eigen::VectorXcd build_output_vector(const Geometry& g);
Eigen::MatrixXd build_correlation_matrix(const Geometry& g);

// Geometry-only structures, built once per configuration and shared read-only.
struct SimStack {
    Geometry geometry;
    std::size_t layers = 1;
    std::vector<Eigen::MatrixXcd> inter_layer; // W^2 .. W^L, index 0 is W^2
    Eigen::VectorXcd output_vec;               // w^1
    Eigen::MatrixXd corr;                      // R

    static SimStack build(const SimConfig& cfg);
    std::size_t atoms() const { return geometry.atoms(); }

    // W^l for paper layer l in [2, L].
    const Eigen::MatrixXcd& W(std::size_t l) const { return inter_layer.at(l - 2); }
};

// Phase shifts theta[u][l][k], radians in [0, 2 pi). Layers are stored
// 0-based: index 0 is the layer adjacent to the receive antenna (Phi^1).
class PhaseProfile {
public:
    PhaseProfile() = default;
    PhaseProfile(std::size_t uavs, std::size_t layers, std::size_t atoms);

    static PhaseProfile random(std::size_t uavs, std::size_t layers, std::size_t atoms, std::uint64_t seed);

    std::size_t uavs() const { return uavs_; }
    std::size_t layers() const { return layers_; }
    std::size_t atoms() const { return atoms_; }

    double& at(std::size_t u, std::size_t l, std::size_t k) { return theta_[index(u, l, k)]; }
    double at(std::size_t u, std::size_t l, std::size_t k) const { return theta_[index(u, l, k)]; }

    std::span<const double> layer(std::size_t u, std::size_t l) const
    {
        return {theta_.data() + index(u, l, 0), atoms_};
    }
    std::span<double> layer(std::size_t u, std::size_t l) { return {theta_.data() + index(u, l, 0), atoms_}; }
    std::span<const double> uav(std::size_t u) const { return {theta_.data() + index(u, 0, 0), layers_ * atoms_}; }
    std::span<double> uav(std::size_t u) { return {theta_.data() + index(u, 0, 0), layers_ * atoms_}; }

    const std::vector<double>& raw() const { return theta_; }
    std::vector<double>& raw() { return theta_; }

    bool in_range() const;

private:
    std::size_t index(std::size_t u, std::size_t l, std::size_t k) const { return (u * layers_ + l) * atoms_ + k; }

    std::size_t uavs_ = 0;
    std::size_t layers_ = 0;
    std::size_t atoms_ = 0;
    std::vector<double> theta_;
};

// Maps any angle into [0, 2 pi).
double wrap_phase(double theta);

// diag(e^{j theta}) entries for one layer.
Eigen::VectorXcd layer_coefficients(std::span<const double> theta);

// G = Phi^L W^L Phi^{L-1} ... Phi^2 W^2 Phi^1 for one UAV; `phases` holds
// L * K entries, layer-major.
Eigen::MatrixXcd cascade_response(std::span<const double> phases, const SimStack& stack);

// G^H h without forming G (same algebra, L matrix-vector products).
Eigen::VectorXcd cascade_adjoint_apply(std::span<const double> phases, const SimStack& stack,
                                       const Eigen::VectorXcd& h);

} // namespace simuav
