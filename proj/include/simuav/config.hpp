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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace simuav {

// Thrown for malformed config text (carries the offending line when known)
// and for parameter sets that violate a model invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All physical and solver parameters. Powers are watts, lengths meters.
// Layer spacing is derived from thickness and layer count, never stored.
struct SimConfig {
    // [network]
    std::size_t num_users = 5;
    std::size_t num_uavs = 3;
    double area_side = 1000.0;
    double altitude = 50.0;
    double safety_distance = 100.0;
    double tx_power = 0.5;      // W, per user
    double noise_power = 1e-14; // W, per UAV
    double ref_gain = 0.0;      // rho0 at 1 m; 0 selects (lambda / 4 pi)^2

    // [sim]
    std::size_t layers = 3;
    std::size_t atoms_per_layer = 36;
    double wavelength = 0.0107;
    double sim_thickness = 5 * 0.0107;
    double atom_area = 0.0;      // 0 selects (lambda / 2)^2
    double atom_spacing = 0.0;   // 0 selects lambda / 2
    double antenna_offset = 0.0; // 0 selects one layer spacing

    // [solver]
    double ao_tolerance = 1e-6;
    std::size_t ao_max_iters = 50;
    std::size_t phase_iters = 10;
    std::size_t sca_max_iters = 10;
    std::size_t sca_inner_max_iters = 500;
    double sca_inner_tolerance = 1e-6;    // m
    double sca_position_tolerance = 1e-4; // m
    double sca_slack_floor = 1.0;         // m^2
    std::size_t rd_candidates = 100;
    std::size_t evo_population = 30;
    std::size_t evo_iters = 50;

    // [experiment]
    std::uint64_t rng_seed = 1;
    std::vector<std::uint64_t> seeds{1};
    std::vector<std::size_t> layer_sweep{3};
    std::vector<std::string> methods{"ao"};

    std::size_t k_max() const;
    double layer_spacing() const { return sim_thickness / static_cast<double>(layers); }
    double effective_atom_area() const;
    double effective_atom_spacing() const;
    double effective_antenna_offset() const;
    double effective_ref_gain() const;

    SimConfig with_layers(std::size_t l) const;

    // Throws ConfigError naming the first violated invariant.
    void validate() const;

    // Canonical text form; identical configs hash identically.
    std::string canonical() const;
    std::string hash() const;
};

SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::string& path);

double dbm_to_watts(double dbm);

} // namespace simuav
