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

#include <Eigen/Core>

#include <vector>

namespace simuav {

using Positions = std::vector<Eigen::Vector2d>;

// UAV placement sub-problem with association and phases frozen. Link
// weights c_{m,u} = rho0 p |g~_{m,u}|^2, so the received power of user m at
// UAV u is c_{m,u} / ||q_u - p_m||^2 (distances include the altitude).
struct LocationProblem {
    Positions users;              // horizontal user positions
    Eigen::MatrixXd weight;       // M x U
    std::vector<int> user_of_uav; // -1 for an idle UAV
    double altitude = 0.0;
    double area_side = 0.0;
    double safety_distance = 0.0;
    double noise_power = 0.0;
    double slack_floor = 1.0; // m^2

    std::size_t num_users() const { return users.size(); }
    std::size_t num_uavs() const { return user_of_uav.size(); }
    double distance_sq(const Eigen::Vector2d& q, std::size_t m) const
    {
        return (q - users[m]).squaredNorm() + altitude * altitude;
    }
};

struct LocationSettings {
    std::size_t max_outer = 10;
    std::size_t max_inner = 500;
    double inner_tolerance = 1e-6;    // m
    double position_tolerance = 1e-4; // m
    double initial_step = 50.0;       // m, along the steepest coordinate
    double armijo = 1e-4;
    std::size_t max_backtracks = 30;
    std::size_t projection_passes = 100;
};

// Network capacity as a function of the UAV positions.
double location_capacity(const LocationProblem& p, const Positions& q);

// First-order expansion of log2(sum_l c_l / x_l + sigma^2) in the squared
// distances x_l around Q^tau: slopes A (M x U, all positive) and value B
// (one per UAV; identical for every m in the displayed notation).
struct SurrogateCoefficients {
    Positions expansion;         // Q^tau
    Eigen::MatrixXd dist_sq;     // ||q^tau_u - p_m||^2
    Eigen::MatrixXd A;           // M x U
    Eigen::VectorXd B;           // U
};

// Throws std::domain_error if a UAV sits at distance 0 from a user.
SurrogateCoefficients surrogate_coefficients(const LocationProblem& p, const Positions& q_tau);

// Surrogate objective with explicit slacks S (M x U, squared distances);
// S entries for the served user of each UAV are ignored. Throws
// std::domain_error for a used S <= 0.
double surrogate_value(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q,
                       const Eigen::MatrixXd& S);

// Largest slacks allowed by the linearized constraint, floored at the
// configured slack floor.
Eigen::MatrixXd optimal_slack(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q);

// Surrogate with S eliminated at its bound, and its analytic gradient.
double reduced_surrogate(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q);
Positions reduced_surrogate_gradient(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q);

// Projection onto {area box} intersected with the linearized separation
// half-spaces built at `expansion` (Dykstra's alternating projections).
Positions project_feasible(const LocationProblem& p, const Positions& expansion, const Positions& q,
                           std::size_t passes);

struct ScaStepResult {
    Positions q;
    std::size_t inner_iterations = 0;
    bool converged = false;
};

// Maximizes the reduced surrogate by projected gradient ascent with Armijo
// backtracking. Every accepted inner iterate increases the surrogate.
ScaStepResult sca_step(const LocationProblem& p, const SurrogateCoefficients& c, const LocationSettings& s);

struct ScaTraceRow {
    std::size_t outer = 0;
    double surrogate = 0.0;
    double capacity = 0.0;
    double max_delta = 0.0;
    bool accepted = false;
};

struct LocationResult {
    Positions q;
    double capacity = 0.0;
    std::vector<ScaTraceRow> trace;
    std::vector<double> accepted_capacity; // starts with the initial value
};

// Repeats coefficient refresh and sca_step, accepting a step only when the
// true capacity does not decrease.
LocationResult optimize_locations(const LocationProblem& p, const Positions& q0, const LocationSettings& s);

} // namespace simuav
