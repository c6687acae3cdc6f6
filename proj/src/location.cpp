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

#include "simuav/location.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace simuav {

namespace {

const double kLog2e = 1.0 / std::numbers::ln2;

struct Pair {
    std::size_t u, i;
    Eigen::Vector2d a; // 2 (q_u^tau - q_i^tau)
    double rhs;        // d_min^2 + ||q_u^tau - q_i^tau||^2
};

std::vector<Pair> separation_constraints(const LocationProblem& p, const Positions& expansion)
{
    std::vector<Pair> out;
    const double d2 = p.safety_distance * p.safety_distance;
    for (std::size_t u = 0; u < expansion.size(); ++u) {
        for (std::size_t i = u + 1; i < expansion.size(); ++i) {
            const Eigen::Vector2d diff = expansion[u] - expansion[i];
            out.push_back({u, i, 2.0 * diff, d2 + diff.squaredNorm()});
        }
    }
    return out;
}

double max_delta(const Positions& a, const Positions& b)
{
    double d = 0.0;
    for (std::size_t u = 0; u < a.size(); ++u)
        d = std::max(d, (a[u] - b[u]).lpNorm<Eigen::Infinity>());
    return d;
}

bool satisfies_true_constraints(const LocationProblem& p, const Positions& q)
{
    for (std::size_t u = 0; u < q.size(); ++u) {
        for (double c : {q[u].x(), q[u].y()})
            if (c < 0.0 || c > p.area_side)
                return false;
        for (std::size_t i = u + 1; i < q.size(); ++i)
            if ((q[u] - q[i]).norm() < p.safety_distance)
                return false;
    }
    return true;
}

double dot(const Positions& a, const Positions& b)
{
    double s = 0.0;
    for (std::size_t u = 0; u < a.size(); ++u)
        s += a[u].dot(b[u]);
    return s;
}

} // namespace

double location_capacity(const LocationProblem& p, const Positions& q)
{
    double total_rate = 0.0;
    for (std::size_t u = 0; u < p.num_uavs(); ++u) {
        const int served = p.user_of_uav[u];
        if (served < 0)
            continue;
        double interference = 0.0, signal = 0.0;
        for (std::size_t l = 0; l < p.num_users(); ++l) {
            const double rx = p.weight(l, u) / p.distance_sq(q[u], l);
            if (static_cast<int>(l) == served)
                signal = rx;
            else
                interference += rx;
        }
        total_rate += std::log2(signal + interference + p.noise_power) - std::log2(interference + p.noise_power);
    }
    return total_rate;
}

SurrogateCoefficients surrogate_coefficients(const LocationProblem& p, const Positions& q_tau)
{
    const Eigen::Index M = static_cast<Eigen::Index>(p.num_users());
    const Eigen::Index U = static_cast<Eigen::Index>(p.num_uavs());
    SurrogateCoefficients c;
    c.expansion = q_tau;
    c.dist_sq.resize(M, U);
    c.A.resize(M, U);
    c.B.resize(U);
    for (Eigen::Index u = 0; u < U; ++u) {
        double total = p.noise_power;
        for (Eigen::Index m = 0; m < M; ++m) {
            const double x = p.distance_sq(q_tau[u], static_cast<std::size_t>(m));
            if (!(x > 0.0))
                throw std::domain_error("UAV coincides with a user position");
            c.dist_sq(m, u) = x;
            total += p.weight(m, u) / x;
        }
        for (Eigen::Index m = 0; m < M; ++m) {
            const double x = c.dist_sq(m, u);
            c.A(m, u) = p.weight(m, u) / (x * x) * kLog2e / total;
        }
        c.B(u) = std::log2(total);
    }
    return c;
}

double surrogate_value(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q,
                       const Eigen::MatrixXd& S)
{
    double value = 0.0;
    for (std::size_t u = 0; u < p.num_uavs(); ++u) {
        const int served = p.user_of_uav[u];
        if (served < 0)
            continue;
        double lower = c.B(u);
        double interference = p.noise_power;
        for (std::size_t l = 0; l < p.num_users(); ++l) {
            lower -= c.A(l, u) * (p.distance_sq(q[u], l) - c.dist_sq(l, u));
            if (static_cast<int>(l) == served)
                continue;
            const double s = S(l, u);
            if (!(s > 0.0))
                throw std::domain_error("slack variable must be positive");
            interference += p.weight(l, u) / s;
        }
        value += lower - std::log2(interference);
    }
    return value;
}

Eigen::MatrixXd optimal_slack(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q)
{
    Eigen::MatrixXd S(static_cast<Eigen::Index>(p.num_users()), static_cast<Eigen::Index>(p.num_uavs()));
    for (std::size_t u = 0; u < p.num_uavs(); ++u) {
        const Eigen::Vector2d step = q[u] - c.expansion[u];
        for (std::size_t l = 0; l < p.num_users(); ++l) {
            const double lin = c.dist_sq(l, u) + 2.0 * (c.expansion[u] - p.users[l]).dot(step);
            S(l, u) = std::max(p.slack_floor, lin);
        }
    }
    return S;
}

double reduced_surrogate(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q)
{
    return surrogate_value(p, c, q, optimal_slack(p, c, q));
}

Positions reduced_surrogate_gradient(const LocationProblem& p, const SurrogateCoefficients& c, const Positions& q)
{
    Positions grad(p.num_uavs(), Eigen::Vector2d::Zero());
    for (std::size_t u = 0; u < p.num_uavs(); ++u) {
        const int served = p.user_of_uav[u];
        if (served < 0)
            continue;
        const Eigen::Vector2d step = q[u] - c.expansion[u];
        Eigen::Vector2d g = Eigen::Vector2d::Zero();
        Eigen::Vector2d slack_part = Eigen::Vector2d::Zero();
        double interference = p.noise_power;
        for (std::size_t l = 0; l < p.num_users(); ++l) {
            g -= 2.0 * c.A(l, u) * (q[u] - p.users[l]);
            if (static_cast<int>(l) == served)
                continue;
            const Eigen::Vector2d slope = 2.0 * (c.expansion[u] - p.users[l]);
            const double lin = c.dist_sq(l, u) + slope.dot(step);
            const double s = std::max(p.slack_floor, lin);
            interference += p.weight(l, u) / s;
            if (lin > p.slack_floor)
                slack_part += p.weight(l, u) / (s * s) * slope;
        }
        grad[u] = g + kLog2e / interference * slack_part;
    }
    return grad;
}

Positions project_feasible(const LocationProblem& p, const Positions& expansion, const Positions& q,
                           std::size_t passes)
{
    const auto pairs = separation_constraints(p, expansion);
    const std::size_t U = q.size();
    Positions x = q;
    // Dykstra correction terms: one per half-space plus one for the box.
    std::vector<Positions> incr(pairs.size() + 1, Positions(U, Eigen::Vector2d::Zero()));

    for (std::size_t pass = 0; pass < passes; ++pass) {
        double moved = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& c = pairs[k];
            Eigen::Vector2d zu = x[c.u] + incr[k][c.u];
            Eigen::Vector2d zi = x[c.i] + incr[k][c.i];
            const double viol = c.rhs - c.a.dot(zu - zi);
            Eigen::Vector2d pu = zu, pi = zi;
            if (viol > 0.0) {
                const Eigen::Vector2d shift = viol / (2.0 * c.a.squaredNorm()) * c.a;
                pu += shift;
                pi -= shift;
            }
            // Only coordinates of this pair change; the rest of the increment stays zero.
            incr[k][c.u] = zu - pu;
            incr[k][c.i] = zi - pi;
            moved = std::max({moved, (pu - x[c.u]).lpNorm<Eigen::Infinity>(), (pi - x[c.i]).lpNorm<Eigen::Infinity>()});
            x[c.u] = pu;
            x[c.i] = pi;
        }
        auto& bi = incr.back();
        for (std::size_t u = 0; u < U; ++u) {
            const Eigen::Vector2d z = x[u] + bi[u];
            const Eigen::Vector2d pz = z.cwiseMax(0.0).cwiseMin(p.area_side);
            bi[u] = z - pz;
            moved = std::max(moved, (pz - x[u]).lpNorm<Eigen::Infinity>());
            x[u] = pz;
        }
        if (moved < 1e-12)
            break;
    }
    return x;
}

ScaStepResult sca_step(const LocationProblem& p, const SurrogateCoefficients& c, const LocationSettings& s)
{
    ScaStepResult out;
    Positions q = c.expansion;
    double f = reduced_surrogate(p, c, q);

    for (std::size_t it = 0; it < s.max_inner; ++it) {
        out.inner_iterations = it + 1;
        const Positions g = reduced_surrogate_gradient(p, c, q);
        double gmax = 0.0;
        for (const auto& gu : g)
            gmax = std::max(gmax, gu.lpNorm<Eigen::Infinity>());
        if (gmax == 0.0) {
            out.converged = true;
            break;
        }

        double t = s.initial_step / gmax;
        bool accepted = false;
        Positions cand;
        double fc = f;
        for (std::size_t bt = 0; bt <= s.max_backtracks; ++bt, t *= 0.5) {
            Positions trial = q;
            for (std::size_t u = 0; u < q.size(); ++u)
                trial[u] += t * g[u];
            trial = project_feasible(p, c.expansion, trial, s.projection_passes);
            if (!satisfies_true_constraints(p, trial))
                continue;
            Positions d = trial;
            for (std::size_t u = 0; u < q.size(); ++u)
                d[u] -= q[u];
            const double ft = reduced_surrogate(p, c, trial);
            if (ft >= f + s.armijo * dot(g, d)) {
                cand = std::move(trial);
                fc = ft;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No ascent along the projected arc: stationary to working precision.
            out.converged = true;
            break;
        }
        const double delta = max_delta(cand, q);
        q = std::move(cand);
        f = fc;
        if (delta < s.inner_tolerance) {
            out.converged = true;
            break;
        }
    }
    out.q = std::move(q);
    return out;
}

LocationResult optimize_locations(const LocationProblem& p, const Positions& q0, const LocationSettings& s)
{
    LocationResult out;
    out.q = q0;
    out.capacity = location_capacity(p, q0);
    out.accepted_capacity.push_back(out.capacity);

    for (std::size_t outer = 1; outer <= s.max_outer; ++outer) {
        const auto coeffs = surrogate_coefficients(p, out.q);
        auto step = sca_step(p, coeffs, s);
        const double cap = location_capacity(p, step.q);
        const double delta = max_delta(step.q, out.q);
        ScaTraceRow row{outer, reduced_surrogate(p, coeffs, step.q), cap, delta, cap >= out.capacity};
        out.trace.push_back(row);
        if (!row.accepted)
            break;
        out.q = std::move(step.q);
        out.capacity = cap;
        out.accepted_capacity.push_back(cap);
        if (delta < s.position_tolerance)
            break;
    }
    return out;
}

} // namespace simuav
