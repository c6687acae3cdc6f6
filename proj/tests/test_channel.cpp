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

#include <doctest.h>

#include <numbers>

using namespace simuav;

namespace {

Scenario grid_scenario(std::size_t users, std::size_t uavs)
{
    Scenario s;
    s.area_side = 1000;
    s.altitude = 50;
    s.safety_distance = 1;
    for (std::size_t m = 0; m < users; ++m)
        s.users.emplace_back(double(m % 100) * 10.0, double(m / 100) * 10.0, 0.0);
    for (std::size_t u = 0; u < uavs; ++u)
        s.uavs.emplace_back(double(u % 10) * 100.0 + 5, double(u / 10) * 100.0 + 5, 50.0);
    return s;
}

LinkBudget budget(double p = 0.5, double noise = 1e-14)
{
    return {p, noise, 1.0};
}

} // namespace

TEST_CASE("fading statistics match the correlation matrix")
{
    const SimStack stack = SimStack::build(SimConfig{});
    // 1000 users x 100 UAVs = 1e5 independent draws.
    const auto sc = grid_scenario(1000, 100);
    const auto ch = sample_channels(stack, sc, 1.0, 42);
    const Eigen::Index K = 36;
    Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(K);
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(K, K);
    for (const auto& h : ch.normalized) {
        mean += h;
        cov.noalias() += h * h.adjoint();
    }
    const double n = double(ch.normalized.size());
    REQUIRE(n == 1e5);
    mean /= n;
    cov /= n;
    // Each entry has unit variance, split evenly between re and im.
    const double band = 3.0 * std::sqrt(0.5 / n);
    for (Eigen::Index k = 0; k < K; ++k) {
        CHECK(std::abs(mean(k).real()) < band * 1.5);
        CHECK(std::abs(mean(k).imag()) < band * 1.5);
    }
    const double err = (cov - stack.corr.cast<cd>()).norm() / stack.corr.norm();
    CHECK(err < 0.05);
}

TEST_CASE("sampling is deterministic and path gains follow geometry")
{
    const SimStack stack = SimStack::build(SimConfig{});
    const auto sc = build_scenario(SimConfig{}, 1);
    const double rho0 = SimConfig{}.effective_ref_gain();
    auto a = sample_channels(stack, sc, rho0, 9);
    auto b = sample_channels(stack, sc, rho0, 9);
    auto c = sample_channels(stack, sc, rho0, 10);
    CHECK(a.normalized == b.normalized);
    CHECK(a.normalized[0] != c.normalized[0]);
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t u = 0; u < 3; ++u) {
            const double beta = rho0 / sc.distance_sq(m, u);
            CHECK(a.path_gain(m, u) == doctest::Approx(beta).epsilon(1e-15));
            CHECK((a.h(m, u) - std::sqrt(a.path_gain(m, u)) * a.h_tilde(m, u)).cwiseAbs().maxCoeff() == 0.0);
        }

    // Moving a UAV rescales h by sqrt(beta ratio) and leaves h~ alone.
    auto moved = sc.with_uavs({{10, 10}, {500, 500}, {900, 100}});
    auto h_before = a.h(2, 0);
    auto tilde_before = a.h_tilde(2, 0);
    a.update_path_gains(moved);
    CHECK(a.h_tilde(2, 0) == tilde_before);
    const double ratio = std::sqrt(sc.distance_sq(2, 0) / moved.distance_sq(2, 0));
    CHECK((a.h(2, 0) - ratio * h_before).norm() < 1e-12 * a.h(2, 0).norm());
}

TEST_CASE("correlation factor rejects indefinite input")
{
    Eigen::MatrixXd R(2, 2);
    R << 1, 2, 2, 1;
    CHECK_THROWS_AS(correlation_factor(R), FactorizationError);
}

TEST_CASE("effective gain")
{
    Eigen::VectorXcd w(1), h(1);
    Eigen::MatrixXcd G(1, 1);
    w << 1.0;
    G << cd(0, 1);
    h << cd(0, 1);
    CHECK(std::abs(effective_gain(w, G, h) - cd(1, 0)) < 1e-15);
    h << 0.0;
    CHECK(effective_gain(w, G, h) == cd(0, 0));

    Eigen::VectorXcd w3 = Eigen::VectorXcd::Random(3), h3 = Eigen::VectorXcd::Random(3);
    Eigen::MatrixXcd G3 = Eigen::MatrixXcd::Random(3, 3);
    const cd c(0.3, -2.0);
    CHECK(std::abs(effective_gain(w3, G3, c * h3) - c * effective_gain(w3, G3, h3)) < 1e-14);
    CHECK_THROWS(effective_gain(w3, G, h3));
}

TEST_CASE("sinr")
{
    Eigen::MatrixXcd g(1, 1);
    g << cd(3, 4);
    CHECK(sinr(0, 0, g, budget()) == doctest::Approx(25 * 0.5 / 1e-14));

    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 2);
    CHECK(sinr(1, 1, zero, budget()) == 0.0);

    Eigen::MatrixXcd two(2, 1);
    two << 1.0, 1.0;
    CHECK(sinr(0, 0, two, budget()) == doctest::Approx(0.5 / (0.5 + 1e-14)).epsilon(1e-15));

    Eigen::MatrixXcd many = Eigen::MatrixXcd::Random(5, 3);
    const cd rot = std::exp(cd(0, 1.234));
    Eigen::MatrixXcd rotated = many;
    rotated.col(1) *= rot;
    for (std::size_t m = 0; m < 5; ++m)
        CHECK(sinr(m, 1, rotated, budget()) == doctest::Approx(sinr(m, 1, many, budget())).epsilon(1e-13));
}

TEST_CASE("rate and capacity")
{
    CHECK(link_rate(0) == 0.0);
    CHECK(link_rate(1) == 1.0);
    CHECK(link_rate(3) == 2.0);

    Eigen::MatrixXd rates(3, 2);
    rates << 1.5, 9, 7, 2.5, 4, 4;
    CHECK(network_capacity(Association(3, 2), rates) == 0.0);
    CHECK(network_capacity(Association::from_uav_users(3, {1, -1}), rates) == 7.0);
    CHECK(network_capacity(Association::from_uav_users(3, {0, 1}), rates) == 4.0);
    CHECK_THROWS(network_capacity(Association(2, 2), rates));

    // Raising one associated link's SINR raises capacity.
    auto a = Association::from_uav_users(3, {0, 1});
    Eigen::MatrixXd better = rates;
    better(0, 0) = link_rate(10);
    CHECK(network_capacity(a, better) > network_capacity(a, rates));
}

TEST_CASE("link metrics agree with the scalar formulas")
{
    const auto sc = build_scenario(SimConfig{}, 4);
    Eigen::MatrixXd P = Eigen::MatrixXd::Random(5, 3).cwiseAbs();
    LinkBudget b{0.5, 1e-14, 7.25e-7};
    auto lm = link_metrics(P, sc, b);
    Eigen::MatrixXcd g(5, 3);
    for (int m = 0; m < 5; ++m)
        for (int u = 0; u < 3; ++u)
            g(m, u) = std::sqrt(b.ref_gain * P(m, u) / sc.distance_sq(m, u));
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t u = 0; u < 3; ++u) {
            CHECK(lm.gain_power(m, u) == doctest::Approx(std::norm(g(m, u))).epsilon(1e-13));
            CHECK(lm.sinr(m, u) == doctest::Approx(sinr(m, u, g, b)).epsilon(1e-12));
            CHECK(lm.rate(m, u) == doctest::Approx(link_rate(lm.sinr(m, u))).epsilon(1e-13));
            CHECK(lm.rate(m, u) >= 0.0);
        }
}
