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

#include "simuav/association.hpp"

#include <doctest.h>

#include <random>

using namespace simuav;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows)
{
    Eigen::MatrixXd m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index j = 0;
        for (double v : r)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("hand-checkable instances")
{
    auto a = solve_association(mat({{5}}));
    CHECK(a.matrix()(0, 0) == 1);
    CHECK(a.objective(mat({{5}})) == 5.0);

    const auto r2 = mat({{2, 1}, {1, 2}});
    auto b = solve_association(r2);
    CHECK(b.matrix() == Eigen::MatrixXi::Identity(2, 2));
    CHECK(b.objective(r2) == 4.0);

    const auto r3 = mat({{3, 0}, {2, 2}, {0, 3}});
    auto c = solve_association(r3);
    CHECK(c.objective(r3) == 6.0);
    CHECK(c.user_of(0) == 0u);
    CHECK(c.user_of(1) == 2u);
    CHECK(!c.matrix().row(1).any());
}

TEST_CASE("matching equals exhaustive search")
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> val(0.0, 10.0);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index M = 1 + t % 6, U = 1 + (t / 6) % 4;
        Eigen::MatrixXd R(M, U);
        for (auto& x : R.reshaped())
            x = coin(gen) == 0 ? 0.0 : val(gen);
        auto a = solve_association(R);
        auto b = brute_force_association(R);
        CHECK(Association::is_valid(a.matrix()));
        CHECK(Association::is_valid(b.matrix()));
        CHECK(a.objective(R) == doctest::Approx(b.objective(R)).epsilon(1e-12));
    }
}

TEST_CASE("ties compare by objective")
{
    Eigen::MatrixXd R = Eigen::MatrixXd::Constant(5, 3, 2.0);
    auto a = solve_association(R);
    CHECK(a.objective(R) == 6.0);
    CHECK(a.objective(R) == brute_force_association(R).objective(R));
    CHECK(solve_association(R) == a);
}

TEST_CASE("constant shift keeps square instances optimal")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    for (int t = 0; t < 50; ++t) {
        Eigen::MatrixXd R(4, 4);
        for (auto& x : R.reshaped())
            x = val(gen);
        Eigen::MatrixXd S = R.array() + 3.0;
        auto a = solve_association(S);
        CHECK(a.objective(S) == doctest::Approx(brute_force_association(S).objective(S)).epsilon(1e-12));
        CHECK(a.objective(R) == doctest::Approx(brute_force_association(R).objective(R)).epsilon(1e-12));
    }
}

TEST_CASE("more UAVs than users")
{
    const auto R = mat({{1, 4, 2}});
    auto a = solve_association(R);
    CHECK(a.objective(R) == 4.0);
    CHECK(a.size() == 1);
}

TEST_CASE("input validation")
{
    CHECK_THROWS(solve_association(mat({{1, -1}})));
    CHECK_THROWS(solve_association(mat({{1, std::nan("")}})));
    CHECK_THROWS(brute_force_association(Eigen::MatrixXd::Ones(9, 2)));
    CHECK_THROWS(brute_force_association(Eigen::MatrixXd::Ones(3, 5)));

    Eigen::MatrixXi bad(2, 2);
    bad << 1, 1, 0, 0;
    CHECK_THROWS_AS(Association::from_matrix(bad), std::invalid_argument);
    bad << 1, 0, 1, 0;
    CHECK_THROWS_AS(Association::from_matrix(bad), std::invalid_argument);
    bad << 2, 0, 0, 0;
    CHECK_THROWS_AS(Association::from_matrix(bad), std::invalid_argument);
    CHECK_THROWS(Association::from_uav_users(3, {0, 0}));
    CHECK_THROWS(Association::from_uav_users(3, {3, -1}));
}
