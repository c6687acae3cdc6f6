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

#include <cmath>
#include <limits>
#include <string>

namespace simuav {

Association::Association(std::size_t users, std::size_t uavs)
    : alpha_(Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(users), static_cast<Eigen::Index>(uavs)))
{
}

bool Association::is_valid(const Eigen::MatrixXi& alpha)
{
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        int v = alpha.data()[i];
        if (v != 0 && v != 1)
            return false;
    }
    return (alpha.rowwise().sum().array() <= 1).all() && (alpha.colwise().sum().array() <= 1).all();
}

Association Association::from_matrix(const Eigen::MatrixXi& alpha)
{
    if (!is_valid(alpha))
        throw std::invalid_argument("association must be binary with row and column sums at most 1");
    Association a;
    a.alpha_ = alpha;
    return a;
}

Association Association::from_uav_users(std::size_t users, const std::vector<int>& user_of_uav)
{
    Eigen::MatrixXi alpha = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(users),
                                                  static_cast<Eigen::Index>(user_of_uav.size()));
    for (std::size_t u = 0; u < user_of_uav.size(); ++u) {
        int m = user_of_uav[u];
        if (m < 0)
            continue;
        if (static_cast<std::size_t>(m) >= users)
            throw std::invalid_argument("user index " + std::to_string(m) + " out of range");
        alpha(m, static_cast<Eigen::Index>(u)) += 1;
    }
    return from_matrix(alpha);
}

std::optional<std::size_t> Association::user_of(std::size_t u) const
{
    for (Eigen::Index m = 0; m < alpha_.rows(); ++m)
        if (alpha_(m, static_cast<Eigen::Index>(u)))
            return static_cast<std::size_t>(m);
    return std::nullopt;
}

std::size_t Association::size() const { return static_cast<std::size_t>(alpha_.sum()); }

double Association::objective(const Eigen::MatrixXd& rates) const
{
    if (rates.rows() != alpha_.rows() || rates.cols() != alpha_.cols())
        throw std::invalid_argument("rate matrix shape does not match the association");
    double total = 0.0;
    for (Eigen::Index u = 0; u < alpha_.cols(); ++u)
        for (Eigen::Index m = 0; m < alpha_.rows(); ++m)
            if (alpha_(m, u))
                total += rates(m, u);
    return total;
}

namespace {

void check_rates(const Eigen::MatrixXd& rates)
{
    if (rates.rows() == 0 || rates.cols() == 0)
        throw std::invalid_argument("rate matrix must be non-empty");
    if (!rates.allFinite() || (rates.array() < 0.0).any())
        throw std::invalid_argument("rates must be finite and non-negative");
}

} // namespace

Association solve_association(const Eigen::MatrixXd& rates)
{
    check_rates(rates);
    const std::size_t M = static_cast<std::size_t>(rates.rows());
    const std::size_t U = static_cast<std::size_t>(rates.cols());
    const std::size_t n = std::max(M, U);

    // Minimise cost = -rate on the padded square matrix (rows users, cols UAVs);
    // padding entries cost 0 and stand for "unassigned".
    auto cost = [&](std::size_t i, std::size_t j) {
        return (i < M && j < U) ? -rates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) : 0.0;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> pu(n + 1, 0.0), pv(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur = cost(i0 - 1, j - 1) - pu[i0] - pv[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    pu[match[j]] += delta;
                    pv[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> user_of_uav(U, -1);
    for (std::size_t j = 1; j <= U; ++j) {
        const std::size_t i = match[j];
        if (i >= 1 && i <= M)
            user_of_uav[j - 1] = static_cast<int>(i - 1);
    }
    return Association::from_uav_users(M, user_of_uav);
}

Association brute_force_association(const Eigen::MatrixXd& rates)
{
    check_rates(rates);
    const std::size_t M = static_cast<std::size_t>(rates.rows());
    const std::size_t U = static_cast<std::size_t>(rates.cols());
    if (M > kBruteForceMaxUsers || U > kBruteForceMaxUavs)
        throw std::invalid_argument("brute-force association limited to M <= 8, U <= 4");

    // Each UAV picks a user or stays idle (-1); odometer over (M+1)^U choices.
    std::vector<int> choice(U, -1), best(U, -1);
    double best_value = -1.0;
    for (;;) {
        std::vector<char> taken(M, 0);
        bool ok = true;
        double value = 0.0;
        for (std::size_t u = 0; u < U && ok; ++u) {
            if (choice[u] < 0)
                continue;
            if (taken[choice[u]])
                ok = false;
            taken[choice[u]] = 1;
            value += rates(choice[u], static_cast<Eigen::Index>(u));
        }
        if (ok && value > best_value) {
            best_value = value;
            best = choice;
        }
        std::size_t u = 0;
        while (u < U && choice[u] == static_cast<int>(M) - 1) {
            choice[u] = -1;
            ++u;
        }
        if (u == U)
            break;
        ++choice[u];
    }
    return Association::from_uav_users(M, best);
}

} // namespace simuav
