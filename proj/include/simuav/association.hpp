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

#include <optional>
#include <stdexcept>
#include <vector>

namespace simuav {

// Binary M x U user/UAV association with at most one UAV per user and at
// most one user per UAV.
class Association {
public:
    Association() = default;
    Association(std::size_t users, std::size_t uavs);

    // Throws std::invalid_argument if `alpha` is not binary or breaks a
    // one-to-one constraint.
    static Association from_matrix(const Eigen::MatrixXi& alpha);
    // user_of_uav[u] is the served user, or -1 for an idle UAV.
    static Association from_uav_users(std::size_t users, const std::vector<int>& user_of_uav);

    std::size_t users() const { return static_cast<std::size_t>(alpha_.rows()); }
    std::size_t uavs() const { return static_cast<std::size_t>(alpha_.cols()); }
    const Eigen::MatrixXi& matrix() const { return alpha_; }

    std::optional<std::size_t> user_of(std::size_t u) const;
    std::size_t size() const; // number of associated pairs

    // Objective sum_{m,u} alpha * rates.
    double objective(const Eigen::MatrixXd& rates) const;

    bool operator==(const Association& o) const { return alpha_ == o.alpha_; }

    // Row and column sums <= 1 with entries in {0, 1}.
    static bool is_valid(const Eigen::MatrixXi& alpha);

private:
    Eigen::MatrixXi alpha_;
};

// Exact maximum-weight one-to-one association (Hungarian algorithm on the
// zero-padded square matrix). The assignment polytope is integral, so this
// is also the optimum of the relaxed LP.
Association solve_association(const Eigen::MatrixXd& rates);

inline constexpr std::size_t kBruteForceMaxUsers = 8;
inline constexpr std::size_t kBruteForceMaxUavs = 4;

// Exhaustive enumeration; test oracle for solve_association.
Association brute_force_association(const Eigen::MatrixXd& rates);

} // namespace simuav
