// Copyright 2026 The rosl-preimage Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Wolfe's minimum-norm-point algorithm applied to the shifted points
// q_i = p_i - z. The active set S is kept affinely independent; every minor
// cycle moves the iterate towards the affine minimizer of S and drops the
// point whose weight hits zero first.

#include <algorithm>
#include <limits>
#include <vector>

#include "rosl/error.hpp"
#include "rosl/geometry.hpp"

namespace rosl {
namespace {

constexpr double kWeightEps = 1e-12;

// Minimizer of ||sum_k alpha_k q_{S_k}|| subject to sum alpha = 1.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& q, const std::vector<Eigen::Index>& active) {
    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::VectorXd alpha(m);
    if (m == 1) {
        alpha(0) = 1.0;
        return alpha;
    }
    const Eigen::VectorXd q0 = q.col(active[0]);
    Eigen::MatrixXd diffs(q.rows(), m - 1);
    for (Eigen::Index k = 1; k < m; ++k) {
        diffs.col(k - 1) = q.col(active[k]) - q0;
    }
    const Eigen::VectorXd beta = diffs.completeOrthogonalDecomposition().solve(-q0);
    alpha(0) = 1.0 - beta.sum();
    alpha.tail(m - 1) = beta;
    return alpha;
}

} // namespace

Projection nearest_point(std::span<const Vector> points, const Vector& z, double tol) {
    require(!points.empty(), ErrorCode::invalid_argument, "empty point set");
    require_valid(z, "query point");
    const auto n = static_cast<Eigen::Index>(points.size());
    const auto d = z.size();

    Eigen::MatrixXd q(d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        require_same_dim(points[i].size(), d, "nearest_point");
        q.col(i) = points[i] - z;
    }
    const double scale = std::max(1.0, q.colwise().squaredNorm().maxCoeff());
    const double stop = tol * scale;
    const auto budget = static_cast<std::size_t>(10 * (n + d) * (n + d));
    std::size_t iterations = 0;
    auto tick = [&] {
        if (++iterations > budget) {
            fail(ErrorCode::numerical, "projection failed: iteration budget exhausted");
        }
    };

    Eigen::Index first = 0;
    q.colwise().squaredNorm().minCoeff(&first);
    std::vector<Eigen::Index> active{first};
    std::vector<double> lambda{1.0};
    Eigen::VectorXd x = q.col(first);

    for (;;) {
        tick();
        Eigen::Index j = 0;
        const double min_dot = (q.transpose() * x).minCoeff(&j);
        if (x.squaredNorm() - min_dot <= stop) {
            break;
        }
        if (std::find(active.begin(), active.end(), j) != active.end()) {
            fail(ErrorCode::numerical, "projection failed: active set stalled");
        }
        active.push_back(j);
        lambda.push_back(0.0);

        for (;;) {
            tick();
            const Eigen::VectorXd alpha = affine_minimizer(q, active);
            if (alpha.minCoeff() > kWeightEps) {
                lambda.assign(alpha.data(), alpha.data() + alpha.size());
                break;
            }
            double theta = std::numeric_limits<double>::infinity();
            std::size_t drop = 0;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (alpha(static_cast<Eigen::Index>(k)) <= kWeightEps) {
                    const double denom = lambda[k] - alpha(static_cast<Eigen::Index>(k));
                    const double t = denom > 0.0 ? lambda[k] / denom : 0.0;
                    if (t < theta) {
                        theta = t;
                        drop = k;
                    }
                }
            }
            theta = std::min(theta, 1.0);
            for (std::size_t k = 0; k < active.size(); ++k) {
                lambda[k] = theta * alpha(static_cast<Eigen::Index>(k)) + (1.0 - theta) * lambda[k];
            }
            lambda[drop] = 0.0;
            std::vector<Eigen::Index> next_active;
            std::vector<double> next_lambda;
            double total = 0.0;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (lambda[k] > kWeightEps) {
                    next_active.push_back(active[k]);
                    next_lambda.push_back(lambda[k]);
                    total += lambda[k];
                }
            }
            if (next_active.empty()) {
                fail(ErrorCode::numerical, "projection failed: empty active set");
            }
            for (auto& l : next_lambda) {
                l /= total;
            }
            active = std::move(next_active);
            lambda = std::move(next_lambda);
        }

        x.setZero();
        for (std::size_t k = 0; k < active.size(); ++k) {
            x += lambda[k] * q.col(active[k]);
        }
    }

    Projection out;
    out.point = z + x;
    out.dist = x.norm();
    out.weights.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
        out.weights[static_cast<std::size_t>(active[k])] += lambda[k];
    }
    return out;
}

} // namespace rosl
