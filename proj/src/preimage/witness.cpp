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

#include <cmath>

#include "rosl/error.hpp"
#include "rosl/preimage.hpp"

namespace rosl {

SolvabilityResult solvability_check(const SetValuedMap& f, const Vector& x, std::size_t y_index,
                                    const Vector& ybar, const GridMask& oracle) {
    require_same_dim(ybar.size(), f.dim(), "solvability_check");
    require_same_dim(oracle.grid.dim(), f.dim(), "solvability_check oracle");
    const Polytope fx = f.eval(x);
    require(y_index < fx.size(), ErrorCode::invalid_argument, "y_index out of range");
    const Vector& y = fx.vertices()[y_index];
    const Vector diff = ybar - y;

    SolvabilityResult res;
    res.ball = Ball(x + diff / (2.0 * f.ell()), diff.norm() / (2.0 * std::abs(f.ell())));
    const double slack = oracle.grid.max_spacing();
    for (std::size_t i = 0; i < oracle.member.size(); ++i) {
        if (oracle.member[i] && ball_contains(res.ball, oracle.grid.node(i), slack)) {
            res.ok = true;
            res.node = i;
            break;
        }
    }
    return res;
}

std::optional<Vector> witness_excluding_base(const SetValuedMap& f, const Vector& ybar,
                                             const Vector& z, const WitnessOptions& opts) {
    require_same_dim(ybar.size(), f.dim(), "witness");
    require_same_dim(z.size(), f.dim(), "witness");
    require(opts.max_delta_trials >= 1, ErrorCode::invalid_argument,
            "max_delta_trials must be >= 1");
    const Polytope fz = f.eval(z);
    if (contains(fz, ybar, kGeomEps)) {
        fail(ErrorCode::precondition, "z in preimage");
    }
    const Projection proj = project_onto(fz, ybar);
    // Separating direction from ybar towards F(z).
    const Vector v = (proj.point - ybar) / proj.dist;
    const double delta0 = proj.dist / (2.0 * std::abs(f.ell()));

    for (int trial = 0; trial < opts.max_delta_trials; ++trial) {
        // k = 0, -1, +1, -2, +2, ...
        const int k = trial == 0 ? 0 : (trial % 2 == 1 ? -(trial + 1) / 2 : trial / 2);
        const Vector x = z + std::ldexp(delta0, k) * v;
        if (!is_finite(x)) {
            continue;
        }
        if (!gf_membership(f, x, ybar, z, 0.0)) {
            return x;
        }
    }
    return std::nullopt;
}

} // namespace rosl
