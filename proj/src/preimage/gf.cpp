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
#include <limits>

#include "rosl/error.hpp"
#include "rosl/preimage.hpp"

namespace rosl {

std::vector<Vector> gf_extreme_filter(const Polytope& fx, const Vector& ybar, double tol) {
    require_same_dim(ybar.size(), fx.dim(), "gf_extreme_filter");
    require_valid(ybar, "ybar");

    const auto& verts = fx.vertices();
    const std::size_t n = verts.size();
    std::vector<Vector> pts = verts;
    pts.push_back(ybar);

    std::vector<bool> keep(n, false);
    for (auto idx : hull_vertex_indices(pts, tol)) {
        if (idx < n) {
            keep[idx] = true;
            continue;
        }
        // The hull may have merged ybar with a coincident vertex of F(x);
        // such a vertex is extreme in both sets.
        for (std::size_t k = 0; k < n; ++k) {
            if ((verts[k] - ybar).norm() <= tol) {
                keep[k] = true;
            }
        }
    }

    std::vector<Vector> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (keep[k]) {
            out.push_back(verts[k]);
        }
    }
    require(!out.empty(), ErrorCode::numerical, "extreme filter removed every vertex");
    return out;
}

namespace {

std::vector<Ball> balls_for(const std::vector<Vector>& ys, const Vector& x, const Vector& ybar,
                            double ell) {
    std::vector<Ball> out;
    out.reserve(ys.size());
    for (const auto& y : ys) {
        const Vector diff = ybar - y;
        out.emplace_back(x + diff / (2.0 * ell), diff.norm() / (2.0 * std::abs(ell)));
    }
    return out;
}

} // namespace

std::vector<Ball> gf_balls(const SetValuedMap& f, const Vector& x, const Vector& ybar,
                           bool filtered) {
    require_same_dim(ybar.size(), f.dim(), "gf_balls");
    require_valid(ybar, "ybar");
    const Polytope fx = f.eval(x);
    const auto ys = filtered ? gf_extreme_filter(fx, ybar) : fx.vertices();
    return balls_for(ys, x, ybar, f.ell());
}

bool gf_membership(const SetValuedMap& f, const Vector& x, const Vector& ybar, const Vector& z,
                   double tol) {
    require_same_dim(ybar.size(), f.dim(), "gf_membership");
    require_same_dim(z.size(), f.dim(), "gf_membership");
    require_valid(ybar, "ybar");
    require_valid(z, "query point");
    require(tol >= 0.0, ErrorCode::invalid_argument, "tolerance must be >= 0");
    const Polytope fx = f.eval(x);
    const Vector w = z - x;
    const double rhs = support(fx, w) - w.dot(ybar) + tol * w.norm();
    return std::abs(f.ell()) * w.squaredNorm() <= rhs;
}

bool gf_membership_via_balls(const SetValuedMap& f, const Vector& x, const Vector& ybar,
                             const Vector& z, double tol, bool filtered) {
    require_same_dim(z.size(), f.dim(), "gf_membership_via_balls");
    require(tol >= 0.0, ErrorCode::invalid_argument, "tolerance must be >= 0");
    Vector target = ybar;
    const Vector w = z - x;
    const double wn = w.norm();
    if (tol > 0.0 && wn > 0.0) {
        target = ybar - (tol / wn) * w;
    }
    for (const auto& b : gf_balls(f, x, target, filtered)) {
        // Rounding guard only; radius-zero balls stay exact.
        if (ball_contains(b, z, 4.0 * std::numeric_limits<double>::epsilon() * b.radius)) {
            return true;
        }
    }
    return false;
}

} // namespace rosl
