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

#include "rosl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rosl/error.hpp"

namespace rosl {

bool is_finite(const Vector& v) {
    return v.allFinite();
}

void require_valid(const Vector& v, const char* what) {
    require(v.size() >= 1, ErrorCode::invalid_argument,
            std::string(what) + ": empty vector");
    require(is_finite(v), ErrorCode::invalid_argument,
            std::string(what) + ": non-finite coordinate");
}

void require_same_dim(long a, long b, const char* what) {
    if (a != b) {
        fail(ErrorCode::dimension_mismatch,
             std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                 " vs " + std::to_string(b) + ")");
    }
}

bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Ball::Ball(Vector c, double r) : center(std::move(c)), radius(r) {
    require_valid(center, "ball center");
    require(std::isfinite(radius) && radius >= 0.0, ErrorCode::invalid_argument,
            "ball radius must be finite and >= 0");
}

Polytope::Polytope(std::vector<Vector> canonical) : vertices_(std::move(canonical)) {}

Polytope Polytope::hull(std::span<const Vector> points, double tol) {
    auto idx = hull_vertex_indices(points, tol);
    std::vector<Vector> verts;
    verts.reserve(idx.size());
    for (auto i : idx) {
        verts.push_back(points[i]);
    }
    return Polytope(std::move(verts));
}

Polytope Polytope::point(const Vector& p) {
    require_valid(p, "polytope vertex");
    require(p.size() <= kMaxHullDim, ErrorCode::unsupported, "dimension unsupported");
    return Polytope(std::vector<Vector>{p});
}

Polytope Polytope::interval(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::invalid_argument,
            "interval bounds must be finite");
    require(lo <= hi, ErrorCode::invalid_argument, "interval lower bound exceeds upper bound");
    if (lo == hi) {
        return Polytope(std::vector<Vector>{Vector::Constant(1, lo)});
    }
    return Polytope(std::vector<Vector>{Vector::Constant(1, lo), Vector::Constant(1, hi)});
}

Polytope Polytope::translated(const Vector& shift) const {
    require_same_dim(shift.size(), dim(), "translate");
    require_valid(shift, "translation");
    std::vector<Vector> moved;
    moved.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        moved.push_back(v + shift);
    }
    // Rounding can merge a first-coordinate tie, so restore the order.
    std::sort(moved.begin(), moved.end(), lex_less);
    return Polytope(std::move(moved));
}

bool operator==(const Polytope& a, const Polytope& b) {
    if (a.vertices_.size() != b.vertices_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
        if (a.vertices_[i].size() != b.vertices_[i].size() || a.vertices_[i] != b.vertices_[i]) {
            return false;
        }
    }
    return true;
}

Polytope convex_hull(std::span<const Vector> points, double tol) {
    return Polytope::hull(points, tol);
}

std::vector<Vector> extreme_points(const Polytope& p) {
    return p.vertices();
}

double support(const Polytope& p, const Vector& u) {
    require_same_dim(u.size(), p.dim(), "support");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : p.vertices()) {
        best = std::max(best, v.dot(u));
    }
    return best;
}

Projection project_onto(const Polytope& p, const Vector& z) {
    require_same_dim(z.size(), p.dim(), "project_onto");
    return nearest_point(p.vertices(), z);
}

bool contains(const Polytope& p, const Vector& z, double tol) {
    require(tol >= 0.0, ErrorCode::invalid_argument, "tolerance must be >= 0");
    return project_onto(p, z).dist <= tol + kGeomEps;
}

bool ball_contains(const Ball& b, const Vector& z, double tol) {
    require_same_dim(z.size(), b.dim(), "ball_contains");
    return (z - b.center).norm() <= b.radius + tol;
}

} // namespace rosl
