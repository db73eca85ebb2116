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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rosl {

using Vector = Eigen::VectorXd;

/// Default tolerance for coincidence and collinearity decisions on
/// unit-scale data.
inline constexpr double kGeomEps = 1e-9;

/// Largest dimension for which convex hulls are computed exactly.
inline constexpr int kMaxHullDim = 3;

bool is_finite(const Vector& v);

/// Throws `ErrorCode::invalid_argument` unless `v` is nonempty and finite.
void require_valid(const Vector& v, const char* what);

/// Throws `ErrorCode::dimension_mismatch` unless `a` and `b` agree.
void require_same_dim(long a, long b, const char* what);

/// Strict lexicographic order on coordinates; used to canonicalize vertex
/// lists so that polytope equality is list equality.
bool lex_less(const Vector& a, const Vector& b);

/// Closed Euclidean ball. Radius zero is the singleton {center}.
struct Ball {
    Vector center;
    double radius = 0.0;

    Ball() = default;
    Ball(Vector c, double r);

    int dim() const { return static_cast<int>(center.size()); }
};

/// Nonempty convex compact set stored as the lexicographically sorted list
/// of its extreme points. Instances are immutable.
class Polytope {
public:
    /// Convex hull of `points`; only extreme points (up to `tol`) are kept.
    static Polytope hull(std::span<const Vector> points, double tol = kGeomEps);
    static Polytope point(const Vector& p);
    /// The segment [lo, hi] in one dimension.
    static Polytope interval(double lo, double hi);

    Polytope translated(const Vector& shift) const;

    int dim() const { return static_cast<int>(vertices_.front().size()); }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<Vector>& vertices() const { return vertices_; }

    friend bool operator==(const Polytope& a, const Polytope& b);

private:
    explicit Polytope(std::vector<Vector> canonical);

    std::vector<Vector> vertices_;
};

Polytope convex_hull(std::span<const Vector> points, double tol = kGeomEps);

/// Indices into `points` of the extreme points of their convex hull, in the
/// lexicographic order of the points they refer to. Near-duplicate points are
/// represented by the lowest index among them.
std::vector<std::size_t> hull_vertex_indices(std::span<const Vector> points,
                                             double tol = kGeomEps);

std::vector<Vector> extreme_points(const Polytope& p);

/// Support function: max over vertices of <v, u>.
double support(const Polytope& p, const Vector& u);

struct Projection {
    Vector point;
    double dist = 0.0;
    /// Convex weights over the input points realizing `point`.
    std::vector<double> weights;
};

/// Nearest point of conv(points) to `z` by Wolfe's active-set method.
/// Terminates when the variational inequality residual
/// max_y <z - p, y - p> drops below `tol` times the squared data scale.
/// Throws `ErrorCode::numerical` ("projection failed") when the iteration
/// budget 10 (n + d)^2 is exhausted.
Projection nearest_point(std::span<const Vector> points, const Vector& z,
                         double tol = kGeomEps);

Projection project_onto(const Polytope& p, const Vector& z);

/// dist(z, P) <= tol + kGeomEps. The extra kGeomEps absorbs the residual of
/// the iterative projection, so `contains(P, z, 0)` accepts every z whose
/// computed distance is at most kGeomEps.
bool contains(const Polytope& p, const Vector& z, double tol = kGeomEps);

/// ||z - center|| <= radius + tol.
bool ball_contains(const Ball& b, const Vector& z, double tol = 0.0);

} // namespace rosl
