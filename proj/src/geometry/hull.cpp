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

// Exact extreme-point enumeration for d <= 3: sort in 1D, Andrew's monotone
// chain in 2D, incremental hull in 3D. Lower-dimensional 3D inputs are
// projected onto their affine span first.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "rosl/error.hpp"
#include "rosl/geometry.hpp"

namespace rosl {
namespace {

using Point2 = std::array<double, 2>;

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist2(const Point2& a, const Point2& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

// `pts` must be lexicographically sorted without exact duplicates. Returns
// positions into `pts` in counter-clockwise order.
std::vector<std::size_t> monotone_chain(const std::vector<Point2>& pts, double tol) {
    const std::size_t n = pts.size();
    if (n == 1) {
        return {0};
    }
    // `a` stays on the chain only if it lies more than `tol` left of the
    // segment from its predecessor to the incoming point.
    auto turns_left = [&](std::size_t o, std::size_t a, std::size_t b) {
        return cross(pts[o], pts[a], pts[b]) > tol * dist2(pts[o], pts[b]);
    };

    std::vector<std::size_t> chain;
    chain.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        while (chain.size() >= 2 && !turns_left(chain[chain.size() - 2], chain.back(), i)) {
            chain.pop_back();
        }
        chain.push_back(i);
    }
    const std::size_t lower = chain.size() + 1;
    for (std::size_t k = n - 1; k-- > 0;) {
        while (chain.size() >= lower && !turns_left(chain[chain.size() - 2], chain.back(), k)) {
            chain.pop_back();
        }
        chain.push_back(k);
    }
    chain.pop_back(); // closes onto the first point

    std::vector<std::size_t> out;
    for (auto i : chain) {
        if (!out.empty() && dist2(pts[out.back()], pts[i]) <= tol) {
            continue;
        }
        out.push_back(i);
    }
    while (out.size() > 1 && dist2(pts[out.back()], pts[out.front()]) <= tol) {
        out.pop_back();
    }
    return out;
}

std::vector<std::size_t> hull_1d(std::span<const Vector> points,
                                 const std::vector<std::size_t>& order, double tol) {
    const auto lo = order.front();
    const auto hi = order.back();
    if (points[hi][0] - points[lo][0] <= tol) {
        return {lo};
    }
    return {lo, hi};
}

std::vector<std::size_t> hull_2d(std::span<const Vector> points,
                                 const std::vector<std::size_t>& order, double tol) {
    std::vector<Point2> pts;
    pts.reserve(order.size());
    for (auto i : order) {
        pts.push_back({points[i][0], points[i][1]});
    }
    std::vector<std::size_t> out;
    for (auto pos : monotone_chain(pts, tol)) {
        out.push_back(order[pos]);
    }
    return out;
}

struct Face {
    std::size_t a, b, c;
    Eigen::Vector3d normal;
    double offset;
};

std::vector<std::size_t> hull_3d(std::span<const Vector> points,
                                 const std::vector<std::size_t>& order, double tol) {
    auto at = [&](std::size_t i) -> Eigen::Vector3d { return points[i].head<3>(); };

    // Affine span detection on the deduplicated candidates.
    const std::size_t i0 = order.front();
    const Eigen::Vector3d p0 = at(i0);
    std::size_t i1 = i0;
    double best = 0.0;
    for (auto i : order) {
        double d = (at(i) - p0).norm();
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best <= tol) {
        return {i0};
    }
    const Eigen::Vector3d e1 = (at(i1) - p0).normalized();

    std::size_t i2 = i0;
    best = 0.0;
    for (auto i : order) {
        Eigen::Vector3d q = at(i) - p0;
        double d = (q - q.dot(e1) * e1).norm();
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= tol) {
        // Collinear: extremes of the line parameter.
        auto [mn, mx] = std::minmax_element(order.begin(), order.end(), [&](auto a, auto b) {
            return (at(a) - p0).dot(e1) < (at(b) - p0).dot(e1);
        });
        return {*mn, *mx};
    }
    Eigen::Vector3d e2 = at(i2) - p0;
    e2 = (e2 - e2.dot(e1) * e1).normalized();
    const Eigen::Vector3d plane_normal = e1.cross(e2);

    std::size_t i3 = i0;
    best = 0.0;
    for (auto i : order) {
        double d = std::abs((at(i) - p0).dot(plane_normal));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= tol) {
        // Coplanar: monotone chain in the plane's coordinates.
        std::vector<std::pair<Point2, std::size_t>> proj;
        proj.reserve(order.size());
        for (auto i : order) {
            Eigen::Vector3d q = at(i) - p0;
            proj.push_back({{q.dot(e1), q.dot(e2)}, i});
        }
        std::sort(proj.begin(), proj.end());
        std::vector<Point2> pts;
        std::vector<std::size_t> ids;
        for (const auto& [pt, i] : proj) {
            if (!pts.empty() && pts.back() == pt) {
                continue;
            }
            pts.push_back(pt);
            ids.push_back(i);
        }
        std::vector<std::size_t> out;
        for (auto pos : monotone_chain(pts, tol)) {
            out.push_back(ids[pos]);
        }
        return out;
    }

    const Eigen::Vector3d interior = (at(i0) + at(i1) + at(i2) + at(i3)) / 4.0;
    std::vector<Face> faces;
    auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
        Eigen::Vector3d n = (at(b) - at(a)).cross(at(c) - at(a));
        const double len = n.norm();
        if (len == 0.0) {
            fail(ErrorCode::numerical, "degenerate hull facet");
        }
        n /= len;
        double off = n.dot(at(a));
        if (n.dot(interior) - off > 0.0) {
            std::swap(b, c);
            n = -n;
            off = -off;
        }
        faces.push_back({a, b, c, n, off});
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    // Far points first so that few interior points ever become vertices.
    std::vector<std::size_t> rest;
    for (auto i : order) {
        if (i != i0 && i != i1 && i != i2 && i != i3) {
            rest.push_back(i);
        }
    }
    std::stable_sort(rest.begin(), rest.end(), [&](auto a, auto b) {
        return (at(a) - interior).squaredNorm() > (at(b) - interior).squaredNorm();
    });

    for (auto p : rest) {
        const Eigen::Vector3d q = at(p);
        std::vector<bool> visible(faces.size(), false);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].normal.dot(q) - faces[f].offset > tol) {
                visible[f] = true;
                any = true;
            }
        }
        if (!any) {
            continue;
        }
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (visible[f]) {
                edges.insert({faces[f].a, faces[f].b});
                edges.insert({faces[f].b, faces[f].c});
                edges.insert({faces[f].c, faces[f].a});
            }
        }
        std::vector<Face> kept;
        kept.reserve(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) {
                kept.push_back(faces[f]);
            }
        }
        faces = std::move(kept);
        for (const auto& [a, b] : edges) {
            if (!edges.count({b, a})) {
                add_face(a, b, p);
            }
        }
    }

    std::set<std::size_t> verts;
    for (const auto& f : faces) {
        verts.insert(f.a);
        verts.insert(f.b);
        verts.insert(f.c);
    }
    // A vertex can sit within tol of a facet formed after it was inserted.
    std::vector<std::size_t> out(verts.begin(), verts.end());
    for (std::size_t k = 0; k < out.size() && out.size() > 4;) {
        std::vector<Vector> others;
        for (std::size_t m = 0; m < out.size(); ++m) {
            if (m != k) {
                others.push_back(points[out[m]]);
            }
        }
        if (nearest_point(others, points[out[k]]).dist <= tol) {
            out.erase(out.begin() + static_cast<long>(k));
        } else {
            ++k;
        }
    }
    return out;
}

} // namespace

std::vector<std::size_t> hull_vertex_indices(std::span<const Vector> points, double tol) {
    require(!points.empty(), ErrorCode::invalid_argument, "empty point set");
    require(tol > 0.0, ErrorCode::invalid_argument, "hull tolerance must be > 0");
    const long d = points.front().size();
    for (const auto& p : points) {
        require_valid(p, "hull point");
        require_same_dim(p.size(), d, "convex_hull");
    }
    require(d <= kMaxHullDim, ErrorCode::unsupported, "dimension unsupported");

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return lex_less(points[a], points[b]); });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](auto a, auto b) { return points[a] == points[b]; }),
                order.end());

    std::vector<std::size_t> out;
    switch (d) {
    case 1:
        out = hull_1d(points, order, tol);
        break;
    case 2:
        out = hull_2d(points, order, tol);
        break;
    default:
        out = hull_3d(points, order, tol);
        break;
    }
    std::sort(out.begin(), out.end(),
              [&](auto a, auto b) { return lex_less(points[a], points[b]); });
    return out;
}

} // namespace rosl
