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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rosl/error.hpp"
#include "rosl/geometry.hpp"
#include "support.hpp"

using namespace rosl;
using rosl::testing::Rng;
using rosl::testing::vec;

namespace {

std::vector<Vector> square() {
    return {vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})};
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::invalid_argument;
}

} // namespace

TEST_CASE("hull of a 1D set keeps the endpoints") {
    const std::vector<Vector> pts{vec({0}), vec({1}), vec({0.5})};
    const Polytope p = convex_hull(pts);
    REQUIRE(p.size() == 2);
    CHECK(p.vertices()[0](0) == 0.0);
    CHECK(p.vertices()[1](0) == 1.0);
}

TEST_CASE("hull drops an interior point") {
    auto pts = square();
    pts.push_back(vec({0, 0}));
    const Polytope p = convex_hull(pts);
    CHECK(testing::same_point_set(p.vertices(), square(), 0.0));
}

TEST_CASE("hull drops a point inside a triangle of the others") {
    const std::vector<Vector> pts{vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1}), vec({3, 0})};
    // (1,0) as a convex combination of (0,1), (0,-1), (3,0).
    std::vector<double> w;
    REQUIRE(testing::barycentric({vec({0, 1}), vec({0, -1}), vec({3, 0})}, vec({1, 0}), w, 1e-12));
    for (double wi : w) {
        CHECK(wi >= 0.0);
    }
    CHECK(w[2] == doctest::Approx(1.0 / 3.0));

    const Polytope p = convex_hull(pts);
    CHECK(testing::same_point_set(p.vertices(),
                                  {vec({-1, 0}), vec({0, 1}), vec({0, -1}), vec({3, 0})}, 0.0));
}

TEST_CASE("hull errors") {
    const std::vector<Vector> none;
    CHECK(code_of([&] { convex_hull(none); }) == ErrorCode::invalid_argument);
    const std::vector<Vector> mixed{vec({0, 0}), vec({1})};
    CHECK(code_of([&] { convex_hull(mixed); }) == ErrorCode::dimension_mismatch);
    const std::vector<Vector> four{vec({0, 0, 0, 0}), vec({1, 0, 0, 0})};
    CHECK(code_of([&] { convex_hull(four); }) == ErrorCode::unsupported);
    try {
        convex_hull(none);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("empty point set") != std::string::npos);
    }
    try {
        convex_hull(four);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("dimension unsupported") != std::string::npos);
    }
    const std::vector<Vector> bad{vec({0, std::nan("")})};
    CHECK(code_of([&] { convex_hull(bad); }) == ErrorCode::invalid_argument);
}

TEST_CASE("hull vertices are sorted lexicographically") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        const auto pts = rng.cloud(12, 2, -1, 1);
        const auto v = convex_hull(pts).vertices();
        for (std::size_t i = 1; i < v.size(); ++i) {
            CHECK(lex_less(v[i - 1], v[i]));
        }
    }
}

TEST_CASE("hull matches a leave-one-out oracle in 2D and 3D") {
    Rng rng(11);
    for (int dim : {2, 3}) {
        for (int t = 0; t < 150; ++t) {
            const int n = rng.integer(dim + 1, dim == 2 ? 12 : 10);
            const auto pts = rng.cloud(n, dim, -1, 1);
            const auto expected = testing::extreme_bruteforce(pts, 1e-10);
            const auto got = convex_hull(pts).vertices();
            CHECK(testing::same_point_set(got, expected, 0.0));
        }
    }
}

TEST_CASE("3D cube with interior and face points") {
    std::vector<Vector> pts;
    for (int i = 0; i < 8; ++i) {
        pts.push_back(vec({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)}));
    }
    const auto corners = pts;
    pts.push_back(vec({0.5, 0.5, 0.5}));
    pts.push_back(vec({0.5, 0.5, 0.0}));
    pts.push_back(vec({1.0, 0.5, 0.5}));
    pts.push_back(vec({0.0, 0.0, 0.5}));
    CHECK(testing::same_point_set(convex_hull(pts).vertices(), corners, 0.0));
}

TEST_CASE("degenerate 3D inputs: coplanar, collinear, coincident") {
    const std::vector<Vector> planar{vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}),
                                     vec({1, 1, 1}), vec({0.5, 0.5, 1})};
    CHECK(convex_hull(planar).size() == 4);
    const std::vector<Vector> line{vec({0, 0, 0}), vec({1, 1, 1}), vec({2, 2, 2}), vec({0.5, 0.5, 0.5})};
    const auto v = convex_hull(line).vertices();
    REQUIRE(v.size() == 2);
    CHECK(v[0] == vec({0, 0, 0}));
    CHECK(v[1] == vec({2, 2, 2}));
    const std::vector<Vector> same{vec({1, 2, 3}), vec({1, 2, 3})};
    CHECK(convex_hull(same).size() == 1);
    const std::vector<Vector> planar2d{vec({0, 0}), vec({1, 1}), vec({2, 2})};
    CHECK(convex_hull(planar2d).size() == 2);
}

TEST_CASE("hull is idempotent") {
    Rng rng(13);
    for (int dim = 1; dim <= 3; ++dim) {
        for (int t = 0; t < 200; ++t) {
            const auto pts = rng.cloud(rng.integer(1, 20), dim, -2, 2);
            const Polytope once = convex_hull(pts);
            const Polytope twice = convex_hull(once.vertices());
            CHECK(once == twice);
        }
    }
}

TEST_CASE("extreme points form a subset whose hull contains every input") {
    Rng rng(17);
    for (int dim = 1; dim <= 3; ++dim) {
        for (int t = 0; t < 200; ++t) {
            const auto pts = rng.cloud(rng.integer(1, 15), dim, -1, 1);
            const Polytope p = convex_hull(pts);
            const auto ext = extreme_points(p);
            REQUIRE(!ext.empty());
            for (const auto& e : ext) {
                CHECK(std::any_of(pts.begin(), pts.end(), [&](const Vector& q) { return q == e; }));
            }
            const Polytope again = convex_hull(ext);
            for (const auto& q : pts) {
                CHECK(contains(again, q, kGeomEps));
            }
        }
    }
}

TEST_CASE("extreme point examples") {
    CHECK(extreme_points(Polytope::point(vec({2, 3}))) == std::vector<Vector>{vec({2, 3})});
    const auto iv = extreme_points(Polytope::interval(-2, 2));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0](0) == -2.0);
    CHECK(iv[1](0) == 2.0);
    CHECK(testing::same_point_set(extreme_points(convex_hull(square())), square(), 0.0));
}

TEST_CASE("support function examples") {
    const Polytope sq = convex_hull(square());
    CHECK(support(sq, vec({1, 0})) == 1.0);
    CHECK(support(Polytope::interval(2, 3), vec({-2})) == -4.0);
    CHECK(support(sq, vec({0, 0})) == 0.0);
    CHECK_THROWS_AS(support(sq, vec({1})), Error);
}

TEST_CASE("support function is positively homogeneous and subadditive") {
    Rng rng(19);
    for (int t = 0; t < 2000; ++t) {
        const int dim = rng.integer(1, 3);
        const Polytope p = convex_hull(rng.cloud(rng.integer(1, 8), dim, -3, 3));
        const Vector u = rng.box(dim, -2, 2);
        const Vector w = rng.box(dim, -2, 2);
        const double lam = rng.uniform(0, 5);
        const double lhs = support(p, lam * u);
        const double rhs = lam * support(p, u);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        CHECK(support(p, u + w) <= support(p, u) + support(p, w) + kGeomEps);
    }
}

TEST_CASE("contains examples") {
    CHECK(contains(Polytope::interval(-2, 2), vec({0}), 0.0));
    CHECK_FALSE(contains(Polytope::interval(-3, -2), vec({0}), kGeomEps));
    const Polytope sq = convex_hull(square());
    CHECK(contains(sq, sq.vertices().front(), 0.0));
    CHECK_THROWS_AS(contains(sq, vec({0}), 0.0), Error);
}

TEST_CASE("ball_contains examples") {
    const double tol = 1e-9;
    const Ball b(vec({0, 0}), 2.0);
    CHECK(ball_contains(b, vec({0, 2}), tol));
    CHECK_FALSE(ball_contains(b, vec({0, 2 + 10 * tol}), tol));
    const Ball pt(vec({1, 2}), 0.0);
    CHECK(ball_contains(pt, vec({1, 2}), 0.0));
    CHECK_THROWS_AS(ball_contains(b, vec({0}), 0.0), Error);
    CHECK_THROWS_AS(Ball(vec({0}), -1.0), Error);
}

TEST_CASE("projection examples") {
    const auto a = project_onto(Polytope::interval(-3, -2), vec({0}));
    CHECK(a.point(0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(a.dist == doctest::Approx(2.0).epsilon(1e-12));
    const auto b = project_onto(convex_hull(square()), vec({3, 0}));
    CHECK((b.point - vec({1, 0})).norm() <= 1e-9);
    CHECK(b.dist == doctest::Approx(2.0).epsilon(1e-12));
    const auto c = project_onto(convex_hull(square()), vec({0.3, -0.2}));
    CHECK((c.point - vec({0.3, -0.2})).norm() <= 1e-9);
    CHECK(c.dist <= 1e-9);
}

TEST_CASE("projection satisfies the variational inequality") {
    Rng rng(23);
    for (int t = 0; t < 3000; ++t) {
        const int dim = rng.integer(1, 3);
        const auto pts = rng.cloud(rng.integer(1, 10), dim, -1, 1);
        const Polytope p = convex_hull(pts);
        const Vector z = rng.box(dim, -3, 3);
        const Projection pr = project_onto(p, z);
        CHECK(std::abs(pr.dist - (z - pr.point).norm()) <= 1e-12);
        double worst = -1.0;
        for (const auto& y : p.vertices()) {
            worst = std::max(worst, (z - pr.point).dot(y - pr.point));
        }
        CHECK(worst <= kGeomEps * std::max(1.0, (z - pr.point).squaredNorm() + 4.0 * dim));
        // The reported point is a convex combination of the vertices.
        double wsum = 0.0;
        Vector rebuilt = Vector::Zero(dim);
        REQUIRE(pr.weights.size() == p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(pr.weights[i] >= -1e-12);
            wsum += pr.weights[i];
            rebuilt += pr.weights[i] * p.vertices()[i];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK((rebuilt - pr.point).norm() <= 1e-9);
    }
}

TEST_CASE("contains at zero tolerance agrees with projection distance") {
    Rng rng(29);
    for (int t = 0; t < 2000; ++t) {
        const int dim = rng.integer(1, 3);
        const auto pts = rng.cloud(rng.integer(1, 8), dim, -1, 1);
        const Polytope p = convex_hull(pts);
        // Half the queries are convex combinations, i.e. genuine members.
        const Vector z = (t % 2) ? rng.convex_combination(pts) : rng.box(dim, -1.5, 1.5);
        const bool in = contains(p, z, 0.0);
        CHECK(in == (project_onto(p, z).dist <= kGeomEps));
        if (t % 2) {
            CHECK(in);
        }
    }
}

TEST_CASE("a small ball around a point of C is covered by some vertex ball") {
    // For x in B(z, |z|) with z in C, some vertex z* of C has x in B(z*, |z*|).
    Rng rng(31);
    int trials = 0;
    for (int t = 0; t < 1500; ++t) {
        const auto c = rng.cloud(rng.integer(1, 6), 2, -2, 2);
        const Polytope p = convex_hull(c);
        const Vector z = rng.convex_combination(p.vertices());
        const Vector x = z + rng.uniform(0, 1) * z.norm() * rng.direction(2);
        if (!ball_contains(Ball(z, z.norm()), x, 0.0)) {
            continue;
        }
        ++trials;
        bool found = false;
        for (const auto& v : p.vertices()) {
            found = found || ball_contains(Ball(v, v.norm()), x, 1e-12);
        }
        CHECK(found);
    }
    CHECK(trials >= 1000);
}

TEST_CASE("vertices of conv(C and the origin) are the origin or vertices of C") {
    Rng rng(37);
    for (int t = 0; t < 1500; ++t) {
        const int dim = rng.integer(1, 3);
        auto c = rng.cloud(rng.integer(1, 7), dim, -2, 2);
        const Polytope p = convex_hull(c);
        auto with0 = p.vertices();
        with0.push_back(Vector::Zero(dim));
        const Polytope hull0 = convex_hull(with0);
        for (const auto& v : hull0.vertices()) {
            const bool origin = v.norm() <= kGeomEps;
            const bool old = std::any_of(p.vertices().begin(), p.vertices().end(),
                                         [&](const Vector& q) { return q == v; });
            CHECK((origin || old));
        }
    }
}

TEST_CASE("translation keeps a polytope canonical") {
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
        const int dim = rng.integer(1, 3);
        const Polytope p = convex_hull(rng.cloud(8, dim, -1, 1));
        const Vector s = rng.box(dim, -5, 5);
        std::vector<Vector> moved;
        for (const auto& v : p.vertices()) {
            moved.push_back(v + s);
        }
        const Polytope q = p.translated(s);
        CHECK(testing::same_point_set(q.vertices(), moved, 1e-12));
        for (std::size_t i = 1; i < q.size(); ++i) {
            CHECK(lex_less(q.vertices()[i - 1], q.vertices()[i]));
        }
    }
}

TEST_CASE("projection copes with lattice inputs full of coplanar and repeated points") {
    Rng rng(43);
    for (int t = 0; t < 1500; ++t) {
        const int dim = rng.integer(2, 3);
        std::vector<Vector> pts;
        const int n = rng.integer(4, 14);
        for (int i = 0; i < n; ++i) {
            Vector v(dim);
            for (int k = 0; k < dim; ++k) {
                v(k) = rng.integer(-1, 1);
            }
            pts.push_back(v);
        }
        Vector z(dim);
        for (int k = 0; k < dim; ++k) {
            z(k) = 0.5 * rng.integer(-4, 4);
        }
        const Projection pr = nearest_point(pts, z);
        double worst = -1.0;
        for (const auto& y : pts) {
            worst = std::max(worst, (z - pr.point).dot(y - pr.point));
        }
        CHECK(worst <= 1e-8);
        CHECK_NOTHROW(convex_hull(pts));
    }
}
