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

// Seeded generators and brute-force reference computations shared by the
// test binaries. Nothing here calls into the library's geometry routines.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rosl/maps.hpp"

namespace rosl::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    Vector box(int dim, double lo, double hi) {
        Vector v(dim);
        for (int k = 0; k < dim; ++k) {
            v(k) = uniform(lo, hi);
        }
        return v;
    }

    Vector direction(int dim) {
        Vector v(dim);
        do {
            for (int k = 0; k < dim; ++k) {
                v(k) = normal();
            }
        } while (v.norm() < 1e-6);
        return v / v.norm();
    }

    std::vector<Vector> cloud(int n, int dim, double lo, double hi) {
        std::vector<Vector> pts;
        for (int i = 0; i < n; ++i) {
            pts.push_back(box(dim, lo, hi));
        }
        return pts;
    }

    // Random point of conv(pts) with Dirichlet-like weights.
    Vector convex_combination(const std::vector<Vector>& pts) {
        std::vector<double> w(pts.size());
        double sum = 0.0;
        for (auto& wi : w) {
            wi = -std::log(uniform(1e-12, 1.0));
            sum += wi;
        }
        Vector out = Vector::Zero(pts.front().size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            out += (w[i] / sum) * pts[i];
        }
        return out;
    }

    // Symmetric matrix with eigenvalues drawn from [lam_lo, lam_hi] and a
    // random orthonormal eigenbasis. The smallest drawn eigenvalue is
    // returned through `lam_min`.
    Eigen::MatrixXd spd(int dim, double lam_lo, double lam_hi, double& lam_min) {
        Eigen::MatrixXd a(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                a(i, j) = normal();
            }
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        const Eigen::MatrixXd q = qr.householderQ();
        Vector lam(dim);
        for (int k = 0; k < dim; ++k) {
            lam(k) = uniform(lam_lo, lam_hi);
        }
        lam_min = lam.minCoeff();
        Eigen::MatrixXd m = q * lam.asDiagonal() * q.transpose();
        return 0.5 * (m + m.transpose());
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

// Vertices of a polygon with `n` vertices in convex position: sorted random
// angles on an ellipse, shifted and scaled.
inline std::vector<Vector> convex_polygon(Rng& rng, int n, double scale = 1.0) {
    std::vector<double> ang(n);
    for (auto& a : ang) {
        a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    std::sort(ang.begin(), ang.end());
    const double ax = rng.uniform(0.5, 1.5) * scale;
    const double ay = rng.uniform(0.5, 1.5) * scale;
    const Vector shift = rng.box(2, -0.3 * scale, 0.3 * scale);
    std::vector<Vector> out;
    for (double a : ang) {
        Vector v(2);
        v << ax * std::cos(a), ay * std::sin(a);
        out.push_back(v + shift);
    }
    return out;
}

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index k = 0;
    for (double x : xs) {
        v(k++) = x;
    }
    return v;
}

// Barycentric weights of p with respect to the affinely independent points
// `simplex` (k+1 points spanning a k-simplex in R^d, solved in the least
// squares sense). Returns false if p is off the simplex's affine hull.
inline bool barycentric(const std::vector<Vector>& simplex, const Vector& p,
                        std::vector<double>& w, double tol) {
    const int d = static_cast<int>(p.size());
    const int k = static_cast<int>(simplex.size());
    Eigen::MatrixXd a(d + 1, k);
    Eigen::VectorXd rhs(d + 1);
    for (int j = 0; j < k; ++j) {
        a.block(0, j, d, 1) = simplex[j];
        a(d, j) = 1.0;
    }
    rhs.head(d) = p;
    rhs(d) = 1.0;
    const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
    if ((a * sol - rhs).norm() > tol) {
        return false;
    }
    w.assign(sol.data(), sol.data() + k);
    return true;
}

// True when p is a convex combination of some d+1 (or fewer) points of
// `others`; exhaustive over subsets of size up to d+1. Meant for small,
// generic point sets.
inline bool in_hull_bruteforce(const std::vector<Vector>& others, const Vector& p, double tol) {
    const int d = static_cast<int>(p.size());
    const int n = static_cast<int>(others.size());
    std::vector<int> idx;
    std::vector<double> w;
    // Enumerate subsets of size 1..d+1 by recursion.
    auto rec = [&](auto&& self, int start, int remaining) -> bool {
        if (!idx.empty()) {
            std::vector<Vector> s;
            for (int i : idx) {
                s.push_back(others[i]);
            }
            if (barycentric(s, p, w, tol) &&
                std::all_of(w.begin(), w.end(), [tol](double x) { return x >= -tol; })) {
                return true;
            }
        }
        if (remaining == 0) {
            return false;
        }
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            if (self(self, i + 1, remaining - 1)) {
                return true;
            }
            idx.pop_back();
        }
        return false;
    };
    return rec(rec, 0, d + 1);
}

// Extreme points of a generic point set by leave-one-out membership.
inline std::vector<Vector> extreme_bruteforce(const std::vector<Vector>& pts, double tol) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Vector> others;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) {
                others.push_back(pts[j]);
            }
        }
        if (!in_hull_bruteforce(others, pts[i], tol)) {
            out.push_back(pts[i]);
        }
    }
    return out;
}

inline bool same_point_set(std::vector<Vector> a, std::vector<Vector> b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    for (const auto& p : a) {
        auto it = std::find_if(b.begin(), b.end(),
                               [&](const Vector& q) { return (p - q).norm() <= tol; });
        if (it == b.end()) {
            return false;
        }
        b.erase(it);
    }
    return true;
}

// max_{y in A} min_{y' in B} <y' - y, u> over vertex lists.
inline double worst_best_response(const std::vector<Vector>& a, const std::vector<Vector>& b,
                                  const Vector& u) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& y : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y2 : b) {
            best = std::min(best, (y2 - y).dot(u));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Membership in the union of balls B(x + (ybar - y)/(2 ell), ||ybar - y||/(2|ell|))
// over the given generators y.
inline bool ball_union_contains(const std::vector<Vector>& generators, const Vector& x,
                                const Vector& ybar, double ell, const Vector& z) {
    for (const auto& y : generators) {
        const Vector c = x + (ybar - y) / (2.0 * ell);
        const double r = (ybar - y).norm() / (2.0 * std::abs(ell));
        if ((z - c).norm() <= r) {
            return true;
        }
    }
    return false;
}

// Random affine map F(x) = b - M x + conv(P) in 2D with P in convex position.
struct AffineInstance {
    Vector b;
    Eigen::MatrixXd m;
    std::vector<Vector> p;
    double lam_min = 0.0;
};

inline AffineInstance random_affine(Rng& rng, int dim, int n_vertices, double lam_lo = 0.5,
                                    double lam_hi = 2.0) {
    AffineInstance inst;
    inst.m = rng.spd(dim, lam_lo, lam_hi, inst.lam_min);
    inst.b = rng.box(dim, -0.5, 0.5);
    if (dim == 2) {
        inst.p = convex_polygon(rng, n_vertices);
    } else {
        inst.p = rng.cloud(n_vertices, dim, -1.0, 1.0);
    }
    return inst;
}

} // namespace rosl::testing
