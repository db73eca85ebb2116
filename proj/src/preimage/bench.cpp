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

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "rosl/error.hpp"
#include "rosl/preimage.hpp"

namespace rosl {

FilterBenchResult bench_filter(std::size_t n_vertices, std::size_t queries, std::uint64_t seed) {
    require(n_vertices >= 3, ErrorCode::invalid_argument, "bench needs >= 3 polygon vertices");
    require(queries >= 1, ErrorCode::invalid_argument, "bench needs >= 1 query");

    std::vector<Vector> ngon;
    ngon.reserve(n_vertices);
    for (std::size_t k = 0; k < n_vertices; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n_vertices);
        ngon.push_back(Vector{{std::cos(a), std::sin(a)}});
    }
    const Polytope p = convex_hull(ngon);
    const auto f = make_affine_polytope(Vector::Zero(2), Eigen::MatrixXd::Identity(2, 2), p);
    const Vector ybar{{30.0, 10.0}};
    const double reach = (ybar.norm() + 3.0) / std::abs(f.ell());

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.0, reach);
    std::vector<std::pair<Vector, Vector>> qs;
    qs.reserve(queries);
    for (std::size_t q = 0; q < queries; ++q) {
        Vector x{{unit(rng), unit(rng)}};
        const double a = angle(rng);
        const double r = radius(rng);
        Vector z = x + r * Vector{{std::cos(a), std::sin(a)}};
        qs.emplace_back(std::move(x), std::move(z));
    }

    FilterBenchResult res;
    res.vertices = p.size();
    res.queries = queries;

    using clock = std::chrono::steady_clock;
    std::vector<char> plain(queries);
    auto t0 = clock::now();
    for (std::size_t q = 0; q < queries; ++q) {
        plain[q] = gf_membership_via_balls(f, qs[q].first, ybar, qs[q].second, 0.0, false);
    }
    auto t1 = clock::now();
    std::vector<char> filt(queries);
    for (std::size_t q = 0; q < queries; ++q) {
        filt[q] = gf_membership_via_balls(f, qs[q].first, ybar, qs[q].second, 0.0, true);
    }
    auto t2 = clock::now();

    double retained = 0.0;
    for (std::size_t q = 0; q < queries; ++q) {
        res.mismatches += plain[q] != filt[q];
        res.members += plain[q] != 0;
        retained += static_cast<double>(gf_extreme_filter(f.eval(qs[q].first), ybar).size()) /
                    static_cast<double>(p.size());
    }
    res.mean_retained_fraction = retained / static_cast<double>(queries);
    const auto secs = [](auto d) {
        return std::max(std::chrono::duration<double>(d).count(), 1e-9);
    };
    res.unfiltered_qps = static_cast<double>(queries) / secs(t1 - t0);
    res.filtered_qps = static_cast<double>(queries) / secs(t2 - t1);
    return res;
}

} // namespace rosl
