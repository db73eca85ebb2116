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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rosl/geometry.hpp"
#include "rosl/maps.hpp"

namespace rosl {

// ---------------------------------------------------------------------------
// Ball cover G_F(x, ybar)
//
// For a map F with constant ell < 0 and a target ybar, every y in F(x)
// contributes the ball
//     B(x + (ybar - y) / (2 ell),  ||ybar - y|| / (2 |ell|)),
// which has x on its boundary. G_F(x, ybar) is the union of these balls.
// Every preimage point of ybar lies in G_F(x, ybar) for every x, and every
// non-preimage point is cut away by some x.
// ---------------------------------------------------------------------------

/// The vertices of `fx` that stay extreme after adjoining `ybar` and
/// convexifying, i.e. ext(F(x)) with the points facing `ybar` removed.
/// The balls they generate cover the same union as all of F(x).
std::vector<Vector> gf_extreme_filter(const Polytope& fx, const Vector& ybar,
                                      double tol = kGeomEps);

/// One ball per vertex of F(x), or per filtered vertex when `filtered`.
std::vector<Ball> gf_balls(const SetValuedMap& f, const Vector& x, const Vector& ybar,
                           bool filtered);

/// Membership of z in the union over targets ybar' with ||ybar' - ybar|| <= tol
/// of G_F(x, ybar'). With w = z - x this is
///     ||w||^2 <= (sigma_{F(x)}(w) - <w, ybar> + tol ||w||) / |ell|,
/// evaluated through the support function. At tol = 0 it is exact membership
/// in G_F(x, ybar); z = x is always a member.
bool gf_membership(const SetValuedMap& f, const Vector& x, const Vector& ybar, const Vector& z,
                   double tol = 0.0);

/// The same predicate evaluated by explicit ball tests on gf_balls(). For
/// tol > 0 the balls are built for the worst-case perturbed target
/// ybar - tol (z - x) / ||z - x||, which attains the maximum over the
/// tolerance ball.
bool gf_membership_via_balls(const SetValuedMap& f, const Vector& x, const Vector& ybar,
                             const Vector& z, double tol = 0.0, bool filtered = false);

// ---------------------------------------------------------------------------
// Grids and masks
// ---------------------------------------------------------------------------

struct GridSpec {
    Vector lower;
    Vector upper;
    std::size_t nodes_per_axis = 2;

    GridSpec() = default;
    GridSpec(Vector lo, Vector hi, std::size_t nodes);

    int dim() const { return static_cast<int>(lower.size()); }
    std::size_t node_count() const;
    double spacing(int axis) const;
    double min_spacing() const;
    double max_spacing() const;
    /// Membership slack used by grid sweeps: half the smallest spacing.
    double tol_grid() const { return 0.5 * min_spacing(); }

    /// Axis 0 varies fastest.
    std::vector<std::size_t> multi_index(std::size_t linear) const;
    std::size_t linear_index(std::span<const std::size_t> idx) const;
    Vector node(std::size_t linear) const;
    /// Nearest node by rounding each coordinate, clamped into the grid.
    std::size_t nearest_node(const Vector& p) const;
};

struct MaskMeta {
    std::string map_id;
    Vector ybar;
    std::string source; ///< "outer" or "oracle"
    std::string base;   ///< base-point description, "oracle" for oracle masks
    std::size_t base_count = 0;
    double tol = 0.0;
};

struct GridMask {
    GridSpec grid;
    std::vector<std::uint8_t> member;
    MaskMeta meta;

    std::size_t member_count() const;
    std::vector<std::size_t> members() const;
};

struct SweepOptions {
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
};

/// Every grid node, as a base-point list.
std::vector<Vector> grid_base_points(const GridSpec& grid);

/// Grid nodes within `eps` of a member of `mask`.
std::vector<Vector> inflate_base_points(const GridMask& mask, double eps);

/// Outer approximation of F^{-1}(ybar): node z is kept iff it passes
/// gf_membership(F, x_i, ybar, z, tol) for every base point x_i, with
/// tol = grid.tol_grid() + kGeomEps. No true preimage node is excluded.
GridMask preimage_outer(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                        std::span<const Vector> base_points, bool filtered,
                        const SweepOptions& opts = {});

/// Iterated epsilon-inflation: starts from a coarse lattice of base points,
/// then repeatedly adds every node within eps of the current mask and
/// recomputes. Base sets only grow, so masks only shrink.
GridMask preimage_outer_inflated(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                                 double eps, int iterations, bool filtered,
                                 const SweepOptions& opts = {});

/// Brute force: node z is a member iff contains(F(z), ybar, tol_grid).
GridMask preimage_oracle(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                         const SweepOptions& opts = {});

struct MaskDiff {
    std::size_t oracle_members = 0;
    std::size_t outer_members = 0;
    std::size_t only_outer = 0;  ///< outer members the oracle rejects
    std::size_t only_oracle = 0; ///< oracle members the outer mask dropped
    /// Largest distance from a differing node to the nearest boundary node of
    /// the oracle mask (a member with a non-member axis neighbour). Zero
    /// when the masks agree; infinite when the oracle mask is empty.
    double max_boundary_distance = 0.0;
    double spacing = 0.0; ///< largest axis spacing
};

MaskDiff compare_masks(const GridMask& oracle, const GridMask& outer);

// ---------------------------------------------------------------------------
// Localization and witnesses
// ---------------------------------------------------------------------------

struct SolvabilityResult {
    bool ok = false;
    Ball ball; ///< the localization ball that was tested
    std::optional<std::size_t> node; ///< first oracle member inside it
};

/// Checks that the localization ball B(x + (ybar - y)/(2 ell), ||ybar - y||/(2|ell|))
/// for the vertex y = F(x).vertices()[y_index], inflated by one grid spacing,
/// holds an oracle member node.
SolvabilityResult solvability_check(const SetValuedMap& f, const Vector& x, std::size_t y_index,
                                    const Vector& ybar, const GridMask& oracle);

struct WitnessOptions {
    int max_delta_trials = 64;
};

/// Constructs a base point x with z outside G_F(x, ybar). The direction v
/// points from ybar to its projection p onto F(z); x = z + delta v with
/// delta swept over delta0 * 2^k, k = 0, -1, 1, -2, 2, ..., starting at
/// delta0 = ||p - ybar|| / (2 |ell|). Returns nullopt if no trial works.
/// Throws `ErrorCode::precondition` if z is a preimage point.
std::optional<Vector> witness_excluding_base(const SetValuedMap& f, const Vector& ybar,
                                             const Vector& z, const WitnessOptions& opts = {});

// ---------------------------------------------------------------------------
// Filter benchmark
// ---------------------------------------------------------------------------

struct FilterBenchResult {
    std::size_t vertices = 0;
    std::size_t queries = 0;
    std::size_t mismatches = 0;
    std::size_t members = 0;
    double mean_retained_fraction = 0.0;
    double unfiltered_qps = 0.0;
    double filtered_qps = 0.0;
};

/// Membership queries against F(x) = -x + P for a regular n-gon P and a
/// target far outside the images, comparing unfiltered and filtered ball
/// unions. All randomness comes from `seed`.
FilterBenchResult bench_filter(std::size_t n_vertices, std::size_t queries, std::uint64_t seed);

} // namespace rosl
