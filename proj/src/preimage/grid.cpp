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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "rosl/error.hpp"
#include "rosl/preimage.hpp"

namespace rosl {

// ---------------------------------------------------------------------------
// GridSpec

namespace {
constexpr std::size_t kMaxNodes = std::size_t{1} << 28;
}

GridSpec::GridSpec(Vector lo, Vector hi, std::size_t nodes)
    : lower(std::move(lo)), upper(std::move(hi)), nodes_per_axis(nodes) {
    require_valid(lower, "grid lower corner");
    require_valid(upper, "grid upper corner");
    require_same_dim(upper.size(), lower.size(), "grid corners");
    require(lower.size() <= kMaxHullDim, ErrorCode::unsupported, "dimension unsupported");
    require(nodes_per_axis >= 2, ErrorCode::invalid_argument, "grid needs >= 2 nodes per axis");
    for (Eigen::Index k = 0; k < lower.size(); ++k) {
        require(lower(k) < upper(k), ErrorCode::invalid_argument,
                "grid lower corner must be below upper corner");
    }
    double total = 1.0;
    for (int k = 0; k < dim(); ++k) {
        total *= static_cast<double>(nodes_per_axis);
    }
    require(total <= static_cast<double>(kMaxNodes), ErrorCode::invalid_argument,
            "grid has too many nodes");
}

std::size_t GridSpec::node_count() const {
    std::size_t total = 1;
    for (int k = 0; k < dim(); ++k) {
        total *= nodes_per_axis;
    }
    return total;
}

double GridSpec::spacing(int axis) const {
    return (upper(axis) - lower(axis)) / static_cast<double>(nodes_per_axis - 1);
}

double GridSpec::min_spacing() const {
    double h = std::numeric_limits<double>::infinity();
    for (int k = 0; k < dim(); ++k) {
        h = std::min(h, spacing(k));
    }
    return h;
}

double GridSpec::max_spacing() const {
    double h = 0.0;
    for (int k = 0; k < dim(); ++k) {
        h = std::max(h, spacing(k));
    }
    return h;
}

std::vector<std::size_t> GridSpec::multi_index(std::size_t linear) const {
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim()));
    for (auto& i : idx) {
        i = linear % nodes_per_axis;
        linear /= nodes_per_axis;
    }
    return idx;
}

std::size_t GridSpec::linear_index(std::span<const std::size_t> idx) const {
    std::size_t linear = 0;
    for (std::size_t k = idx.size(); k-- > 0;) {
        linear = linear * nodes_per_axis + idx[k];
    }
    return linear;
}

namespace {

// Blend form keeps both end nodes exact and puts the midpoint of a
// symmetric grid exactly at zero.
double coordinate(const GridSpec& g, int axis, std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(g.nodes_per_axis - 1);
    return g.lower(axis) * (1.0 - t) + g.upper(axis) * t;
}

} // namespace

Vector GridSpec::node(std::size_t linear) const {
    Vector p(dim());
    for (int k = 0; k < dim(); ++k) {
        p(k) = coordinate(*this, k, linear % nodes_per_axis);
        linear /= nodes_per_axis;
    }
    return p;
}

std::size_t GridSpec::nearest_node(const Vector& p) const {
    require_same_dim(p.size(), dim(), "nearest_node");
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim()));
    for (int k = 0; k < dim(); ++k) {
        const double r = std::round((p(k) - lower(k)) / spacing(k));
        const double c = std::clamp(r, 0.0, static_cast<double>(nodes_per_axis - 1));
        idx[static_cast<std::size_t>(k)] = static_cast<std::size_t>(c);
    }
    return linear_index(idx);
}

std::size_t GridMask::member_count() const {
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), std::uint8_t{1}));
}

std::vector<std::size_t> GridMask::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < member.size(); ++i) {
        if (member[i]) {
            out.push_back(i);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

// Base points with their (optionally filtered) image vertices, flattened so
// the node loop runs without allocation.
struct BaseTable {
    int dim = 0;
    std::vector<double> x;
    std::vector<std::size_t> offset; // into verts, in units of points
    std::vector<double> verts;

    std::size_t size() const { return offset.size() - 1; }
};

BaseTable build_bases(const SetValuedMap& f, const Vector& ybar, std::span<const Vector> base,
                      bool filtered, unsigned threads) {
    const std::size_t n = base.size();
    std::vector<std::vector<Vector>> images(n);
    detail::parallel_chunks(n, threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const Polytope fx = f.eval(base[i]);
            images[i] = filtered ? gf_extreme_filter(fx, ybar) : fx.vertices();
        }
    });
    BaseTable t;
    t.dim = f.dim();
    t.offset.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < t.dim; ++k) {
            t.x.push_back(base[i](k));
        }
        for (const auto& y : images[i]) {
            for (int k = 0; k < t.dim; ++k) {
                t.verts.push_back(y(k));
            }
        }
        t.offset.push_back(t.offset.back() + images[i].size());
    }
    return t;
}

// gf_membership with the base data pre-flattened; same inequality.
struct Kernel {
    const BaseTable& t;
    std::array<double, kMaxHullDim> ybar{};
    double abs_ell;
    double tol;

    bool keeps(std::size_t i, const double* z) const {
        const int d = t.dim;
        std::array<double, kMaxHullDim> w{};
        double w2 = 0.0;
        double wy = 0.0;
        for (int k = 0; k < d; ++k) {
            w[k] = z[k] - t.x[i * d + k];
            w2 += w[k] * w[k];
            wy += w[k] * ybar[k];
        }
        double sigma = -std::numeric_limits<double>::infinity();
        for (std::size_t v = t.offset[i]; v < t.offset[i + 1]; ++v) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) {
                s += w[k] * t.verts[v * d + k];
            }
            sigma = std::max(sigma, s);
        }
        return abs_ell * w2 <= sigma - wy + tol * std::sqrt(w2);
    }
};

void check_inputs(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid) {
    require_same_dim(ybar.size(), f.dim(), "ybar");
    require_same_dim(grid.dim(), f.dim(), "grid");
    require_valid(ybar, "ybar");
}

GridMask sweep_outer(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                     std::span<const Vector> base, bool filtered, const SweepOptions& opts,
                     std::string base_desc) {
    check_inputs(f, ybar, grid);
    require(!base.empty(), ErrorCode::invalid_argument, "empty base points");
    for (const auto& b : base) {
        require_same_dim(b.size(), f.dim(), "base point");
    }
    const BaseTable table = build_bases(f, ybar, base, filtered, opts.threads);
    Kernel kernel{table, {}, std::abs(f.ell()), grid.tol_grid() + kGeomEps};
    for (int k = 0; k < f.dim(); ++k) {
        kernel.ybar[k] = ybar(k);
    }

    GridMask mask;
    mask.grid = grid;
    mask.member.assign(grid.node_count(), 0);
    const std::size_t nb = table.size();
    detail::parallel_chunks(grid.node_count(), opts.threads, [&](std::size_t b, std::size_t e) {
        // Neighbouring nodes tend to be cut away by the same base point, so
        // the last successful one is tried first. The verdict is an AND over
        // all base points and does not depend on the order.
        std::size_t hint = 0;
        std::array<double, kMaxHullDim> z{};
        for (std::size_t node = b; node < e; ++node) {
            const Vector p = grid.node(node);
            for (int k = 0; k < grid.dim(); ++k) {
                z[k] = p(k);
            }
            bool keep = kernel.keeps(hint, z.data());
            for (std::size_t i = 0; keep && i < nb; ++i) {
                if (i != hint && !kernel.keeps(i, z.data())) {
                    keep = false;
                    hint = i;
                }
            }
            mask.member[node] = keep ? 1 : 0;
        }
    });

    mask.meta.map_id = f.id();
    mask.meta.ybar = ybar;
    mask.meta.source = "outer";
    mask.meta.base = std::move(base_desc);
    mask.meta.base_count = base.size();
    mask.meta.tol = grid.tol_grid();
    return mask;
}

} // namespace

std::vector<Vector> grid_base_points(const GridSpec& grid) {
    std::vector<Vector> out;
    out.reserve(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        out.push_back(grid.node(i));
    }
    return out;
}

namespace {

std::vector<std::uint8_t> inflate_flags(const GridMask& mask, double eps) {
    const GridSpec& g = mask.grid;
    const int d = g.dim();
    std::vector<long> reach(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        reach[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(eps / g.spacing(k) + 1e-9));
    }
    std::vector<std::uint8_t> flags(g.node_count(), 0);
    const auto n = static_cast<long>(g.nodes_per_axis);
    const double eps2 = eps * eps * (1.0 + 1e-12);
    for (std::size_t m : mask.members()) {
        const auto center = g.multi_index(m);
        std::vector<long> off(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            off[static_cast<std::size_t>(k)] = -reach[static_cast<std::size_t>(k)];
        }
        for (;;) {
            double r2 = 0.0;
            bool inside = true;
            std::vector<std::size_t> idx(static_cast<std::size_t>(d));
            for (int k = 0; k < d; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                const long c = static_cast<long>(center[ku]) + off[ku];
                if (c < 0 || c >= n) {
                    inside = false;
                    break;
                }
                idx[ku] = static_cast<std::size_t>(c);
                const double dx = static_cast<double>(off[ku]) * g.spacing(k);
                r2 += dx * dx;
            }
            if (inside && r2 <= eps2) {
                flags[g.linear_index(idx)] = 1;
            }
            int k = 0;
            for (; k < d; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                if (++off[ku] <= reach[ku]) {
                    break;
                }
                off[ku] = -reach[ku];
            }
            if (k == d) {
                break;
            }
        }
    }
    return flags;
}

std::vector<Vector> nodes_of(const GridSpec& g, const std::vector<std::uint8_t>& flags) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i]) {
            out.push_back(g.node(i));
        }
    }
    return out;
}

} // namespace

std::vector<Vector> inflate_base_points(const GridMask& mask, double eps) {
    require(std::isfinite(eps) && eps >= 0.0, ErrorCode::invalid_argument,
            "inflation radius must be finite and >= 0");
    return nodes_of(mask.grid, inflate_flags(mask, eps));
}

GridMask preimage_outer(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                        std::span<const Vector> base_points, bool filtered,
                        const SweepOptions& opts) {
    return sweep_outer(f, ybar, grid, base_points, filtered, opts,
                       "explicit:" + std::to_string(base_points.size()));
}

GridMask preimage_outer_inflated(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                                 double eps, int iterations, bool filtered,
                                 const SweepOptions& opts) {
    require(std::isfinite(eps) && eps > 0.0, ErrorCode::invalid_argument,
            "inflation radius must be > 0");
    require(iterations >= 1, ErrorCode::invalid_argument, "inflation needs >= 1 iteration");
    check_inputs(f, ybar, grid);

    // Coarse lattice: about nine nodes per axis, both ends included.
    const std::size_t n = grid.nodes_per_axis;
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / 8);
    std::vector<std::uint8_t> base(grid.node_count(), 0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto idx = grid.multi_index(i);
        base[i] = std::all_of(idx.begin(), idx.end(),
                              [&](auto c) { return c % stride == 0 || c == n - 1; });
    }

    std::ostringstream desc;
    desc.precision(17);
    desc << "inflate:" << eps << "," << iterations;
    GridMask mask;
    for (int it = 0; it < iterations; ++it) {
        const auto pts = nodes_of(grid, base);
        mask = sweep_outer(f, ybar, grid, pts, filtered, opts, desc.str());
        const auto grown = inflate_flags(mask, eps);
        bool changed = false;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (grown[i] && !base[i]) {
                base[i] = 1;
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
    }
    return mask;
}

GridMask preimage_oracle(const SetValuedMap& f, const Vector& ybar, const GridSpec& grid,
                         const SweepOptions& opts) {
    check_inputs(f, ybar, grid);
    GridMask mask;
    mask.grid = grid;
    mask.member.assign(grid.node_count(), 0);
    const double tol = grid.tol_grid();
    detail::parallel_chunks(grid.node_count(), opts.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t node = b; node < e; ++node) {
            mask.member[node] = contains(f.eval(grid.node(node)), ybar, tol) ? 1 : 0;
        }
    });
    mask.meta.map_id = f.id();
    mask.meta.ybar = ybar;
    mask.meta.source = "oracle";
    mask.meta.base = "oracle";
    mask.meta.base_count = 0;
    mask.meta.tol = tol;
    return mask;
}

// ---------------------------------------------------------------------------
// Mask comparison

namespace {

bool same_grid(const GridSpec& a, const GridSpec& b) {
    return a.dim() == b.dim() && a.nodes_per_axis == b.nodes_per_axis && a.lower == b.lower &&
           a.upper == b.upper;
}

} // namespace

MaskDiff compare_masks(const GridMask& oracle, const GridMask& outer) {
    require(same_grid(oracle.grid, outer.grid), ErrorCode::dimension_mismatch,
            "masks are on different grids");
    const GridSpec& g = oracle.grid;
    MaskDiff diff;
    diff.spacing = g.max_spacing();

    std::vector<Vector> boundary;
    std::vector<std::size_t> differing;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        diff.oracle_members += oracle.member[i];
        diff.outer_members += outer.member[i];
        if (oracle.member[i] != outer.member[i]) {
            (oracle.member[i] ? diff.only_oracle : diff.only_outer) += 1;
            differing.push_back(i);
        }
        if (!oracle.member[i]) {
            continue;
        }
        auto idx = g.multi_index(i);
        bool edge = false;
        for (std::size_t k = 0; k < idx.size() && !edge; ++k) {
            for (int step : {-1, 1}) {
                const long c = static_cast<long>(idx[k]) + step;
                if (c < 0 || c >= static_cast<long>(g.nodes_per_axis)) {
                    continue;
                }
                auto nb = idx;
                nb[k] = static_cast<std::size_t>(c);
                if (!oracle.member[g.linear_index(nb)]) {
                    edge = true;
                    break;
                }
            }
        }
        if (edge) {
            boundary.push_back(g.node(i));
        }
    }

    for (auto i : differing) {
        const Vector p = g.node(i);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : boundary) {
            best = std::min(best, (p - q).norm());
        }
        diff.max_boundary_distance = std::max(diff.max_boundary_distance, best);
    }
    return diff;
}

} // namespace rosl
