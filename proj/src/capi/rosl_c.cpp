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

#include "rosl/rosl.h"

#include <cmath>
#include <new>
#include <string>

#include "rosl/error.hpp"
#include "rosl/mask_io.hpp"
#include "rosl/maps.hpp"
#include "rosl/preimage.hpp"

struct rosl_map {
    rosl::SetValuedMap impl;
};

struct rosl_mask {
    rosl::GridMask impl;
};

namespace {

thread_local std::string last_error;

rosl_status to_status(rosl::ErrorCode code) {
    switch (code) {
    case rosl::ErrorCode::invalid_argument:
        return ROSL_ERR_INVALID_ARGUMENT;
    case rosl::ErrorCode::dimension_mismatch:
        return ROSL_ERR_DIMENSION;
    case rosl::ErrorCode::unsupported:
        return ROSL_ERR_UNSUPPORTED;
    case rosl::ErrorCode::numerical:
        return ROSL_ERR_NUMERICAL;
    case rosl::ErrorCode::precondition:
        return ROSL_ERR_PRECONDITION;
    case rosl::ErrorCode::parse:
        return ROSL_ERR_PARSE;
    case rosl::ErrorCode::io:
        return ROSL_ERR_IO;
    }
    return ROSL_ERR_INTERNAL;
}

template <class Fn>
rosl_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return ROSL_OK;
    } catch (const rosl::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return ROSL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return ROSL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return ROSL_ERR_INTERNAL;
    }
}

void non_null(const void* p, const char* what) {
    if (p == nullptr) {
        rosl::fail(rosl::ErrorCode::invalid_argument, std::string(what) + " is NULL");
    }
}

rosl::Vector point(const double* data, std::size_t dim, const char* what) {
    non_null(data, what);
    rosl::Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        v(static_cast<Eigen::Index>(k)) = data[k];
    }
    rosl::require_valid(v, what);
    return v;
}

std::vector<rosl::Vector> points(const double* data, std::size_t n, std::size_t dim,
                                 const char* what) {
    if (n > 0) {
        non_null(data, what);
    }
    std::vector<rosl::Vector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(point(data + i * dim, dim, what));
    }
    return out;
}

void store(const rosl::Vector& v, double* out) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out[k] = v(k);
    }
}

// Copies `src` into a caller buffer following the NULL-queries-count rule.
void emit(const std::vector<rosl::Vector>& src, double* out, std::size_t capacity,
          std::size_t* count) {
    non_null(count, "count");
    *count = src.size();
    if (out == nullptr) {
        return;
    }
    if (capacity < src.size()) {
        rosl::fail(rosl::ErrorCode::invalid_argument, "output buffer too small");
    }
    std::size_t off = 0;
    for (const auto& v : src) {
        store(v, out + off);
        off += static_cast<std::size_t>(v.size());
    }
}

rosl::GridSpec grid_of(const rosl_grid* g) {
    non_null(g, "grid");
    return rosl::GridSpec(point(g->lower, g->dim, "grid lower"), point(g->upper, g->dim, "grid upper"),
                          g->nodes_per_axis);
}

std::size_t dim_of(const rosl_map* map) {
    non_null(map, "map");
    return static_cast<std::size_t>(map->impl.dim());
}

} // namespace

extern "C" {

const char* rosl_version(void) {
    return "1.0.0";
}

const char* rosl_last_error(void) {
    return last_error.c_str();
}

const char* rosl_status_name(rosl_status status) {
    switch (status) {
    case ROSL_OK:
        return "ok";
    case ROSL_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case ROSL_ERR_DIMENSION:
        return "dimension mismatch";
    case ROSL_ERR_UNSUPPORTED:
        return "unsupported";
    case ROSL_ERR_NUMERICAL:
        return "numerical failure";
    case ROSL_ERR_PRECONDITION:
        return "precondition violated";
    case ROSL_ERR_PARSE:
        return "parse error";
    case ROSL_ERR_IO:
        return "i/o error";
    case ROSL_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

rosl_status rosl_map_load_file(const char* path, rosl_map** out) {
    return guarded([&] {
        non_null(path, "path");
        non_null(out, "out");
        *out = new rosl_map{rosl::load_map_file(path)};
    });
}

rosl_status rosl_map_load_json(const char* text, rosl_map** out) {
    return guarded([&] {
        non_null(text, "text");
        non_null(out, "out");
        *out = new rosl_map{rosl::load_map_json(text)};
    });
}

rosl_status rosl_map_example34(double ell, rosl_map** out) {
    return guarded([&] {
        non_null(out, "out");
        *out = new rosl_map{rosl::make_example34(ell)};
    });
}

rosl_status rosl_map_affine(size_t dim, const double* b, const double* m,
                            const double* p_vertices, size_t n_vertices, int has_ell, double ell,
                            rosl_map** out) {
    return guarded([&] {
        non_null(out, "out");
        rosl::require(dim >= 1, rosl::ErrorCode::invalid_argument, "dim must be >= 1");
        rosl::require(n_vertices >= 1, rosl::ErrorCode::invalid_argument, "need >= 1 vertex");
        non_null(m, "M");
        Eigen::MatrixXd mat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r * dim + c];
            }
        }
        const auto verts = points(p_vertices, n_vertices, dim, "P vertices");
        std::optional<double> e;
        if (has_ell) {
            e = ell;
        }
        *out = new rosl_map{
            rosl::make_affine_polytope(point(b, dim, "b"), mat, rosl::convex_hull(verts), e)};
    });
}

rosl_status rosl_map_with_ell(const rosl_map* map, double ell, rosl_map** out) {
    return guarded([&] {
        non_null(map, "map");
        non_null(out, "out");
        *out = new rosl_map{map->impl.with_ell(ell)};
    });
}

void rosl_map_free(rosl_map* map) {
    delete map;
}

size_t rosl_map_dim(const rosl_map* map) {
    return map ? static_cast<size_t>(map->impl.dim()) : 0;
}

double rosl_map_ell(const rosl_map* map) {
    return map ? map->impl.ell() : std::nan("");
}

const char* rosl_map_id(const rosl_map* map) {
    return map ? map->impl.id().c_str() : "";
}

rosl_status rosl_map_eval(const rosl_map* map, const double* x, double* vertices, size_t capacity,
                          size_t* count) {
    return guarded([&] {
        const auto d = dim_of(map);
        const auto fx = map->impl.eval(point(x, d, "x"));
        emit(fx.vertices(), vertices, capacity, count);
    });
}

rosl_status rosl_rosl_gap(const rosl_map* map, const double* x, const double* x2, double* out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(out, "out");
        *out = rosl::rosl_gap(map->impl, point(x, d, "x"), point(x2, d, "x2"));
    });
}

rosl_status rosl_check_rosl(const rosl_map* map, const double* samples, size_t n_samples,
                            double tol, rosl_rosl_report* out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(out, "out");
        const auto pts = points(samples, n_samples, d, "samples");
        const auto rep = rosl::check_rosl(map->impl, pts, tol > 0.0 ? tol : rosl::kGeomEps);
        *out = {rep.holds ? 1 : 0, rep.worst_gap, rep.worst_first, rep.worst_second,
                rep.pairs_checked};
    });
}

rosl_status rosl_estimate_ell(const rosl_map* map, const double* samples, size_t n_samples,
                              double* out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(out, "out");
        *out = rosl::estimate_ell(map->impl, points(samples, n_samples, d, "samples"));
    });
}

rosl_status rosl_default_samples(size_t dim, double* samples, size_t capacity, size_t* count) {
    return guarded([&] {
        emit(rosl::default_rosl_samples(static_cast<int>(dim)), samples, capacity, count);
    });
}

rosl_status rosl_grid_nodes(const rosl_grid* grid, double* nodes, size_t capacity, size_t* count) {
    return guarded([&] {
        const auto g = grid_of(grid);
        non_null(count, "count");
        *count = g.node_count();
        if (nodes == nullptr) {
            return;
        }
        rosl::require(capacity >= g.node_count(), rosl::ErrorCode::invalid_argument,
                      "output buffer too small");
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            store(g.node(i), nodes + i * static_cast<std::size_t>(g.dim()));
        }
    });
}

rosl_status rosl_gf_balls(const rosl_map* map, const double* x, const double* ybar, int filtered,
                          double* centers, double* radii, size_t capacity, size_t* count) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(count, "count");
        const auto balls =
            rosl::gf_balls(map->impl, point(x, d, "x"), point(ybar, d, "ybar"), filtered != 0);
        *count = balls.size();
        if (centers == nullptr && radii == nullptr) {
            return;
        }
        rosl::require(capacity >= balls.size(), rosl::ErrorCode::invalid_argument,
                      "output buffer too small");
        for (std::size_t i = 0; i < balls.size(); ++i) {
            if (centers) {
                store(balls[i].center, centers + i * d);
            }
            if (radii) {
                radii[i] = balls[i].radius;
            }
        }
    });
}

rosl_status rosl_gf_membership(const rosl_map* map, const double* x, const double* ybar,
                               const double* z, double tol, int* out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(out, "out");
        *out = rosl::gf_membership(map->impl, point(x, d, "x"), point(ybar, d, "ybar"),
                                   point(z, d, "z"), tol)
                   ? 1
                   : 0;
    });
}

rosl_status rosl_gf_extreme_filter(const double* vertices, size_t n_vertices, size_t dim,
                                   const double* ybar, double* out, size_t capacity,
                                   size_t* count) {
    return guarded([&] {
        rosl::require(dim >= 1, rosl::ErrorCode::invalid_argument, "dim must be >= 1");
        rosl::require(n_vertices >= 1, rosl::ErrorCode::invalid_argument, "empty point set");
        const auto verts = points(vertices, n_vertices, dim, "vertices");
        const auto kept = rosl::gf_extreme_filter(rosl::convex_hull(verts), point(ybar, dim, "ybar"));
        emit(kept, out, capacity, count);
    });
}

rosl_status rosl_preimage_outer(const rosl_map* map, const double* ybar, const rosl_grid* grid,
                                const rosl_base_spec* base, int filtered, unsigned threads,
                                rosl_mask** out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(base, "base");
        non_null(out, "out");
        const auto g = grid_of(grid);
        const auto target = point(ybar, d, "ybar");
        const rosl::SweepOptions opts{threads};
        rosl::GridMask mask;
        switch (base->kind) {
        case ROSL_BASE_EXPLICIT:
            mask = rosl::preimage_outer(map->impl, target, g,
                                        points(base->points, base->count, d, "base points"),
                                        filtered != 0, opts);
            break;
        case ROSL_BASE_GRID:
            mask = rosl::preimage_outer(map->impl, target, g, rosl::grid_base_points(g),
                                        filtered != 0, opts);
            mask.meta.base = "grid";
            break;
        case ROSL_BASE_INFLATE:
            mask = rosl::preimage_outer_inflated(map->impl, target, g, base->eps,
                                                 base->iterations, filtered != 0, opts);
            break;
        default:
            rosl::fail(rosl::ErrorCode::invalid_argument, "unknown base kind");
        }
        *out = new rosl_mask{std::move(mask)};
    });
}

rosl_status rosl_preimage_oracle(const rosl_map* map, const double* ybar, const rosl_grid* grid,
                                 unsigned threads, rosl_mask** out) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(out, "out");
        *out = new rosl_mask{rosl::preimage_oracle(map->impl, point(ybar, d, "ybar"),
                                                   grid_of(grid), rosl::SweepOptions{threads})};
    });
}

void rosl_mask_free(rosl_mask* mask) {
    delete mask;
}

size_t rosl_mask_dim(const rosl_mask* mask) {
    return mask ? static_cast<size_t>(mask->impl.grid.dim()) : 0;
}

size_t rosl_mask_node_count(const rosl_mask* mask) {
    return mask ? mask->impl.member.size() : 0;
}

size_t rosl_mask_member_count(const rosl_mask* mask) {
    return mask ? mask->impl.member_count() : 0;
}

double rosl_mask_spacing(const rosl_mask* mask) {
    return mask ? mask->impl.grid.max_spacing() : std::nan("");
}

rosl_status rosl_mask_member(const rosl_mask* mask, size_t index, int* out) {
    return guarded([&] {
        non_null(mask, "mask");
        non_null(out, "out");
        rosl::require(index < mask->impl.member.size(), rosl::ErrorCode::invalid_argument,
                      "node index out of range");
        *out = mask->impl.member[index];
    });
}

rosl_status rosl_mask_node(const rosl_mask* mask, size_t index, double* coords) {
    return guarded([&] {
        non_null(mask, "mask");
        non_null(coords, "coords");
        rosl::require(index < mask->impl.member.size(), rosl::ErrorCode::invalid_argument,
                      "node index out of range");
        store(mask->impl.grid.node(index), coords);
    });
}

rosl_status rosl_mask_write_csv(const rosl_mask* mask, const char* path) {
    return guarded([&] {
        non_null(mask, "mask");
        non_null(path, "path");
        rosl::write_mask_csv_file(mask->impl, path);
    });
}

rosl_status rosl_mask_write_pgm(const rosl_mask* mask, const char* path) {
    return guarded([&] {
        non_null(mask, "mask");
        non_null(path, "path");
        rosl::write_mask_pgm_file(mask->impl, path);
    });
}

rosl_status rosl_mask_read_csv(const char* path, rosl_mask** out) {
    return guarded([&] {
        non_null(path, "path");
        non_null(out, "out");
        *out = new rosl_mask{rosl::read_mask_csv_file(path)};
    });
}

rosl_status rosl_mask_compare(const rosl_mask* oracle, const rosl_mask* outer, rosl_mask_diff* out) {
    return guarded([&] {
        non_null(oracle, "oracle");
        non_null(outer, "outer");
        non_null(out, "out");
        const auto d = rosl::compare_masks(oracle->impl, outer->impl);
        *out = {d.oracle_members, d.outer_members, d.only_outer, d.only_oracle,
                d.max_boundary_distance, d.spacing};
    });
}

rosl_status rosl_solvability_check(const rosl_map* map, const double* x, size_t y_index,
                                   const double* ybar, const rosl_mask* oracle, int* ok,
                                   double* center, double* radius) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(oracle, "oracle");
        non_null(ok, "ok");
        const auto res = rosl::solvability_check(map->impl, point(x, d, "x"), y_index,
                                                 point(ybar, d, "ybar"), oracle->impl);
        *ok = res.ok ? 1 : 0;
        if (center) {
            store(res.ball.center, center);
        }
        if (radius) {
            *radius = res.ball.radius;
        }
    });
}

rosl_status rosl_witness(const rosl_map* map, const double* ybar, const double* z, int max_trials,
                         double* x_out, int* found) {
    return guarded([&] {
        const auto d = dim_of(map);
        non_null(found, "found");
        non_null(x_out, "x_out");
        rosl::WitnessOptions opts;
        if (max_trials > 0) {
            opts.max_delta_trials = max_trials;
        }
        const auto w = rosl::witness_excluding_base(map->impl, point(ybar, d, "ybar"),
                                                    point(z, d, "z"), opts);
        *found = w ? 1 : 0;
        if (w) {
            store(*w, x_out);
        }
    });
}

rosl_status rosl_bench_filter(size_t n_vertices, size_t queries, uint64_t seed,
                              rosl_bench_result* out) {
    return guarded([&] {
        non_null(out, "out");
        const auto r = rosl::bench_filter(n_vertices, queries, seed);
        *out = {r.vertices, r.queries, r.mismatches, r.members, r.mean_retained_fraction,
                r.unfiltered_qps, r.filtered_qps};
    });
}

} // extern "C"
