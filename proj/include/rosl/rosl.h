/* Copyright 2026 The rosl-preimage Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* C interface to the preimage library.
 *
 * Conventions:
 *  - Every fallible call returns a rosl_status. On failure, rosl_last_error()
 *    returns a message for the last failing call on the calling thread.
 *  - Points are arrays of `dim` doubles where dim is the map's dimension.
 *    Point lists are row-major: point i occupies [i*dim, (i+1)*dim).
 *  - Output buffers come with a capacity (in points). Passing a NULL buffer
 *    only reports the required count; a non-NULL buffer that is too small is
 *    ROSL_ERR_INVALID_ARGUMENT.
 *  - Handles are created by *_load / *_new / computation calls and released
 *    with the matching *_free. Handles are immutable; concurrent reads are
 *    safe.
 */
#ifndef ROSL_ROSL_H
#define ROSL_ROSL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ROSL_BUILDING_LIBRARY)
#    define ROSL_API __declspec(dllexport)
#  else
#    define ROSL_API __declspec(dllimport)
#  endif
#else
#  define ROSL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rosl_status {
    ROSL_OK = 0,
    ROSL_ERR_INVALID_ARGUMENT = 1,
    ROSL_ERR_DIMENSION = 2,
    ROSL_ERR_UNSUPPORTED = 3,
    ROSL_ERR_NUMERICAL = 4,
    ROSL_ERR_PRECONDITION = 5,
    ROSL_ERR_PARSE = 6,
    ROSL_ERR_IO = 7,
    ROSL_ERR_INTERNAL = 99
} rosl_status;

typedef struct rosl_map rosl_map;
typedef struct rosl_mask rosl_mask;

ROSL_API const char* rosl_version(void);
ROSL_API const char* rosl_last_error(void);
ROSL_API const char* rosl_status_name(rosl_status status);

/* ---- maps ---------------------------------------------------------------- */

/* Map definition file (JSON): {"dim", "ell", "family", ...}. */
ROSL_API rosl_status rosl_map_load_file(const char* path, rosl_map** out);
ROSL_API rosl_status rosl_map_load_json(const char* text, rosl_map** out);
ROSL_API rosl_status rosl_map_example34(double ell, rosl_map** out);
/* F(x) = b - M x + conv(P). `m` is row-major dim x dim. When `has_ell` is
   zero the constant is -lambda_min(M). */
ROSL_API rosl_status rosl_map_affine(size_t dim, const double* b, const double* m,
                                     const double* p_vertices, size_t n_vertices, int has_ell,
                                     double ell, rosl_map** out);
ROSL_API rosl_status rosl_map_with_ell(const rosl_map* map, double ell, rosl_map** out);
ROSL_API void rosl_map_free(rosl_map* map);

ROSL_API size_t rosl_map_dim(const rosl_map* map);
ROSL_API double rosl_map_ell(const rosl_map* map);
ROSL_API const char* rosl_map_id(const rosl_map* map);

/* Canonical vertex list of F(x). */
ROSL_API rosl_status rosl_map_eval(const rosl_map* map, const double* x, double* vertices,
                                   size_t capacity, size_t* count);

/* ---- relaxed one-sided Lipschitz checks ---------------------------------- */

typedef struct rosl_rosl_report {
    int holds; /* 1 = not refuted on the samples (not a proof) */
    double worst_gap;
    size_t worst_first;  /* sample index */
    size_t worst_second; /* sample index */
    size_t pairs_checked;
} rosl_rosl_report;

ROSL_API rosl_status rosl_rosl_gap(const rosl_map* map, const double* x, const double* x2,
                                   double* out);
/* tol <= 0 selects the default geometric tolerance. */
ROSL_API rosl_status rosl_check_rosl(const rosl_map* map, const double* samples, size_t n_samples,
                                     double tol, rosl_rosl_report* out);
ROSL_API rosl_status rosl_estimate_ell(const rosl_map* map, const double* samples,
                                       size_t n_samples, double* out);

/* Default sample grid on [-2,2]^dim (41, 11 or 5 nodes per axis). */
ROSL_API rosl_status rosl_default_samples(size_t dim, double* samples, size_t capacity,
                                          size_t* count);

/* ---- grids --------------------------------------------------------------- */

typedef struct rosl_grid {
    size_t dim;
    const double* lower;
    const double* upper;
    size_t nodes_per_axis;
} rosl_grid;

/* All nodes, axis 0 fastest. */
ROSL_API rosl_status rosl_grid_nodes(const rosl_grid* grid, double* nodes, size_t capacity,
                                     size_t* count);

/* ---- ball cover G_F ------------------------------------------------------ */

ROSL_API rosl_status rosl_gf_balls(const rosl_map* map, const double* x, const double* ybar,
                                   int filtered, double* centers, double* radii, size_t capacity,
                                   size_t* count);
ROSL_API rosl_status rosl_gf_membership(const rosl_map* map, const double* x, const double* ybar,
                                        const double* z, double tol, int* out);
ROSL_API rosl_status rosl_gf_extreme_filter(const double* vertices, size_t n_vertices, size_t dim,
                                            const double* ybar, double* out, size_t capacity,
                                            size_t* count);

/* ---- preimage masks ------------------------------------------------------ */

typedef enum rosl_base_kind {
    ROSL_BASE_EXPLICIT = 0, /* `points`, `count` */
    ROSL_BASE_GRID = 1,     /* every grid node */
    ROSL_BASE_INFLATE = 2   /* iterated inflation: `eps`, `iterations` */
} rosl_base_kind;

typedef struct rosl_base_spec {
    rosl_base_kind kind;
    const double* points;
    size_t count;
    double eps;
    int iterations;
} rosl_base_spec;

/* threads = 0 picks the hardware concurrency; results do not depend on it. */
ROSL_API rosl_status rosl_preimage_outer(const rosl_map* map, const double* ybar,
                                         const rosl_grid* grid, const rosl_base_spec* base,
                                         int filtered, unsigned threads, rosl_mask** out);
ROSL_API rosl_status rosl_preimage_oracle(const rosl_map* map, const double* ybar,
                                          const rosl_grid* grid, unsigned threads,
                                          rosl_mask** out);
ROSL_API void rosl_mask_free(rosl_mask* mask);

ROSL_API size_t rosl_mask_dim(const rosl_mask* mask);
ROSL_API size_t rosl_mask_node_count(const rosl_mask* mask);
ROSL_API size_t rosl_mask_member_count(const rosl_mask* mask);
ROSL_API double rosl_mask_spacing(const rosl_mask* mask); /* largest axis spacing */
ROSL_API rosl_status rosl_mask_member(const rosl_mask* mask, size_t index, int* out);
ROSL_API rosl_status rosl_mask_node(const rosl_mask* mask, size_t index, double* coords);

ROSL_API rosl_status rosl_mask_write_csv(const rosl_mask* mask, const char* path);
ROSL_API rosl_status rosl_mask_write_pgm(const rosl_mask* mask, const char* path);
ROSL_API rosl_status rosl_mask_read_csv(const char* path, rosl_mask** out);

typedef struct rosl_mask_diff {
    size_t oracle_members;
    size_t outer_members;
    size_t only_outer;
    size_t only_oracle;
    double max_boundary_distance;
    double spacing;
} rosl_mask_diff;

ROSL_API rosl_status rosl_mask_compare(const rosl_mask* oracle, const rosl_mask* outer,
                                       rosl_mask_diff* out);

/* ---- localization and witnesses ------------------------------------------ */

/* center may be NULL; otherwise receives dim doubles. */
ROSL_API rosl_status rosl_solvability_check(const rosl_map* map, const double* x, size_t y_index,
                                            const double* ybar, const rosl_mask* oracle, int* ok,
                                            double* center, double* radius);
/* max_trials <= 0 selects the default (64). *found is 0 when no trial
   excluded z; ROSL_ERR_PRECONDITION when z is a preimage point. */
ROSL_API rosl_status rosl_witness(const rosl_map* map, const double* ybar, const double* z,
                                  int max_trials, double* x_out, int* found);

/* ---- filter benchmark ---------------------------------------------------- */

typedef struct rosl_bench_result {
    size_t vertices;
    size_t queries;
    size_t mismatches;
    size_t members;
    double mean_retained_fraction;
    double unfiltered_qps;
    double filtered_qps;
} rosl_bench_result;

ROSL_API rosl_status rosl_bench_filter(size_t n_vertices, size_t queries, uint64_t seed,
                                       rosl_bench_result* out);

#ifdef __cplusplus
}
#endif

#endif /* ROSL_ROSL_H */
