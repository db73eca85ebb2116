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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rosl/geometry.hpp"

namespace rosl {

/// Set-valued map x -> F(x) with polytope values and a declared negative
/// relaxed one-sided Lipschitz (ROSL) constant. The evaluator must be pure.
class SetValuedMap {
public:
    using Evaluator = std::function<Polytope(const Vector&)>;

    SetValuedMap(int dim, double ell, Evaluator evaluator, bool usc, std::string id);

    int dim() const { return dim_; }
    double ell() const { return ell_; }
    /// Declared upper semicontinuity. Never verified.
    bool usc_declared() const { return usc_; }
    const std::string& id() const { return id_; }

    Polytope eval(const Vector& x) const;

    /// Same evaluator, different declared constant.
    SetValuedMap with_ell(double ell) const;

private:
    int dim_;
    double ell_;
    Evaluator evaluator_;
    bool usc_;
    std::string id_;
};

/// F(x) = [1,2] - x for x < 0, [-2,2] at 0, [-2,-1] - x for x > 0; ROSL
/// with constant -1 and upper semicontinuous.
SetValuedMap make_example34(double ell = -1.0);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& m);

/// F(x) = b - M x + P with M symmetric positive definite. The constant
/// defaults to -lambda_min(M), which is a valid ROSL constant since
/// <-M u, u> <= -lambda_min ||u||^2.
SetValuedMap make_affine_polytope(const Vector& b, const Eigen::MatrixXd& m, const Polytope& p,
                                  std::optional<double> ell = std::nullopt);

/// One interval-valued branch of a piecewise 1D map: on the x-range it
/// covers, F(x) = [lower0 + lower1 x, upper0 + upper1 x].
struct PiecewiseBranch {
    std::optional<double> lo; ///< nullopt is -infinity
    std::optional<double> hi; ///< nullopt is +infinity
    bool lo_closed = false;
    bool hi_closed = false;
    double lower0 = 0.0;
    double lower1 = 0.0;
    double upper0 = 0.0;
    double upper1 = 0.0;

    bool covers(double x) const;
};

/// First covering branch wins; an uncovered x is an evaluation error.
SetValuedMap make_piecewise1d(std::vector<PiecewiseBranch> branches, double ell, bool usc = true);

/// Worst case over y in F(x) of the best response y' in F(x2), measured
/// against the ROSL bound:
///   gap = sigma_{F(x)}(-u) - sigma_{F(x2)}(-u) - ell ||u||^2,  u = x2 - x.
/// gap <= 0 iff the ROSL inequality holds for the ordered pair. Coincident
/// points give 0.
double rosl_gap(const SetValuedMap& f, const Vector& x, const Vector& x2);

struct RoslReport {
    /// "Not refuted" on the sampled pairs. Never a proof.
    bool holds = true;
    double worst_gap = 0.0;
    std::size_t worst_first = 0;  ///< index into samples
    std::size_t worst_second = 0; ///< index into samples
    std::size_t pairs_checked = 0;
};

/// Sampled falsification over all ordered pairs of distinct samples. A pair
/// counts as a violation when its gap exceeds `tol` scaled by the magnitude
/// of the compared support values (at least 1).
RoslReport check_rosl(const SetValuedMap& f, std::span<const Vector> samples,
                      double tol = kGeomEps);

/// Sampled supremum of (sigma_{F(x)}(-u) - sigma_{F(x2)}(-u)) / ||u||^2 over
/// ordered pairs: the smallest constant consistent with the samples.
double estimate_ell(const SetValuedMap& f, std::span<const Vector> samples);

/// Default sample set for the checks above: a regular grid on [-2, 2]^dim
/// with 41, 11 or 5 nodes per axis for dim 1, 2, 3 (axis 0 fastest).
std::vector<Vector> default_rosl_samples(int dim);

struct UscReport {
    bool consistent = true;
    double worst_excess = 0.0; ///< max over pairs of sup_{y' in F(x')} dist(y', F(x))
    std::size_t pairs_checked = 0;
};

/// One-sided Hausdorff diagnostic: for each sample x and each sample x'
/// within `radius` of it, checks F(x') inside the eps-neighbourhood of F(x).
/// Diagnostic only; upper semicontinuity stays a declaration.
UscReport usc_diagnostic(const SetValuedMap& f, std::span<const Vector> samples, double radius,
                         double eps);

/// Parses a map definition (JSON). Unknown fields are rejected.
SetValuedMap load_map_json(std::string_view text);
SetValuedMap load_map_file(const std::string& path);

} // namespace rosl
