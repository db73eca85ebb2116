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

#include "rosl/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosl/error.hpp"

namespace rosl {

SetValuedMap::SetValuedMap(int dim, double ell, Evaluator evaluator, bool usc, std::string id)
    : dim_(dim), ell_(ell), evaluator_(std::move(evaluator)), usc_(usc), id_(std::move(id)) {
    require(dim_ >= 1, ErrorCode::invalid_argument, "map dimension must be >= 1");
    require(std::isfinite(ell_) && ell_ < 0.0, ErrorCode::invalid_argument,
            "declared ell must be finite and < 0");
    require(static_cast<bool>(evaluator_), ErrorCode::invalid_argument, "missing evaluator");
}

Polytope SetValuedMap::eval(const Vector& x) const {
    require_same_dim(x.size(), dim_, "eval");
    require_valid(x, "eval point");
    Polytope out = evaluator_(x);
    require_same_dim(out.dim(), dim_, "evaluator result");
    return out;
}

SetValuedMap SetValuedMap::with_ell(double ell) const {
    return SetValuedMap(dim_, ell, evaluator_, usc_, id_);
}

SetValuedMap make_example34(double ell) {
    auto ev = [](const Vector& x) {
        const double t = x(0);
        if (t < 0.0) {
            return Polytope::interval(1.0 - t, 2.0 - t);
        }
        if (t > 0.0) {
            return Polytope::interval(-2.0 - t, -1.0 - t);
        }
        return Polytope::interval(-2.0, 2.0);
    };
    return SetValuedMap(1, ell, ev, true, "example34");
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    require(m.rows() == m.cols() && m.rows() >= 1, ErrorCode::invalid_argument,
            "matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    require(solver.info() == Eigen::Success, ErrorCode::numerical, "eigenvalue solve failed");
    return solver.eigenvalues().minCoeff();
}

SetValuedMap make_affine_polytope(const Vector& b, const Eigen::MatrixXd& m, const Polytope& p,
                                  std::optional<double> ell) {
    const auto d = b.size();
    require_valid(b, "affine offset b");
    require_same_dim(m.rows(), d, "affine matrix rows");
    require_same_dim(m.cols(), d, "affine matrix cols");
    require_same_dim(p.dim(), d, "affine polytope");
    require(m.allFinite(), ErrorCode::invalid_argument, "matrix has non-finite entries");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    require(asym <= kGeomEps * std::max(1.0, m.cwiseAbs().maxCoeff()),
            ErrorCode::invalid_argument, "matrix M must be symmetric");
    const double lmin = min_eigenvalue(m);
    require(lmin > 0.0, ErrorCode::invalid_argument, "matrix M must be positive definite");

    auto ev = [b, m, p](const Vector& x) { return p.translated(b - m * x); };
    return SetValuedMap(static_cast<int>(d), ell.value_or(-lmin), ev, true, "affine_polytope");
}

bool PiecewiseBranch::covers(double x) const {
    if (lo) {
        if (lo_closed ? x < *lo : x <= *lo) {
            return false;
        }
    }
    if (hi) {
        if (hi_closed ? x > *hi : x >= *hi) {
            return false;
        }
    }
    return true;
}

SetValuedMap make_piecewise1d(std::vector<PiecewiseBranch> branches, double ell, bool usc) {
    require(!branches.empty(), ErrorCode::invalid_argument, "piecewise1d needs branches");
    for (const auto& br : branches) {
        require(std::isfinite(br.lower0) && std::isfinite(br.lower1) &&
                    std::isfinite(br.upper0) && std::isfinite(br.upper1),
                ErrorCode::invalid_argument, "branch coefficients must be finite");
        require(!(br.lo && br.hi) || *br.lo <= *br.hi, ErrorCode::invalid_argument,
                "branch range is inverted");
    }
    auto ev = [branches = std::move(branches)](const Vector& x) {
        const double t = x(0);
        for (const auto& br : branches) {
            if (br.covers(t)) {
                const double lower = br.lower0 + br.lower1 * t;
                const double upper = br.upper0 + br.upper1 * t;
                require(lower <= upper, ErrorCode::invalid_argument,
                        "piecewise1d branch yields an empty interval");
                return Polytope::interval(lower, upper);
            }
        }
        fail(ErrorCode::invalid_argument, "piecewise1d: no branch covers x");
    };
    return SetValuedMap(1, ell, ev, usc, "piecewise1d");
}

namespace {

struct PairTerms {
    double diff = 0.0;     // sigma_{F(x)}(-u) - sigma_{F(x2)}(-u)
    double norm2 = 0.0;    // ||u||^2
    double magnitude = 0.0;
};

PairTerms pair_terms(const Polytope& fx, const Polytope& fx2, const Vector& x, const Vector& x2) {
    const Vector neg_u = x - x2;
    const double s1 = support(fx, neg_u);
    const double s2 = support(fx2, neg_u);
    return {s1 - s2, neg_u.squaredNorm(), std::max({std::abs(s1), std::abs(s2), 1.0})};
}

std::vector<Polytope> eval_all(const SetValuedMap& f, std::span<const Vector> samples) {
    std::vector<Polytope> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(f.eval(s));
    }
    return out;
}

} // namespace

double rosl_gap(const SetValuedMap& f, const Vector& x, const Vector& x2) {
    require_same_dim(x.size(), f.dim(), "rosl_gap");
    require_same_dim(x2.size(), f.dim(), "rosl_gap");
    if (x == x2) {
        return 0.0;
    }
    const auto t = pair_terms(f.eval(x), f.eval(x2), x, x2);
    return t.diff - f.ell() * t.norm2;
}

RoslReport check_rosl(const SetValuedMap& f, std::span<const Vector> samples, double tol) {
    require(samples.size() >= 2, ErrorCode::invalid_argument, "check_rosl needs >= 2 samples");
    const auto images = eval_all(f, samples);
    RoslReport rep;
    rep.worst_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j || samples[i] == samples[j]) {
                continue;
            }
            const auto t = pair_terms(images[i], images[j], samples[i], samples[j]);
            const double gap = t.diff - f.ell() * t.norm2;
            ++rep.pairs_checked;
            if (gap > rep.worst_gap) {
                rep.worst_gap = gap;
                rep.worst_first = i;
                rep.worst_second = j;
            }
            if (gap > tol * std::max(t.magnitude, std::abs(f.ell()) * t.norm2)) {
                rep.holds = false;
            }
        }
    }
    require(rep.pairs_checked > 0, ErrorCode::invalid_argument,
            "check_rosl needs >= 2 distinct samples");
    return rep;
}

double estimate_ell(const SetValuedMap& f, std::span<const Vector> samples) {
    require(samples.size() >= 2, ErrorCode::invalid_argument, "estimate_ell needs >= 2 samples");
    const auto images = eval_all(f, samples);
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j || samples[i] == samples[j]) {
                continue;
            }
            const auto t = pair_terms(images[i], images[j], samples[i], samples[j]);
            best = std::max(best, t.diff / t.norm2);
            any = true;
        }
    }
    require(any, ErrorCode::invalid_argument, "estimate_ell: all samples coincide");
    return best;
}

std::vector<Vector> default_rosl_samples(int dim) {
    require(dim >= 1 && dim <= kMaxHullDim, ErrorCode::unsupported, "dimension unsupported");
    const int n = dim == 1 ? 41 : dim == 2 ? 11 : 5;
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) {
        total *= static_cast<std::size_t>(n);
    }
    std::vector<Vector> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        Vector v(dim);
        std::size_t rest = i;
        for (int k = 0; k < dim; ++k) {
            const double t = static_cast<double>(rest % n) / (n - 1);
            v(k) = -2.0 * (1.0 - t) + 2.0 * t;
            rest /= n;
        }
        out.push_back(std::move(v));
    }
    return out;
}

UscReport usc_diagnostic(const SetValuedMap& f, std::span<const Vector> samples, double radius,
                         double eps) {
    require(radius > 0.0 && eps >= 0.0, ErrorCode::invalid_argument,
            "usc_diagnostic needs radius > 0 and eps >= 0");
    const auto images = eval_all(f, samples);
    UscReport rep;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (i == j || (samples[j] - samples[i]).norm() > radius) {
                continue;
            }
            ++rep.pairs_checked;
            for (const auto& y : images[j].vertices()) {
                const double excess = project_onto(images[i], y).dist;
                rep.worst_excess = std::max(rep.worst_excess, excess);
            }
        }
    }
    rep.consistent = rep.worst_excess <= eps;
    return rep;
}

} // namespace rosl
