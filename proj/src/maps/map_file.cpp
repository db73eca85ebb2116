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

// Map definition files:
//   {"dim": 2, "ell": -1.0, "family": "affine_polytope",
//    "b": [0, 0], "M": [[1, 0], [0, 1]], "P_vertices": [[0, 0], [1, 0], ...]}
//   {"dim": 1, "ell": -1.0, "family": "piecewise1d",
//    "branches": [{"lo": null, "hi": 0, "lower": [1, -1], "upper": [2, -1]}, ...]}

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rosl/error.hpp"
#include "rosl/maps.hpp"

namespace rosl {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            fail(ErrorCode::parse, std::string(where) + ": unknown field \"" + key + "\"");
        }
    }
}

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(ErrorCode::parse, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) {
        fail(ErrorCode::parse, std::string(what) + " must be a number");
    }
    const double v = j.get<double>();
    require(std::isfinite(v), ErrorCode::parse, std::string(what) + " must be finite");
    return v;
}

Vector vector_of(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) {
        fail(ErrorCode::parse, std::string(what) + " must be a nonempty array of numbers");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = number(j[i], what);
    }
    return v;
}

PiecewiseBranch branch_of(const json& j) {
    if (!j.is_object()) {
        fail(ErrorCode::parse, "branch must be an object");
    }
    reject_unknown(j, {"lo", "hi", "lo_closed", "hi_closed", "lower", "upper"}, "branch");
    PiecewiseBranch br;
    auto bound = [&](const char* key) -> std::optional<double> {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            return std::nullopt;
        }
        return number(*it, key);
    };
    auto flag = [&](const char* key) {
        auto it = j.find(key);
        if (it == j.end()) {
            return false;
        }
        if (!it->is_boolean()) {
            fail(ErrorCode::parse, std::string(key) + " must be a boolean");
        }
        return it->get<bool>();
    };
    br.lo = bound("lo");
    br.hi = bound("hi");
    br.lo_closed = flag("lo_closed");
    br.hi_closed = flag("hi_closed");
    const Vector lower = vector_of(field(j, "lower"), "lower");
    const Vector upper = vector_of(field(j, "upper"), "upper");
    require(lower.size() == 2 && upper.size() == 2, ErrorCode::parse,
            "branch lower/upper must be [constant, slope]");
    br.lower0 = lower(0);
    br.lower1 = lower(1);
    br.upper0 = upper(0);
    br.upper1 = upper(1);
    return br;
}

SetValuedMap parse(const json& root) {
    if (!root.is_object()) {
        fail(ErrorCode::parse, "map definition must be a JSON object");
    }
    const json& fam = field(root, "family");
    if (!fam.is_string()) {
        fail(ErrorCode::parse, "family must be a string");
    }
    const auto family = fam.get<std::string>();
    const json& dim_j = field(root, "dim");
    if (!dim_j.is_number_integer() || dim_j.get<long>() < 1) {
        fail(ErrorCode::parse, "dim must be a positive integer");
    }
    const int dim = dim_j.get<int>();
    const double ell = number(field(root, "ell"), "ell");

    if (family == "example34") {
        reject_unknown(root, {"dim", "ell", "family"}, "map");
        require(dim == 1, ErrorCode::parse, "example34 requires dim 1");
        return make_example34(ell);
    }
    if (family == "affine_polytope") {
        reject_unknown(root, {"dim", "ell", "family", "b", "M", "P_vertices"}, "map");
        const Vector b = vector_of(field(root, "b"), "b");
        require(b.size() == dim, ErrorCode::parse, "b must have dim entries");
        const json& mj = field(root, "M");
        if (!mj.is_array() || static_cast<int>(mj.size()) != dim) {
            fail(ErrorCode::parse, "M must be a dim x dim array");
        }
        Eigen::MatrixXd m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const Vector row = vector_of(mj[static_cast<std::size_t>(r)], "M row");
            require(row.size() == dim, ErrorCode::parse, "M must be a dim x dim array");
            m.row(r) = row.transpose();
        }
        const json& pj = field(root, "P_vertices");
        if (!pj.is_array() || pj.empty()) {
            fail(ErrorCode::parse, "P_vertices must be a nonempty array of points");
        }
        std::vector<Vector> verts;
        for (const auto& v : pj) {
            verts.push_back(vector_of(v, "P_vertices entry"));
            require(verts.back().size() == dim, ErrorCode::parse,
                    "P_vertices entries must have dim coordinates");
        }
        return make_affine_polytope(b, m, convex_hull(verts), ell);
    }
    if (family == "piecewise1d") {
        reject_unknown(root, {"dim", "ell", "family", "branches"}, "map");
        require(dim == 1, ErrorCode::parse, "piecewise1d requires dim 1");
        const json& bj = field(root, "branches");
        if (!bj.is_array() || bj.empty()) {
            fail(ErrorCode::parse, "branches must be a nonempty array");
        }
        std::vector<PiecewiseBranch> branches;
        for (const auto& b : bj) {
            branches.push_back(branch_of(b));
        }
        return make_piecewise1d(std::move(branches), ell);
    }
    fail(ErrorCode::parse, "unknown family \"" + family + "\"");
}

} // namespace

SetValuedMap load_map_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse, std::string("invalid JSON: ") + e.what());
    }
    try {
        return parse(root);
    } catch (const json::exception& e) {
        fail(ErrorCode::parse, std::string("malformed map definition: ") + e.what());
    }
}

SetValuedMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::io, "cannot open map file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_map_json(buf.str());
}

} // namespace rosl
