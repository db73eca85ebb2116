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

#include "rosl/mask_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rosl/error.hpp"

namespace rosl {

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        fail(ErrorCode::io, "cannot format number");
    }
    return std::string(buf, end);
}

namespace {

std::string join(const Vector& v) {
    std::string s;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (k) {
            s += ',';
        }
        s += format_double(v(k));
    }
    return s;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        fail(ErrorCode::parse, "bad number in mask file: \"" + s + "\"");
    }
    return v;
}

Vector parse_list(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        vals.push_back(parse_double(tok));
    }
    Vector v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = vals[i];
    }
    return v;
}

} // namespace

void write_mask_csv(const GridMask& mask, std::ostream& out) {
    const GridSpec& g = mask.grid;
    require(mask.member.size() == g.node_count(), ErrorCode::invalid_argument,
            "mask size does not match its grid");
    out << "# dim=" << g.dim() << " lower=" << join(g.lower) << " upper=" << join(g.upper)
        << " nodes=" << g.nodes_per_axis << " ybar=" << join(mask.meta.ybar)
        << " source=" << mask.meta.source << " tol=" << format_double(mask.meta.tol)
        << " map=" << mask.meta.map_id << " base=" << mask.meta.base << '\n';
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        out << join(g.node(i)) << ',' << (mask.member[i] ? '1' : '0') << '\n';
    }
}

void write_mask_pgm(const GridMask& mask, std::ostream& out) {
    const GridSpec& g = mask.grid;
    require(g.dim() == 2, ErrorCode::unsupported, "PGM export needs a 2D mask");
    const std::size_t n = g.nodes_per_axis;
    out << "P2\n" << n << ' ' << n << "\n255\n";
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t j = n - 1 - row;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) {
                out << ' ';
            }
            out << (mask.member[j * n + i] ? "255" : "0");
        }
        out << '\n';
    }
}

GridMask read_mask_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0) {
        fail(ErrorCode::parse, "mask file lacks its header line");
    }
    std::map<std::string, std::string> kv;
    std::stringstream hs(header.substr(2));
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::parse, "malformed header token \"" + tok + "\"");
        }
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"dim", "lower", "upper", "nodes", "ybar", "source"}) {
        if (!kv.count(key)) {
            fail(ErrorCode::parse, std::string("mask header lacks ") + key);
        }
    }
    GridMask mask;
    mask.grid = GridSpec(parse_list(kv["lower"]), parse_list(kv["upper"]),
                         static_cast<std::size_t>(parse_double(kv["nodes"])));
    require(mask.grid.dim() == static_cast<int>(parse_double(kv["dim"])), ErrorCode::parse,
            "mask header dim disagrees with its corners");
    mask.meta.ybar = parse_list(kv["ybar"]);
    mask.meta.source = kv["source"];
    mask.meta.tol = kv.count("tol") ? parse_double(kv["tol"]) : mask.grid.tol_grid();
    mask.meta.map_id = kv.count("map") ? kv["map"] : "";
    mask.meta.base = kv.count("base") ? kv["base"] : "";

    mask.member.reserve(mask.grid.node_count());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto comma = line.rfind(',');
        if (comma == std::string::npos) {
            fail(ErrorCode::parse, "malformed mask row");
        }
        const std::string flag = line.substr(comma + 1);
        require(flag == "0" || flag == "1", ErrorCode::parse, "mask flag must be 0 or 1");
        mask.member.push_back(flag == "1" ? 1 : 0);
    }
    require(mask.member.size() == mask.grid.node_count(), ErrorCode::parse,
            "mask row count does not match the grid");
    return mask;
}

void write_mask_csv_file(const GridMask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::io, "cannot write " + path);
    }
    write_mask_csv(mask, out);
}

void write_mask_pgm_file(const GridMask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::io, "cannot write " + path);
    }
    write_mask_pgm(mask, out);
}

GridMask read_mask_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::io, "cannot open " + path);
    }
    return read_mask_csv(in);
}

} // namespace rosl
