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

// Command-line front end. Talks to the library only through rosl.h.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 property refuted.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rosl/rosl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRefuted = 2;
constexpr double kEps = 1e-9;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MapDeleter {
    void operator()(rosl_map* m) const { rosl_map_free(m); }
};
struct MaskDeleter {
    void operator()(rosl_mask* m) const { rosl_mask_free(m); }
};
using MapPtr = std::unique_ptr<rosl_map, MapDeleter>;
using MaskPtr = std::unique_ptr<rosl_mask, MaskDeleter>;

void check(rosl_status s) {
    if (s != ROSL_OK) {
        throw ConfigError(std::string(rosl_status_name(s)) + ": " + rosl_last_error());
    }
}

std::string num(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, end);
}

std::string join(const double* v, std::size_t n) {
    std::string s;
    for (std::size_t k = 0; k < n; ++k) {
        if (k) {
            s += ',';
        }
        s += num(v[k]);
    }
    return s;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t{}()[]");
    const auto e = s.find_last_not_of(" \t{}()[]");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_num(const std::string& text, const char* what) {
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ConfigError(std::string("cannot parse ") + what + " value \"" + text + "\"");
    }
    return v;
}

std::vector<double> parse_csv(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(trim(text));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(parse_num(tok, what));
    }
    if (out.empty()) {
        throw ConfigError(std::string("empty ") + what);
    }
    return out;
}

std::vector<double> parse_point(const std::string& text, std::size_t dim, const char* what) {
    auto v = parse_csv(text, what);
    if (v.size() != dim) {
        throw ConfigError(std::string(what) + " has " + std::to_string(v.size()) +
                          " coordinates, map dimension is " + std::to_string(dim));
    }
    return v;
}

// "LO..HI[,LO..HI...]xN"; a single range applies to every axis.
struct GridArg {
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t nodes = 0;

    rosl_grid view() const { return {lower.size(), lower.data(), upper.data(), nodes}; }
};

GridArg parse_grid(const std::string& text, std::size_t dim) {
    const auto x = text.find_last_of("xX");
    if (x == std::string::npos) {
        throw ConfigError("grid must look like LO..HIxN, got \"" + text + "\"");
    }
    GridArg g;
    const double n = parse_num(text.substr(x + 1), "grid node count");
    if (n < 2 || n != std::floor(n)) {
        throw ConfigError("grid needs an integer node count >= 2");
    }
    g.nodes = static_cast<std::size_t>(n);
    std::stringstream ss(text.substr(0, x));
    std::string range;
    while (std::getline(ss, range, ',')) {
        const auto dots = range.find("..");
        if (dots == std::string::npos) {
            throw ConfigError("grid range must look like LO..HI, got \"" + range + "\"");
        }
        g.lower.push_back(parse_num(range.substr(0, dots), "grid"));
        g.upper.push_back(parse_num(range.substr(dots + 2), "grid"));
    }
    if (g.lower.size() == 1 && dim > 1) {
        g.lower.assign(dim, g.lower[0]);
        g.upper.assign(dim, g.upper[0]);
    }
    if (g.lower.size() != dim) {
        throw ConfigError("grid has " + std::to_string(g.lower.size()) +
                          " axes, map dimension is " + std::to_string(dim));
    }
    return g;
}

std::vector<double> default_samples(std::size_t dim) {
    std::size_t count = 0;
    check(rosl_default_samples(dim, nullptr, 0, &count));
    std::vector<double> out(count * dim);
    check(rosl_default_samples(dim, out.data(), count, &count));
    return out;
}

std::vector<double> grid_nodes(const GridArg& g) {
    const rosl_grid view = g.view();
    std::size_t count = 0;
    check(rosl_grid_nodes(&view, nullptr, 0, &count));
    std::vector<double> nodes(count * g.lower.size());
    check(rosl_grid_nodes(&view, nodes.data(), count, &count));
    return nodes;
}

// Explicit base list: points separated by ';'. In one dimension a comma
// list is a list of points.
std::vector<double> parse_base_list(const std::string& text, std::size_t dim) {
    std::vector<double> flat;
    std::stringstream ss(trim(text));
    std::string tok;
    if (dim == 1 && text.find(';') == std::string::npos) {
        return parse_csv(text, "base point");
    }
    while (std::getline(ss, tok, ';')) {
        if (trim(tok).empty()) {
            continue;
        }
        auto p = parse_point(tok, dim, "base point");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    if (flat.empty()) {
        throw ConfigError("empty base point list");
    }
    return flat;
}

struct Options {
    std::string map_path;
    std::string ybar;
    std::string grid;
    std::string base = "grid";
    std::string x;
    std::string z;
    std::string out;
    bool filtered = false;
    bool with_oracle = false;
    std::optional<double> tol;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::size_t queries = 10000;
};

MapPtr load_map(const Options& o) {
    if (o.map_path.empty()) {
        throw ConfigError("--map is required");
    }
    rosl_map* raw = nullptr;
    check(rosl_map_load_file(o.map_path.c_str(), &raw));
    return MapPtr(raw);
}

std::vector<double> need_point(const std::string& text, std::size_t dim, const char* flag) {
    if (text.empty()) {
        throw ConfigError(std::string(flag) + " is required");
    }
    return parse_point(text, dim, flag);
}

std::string stem_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        return path.substr(0, dot);
    }
    return path;
}

void write_mask(const rosl_mask* mask, const std::string& csv_path) {
    check(rosl_mask_write_csv(mask, csv_path.c_str()));
    std::cout << "wrote=" << csv_path << '\n';
    if (rosl_mask_dim(mask) == 2) {
        const std::string pgm = stem_of(csv_path) + ".pgm";
        check(rosl_mask_write_pgm(mask, pgm.c_str()));
        std::cout << "wrote=" << pgm << '\n';
    }
}

void print_mask_summary(const char* prefix, const rosl_mask* mask) {
    std::cout << prefix << "_members=" << rosl_mask_member_count(mask) << '\n';
    std::cout << prefix << "_nodes=" << rosl_mask_node_count(mask) << '\n';
    if (rosl_mask_dim(mask) == 1) {
        // Extent of the member set, handy for one-dimensional runs.
        std::optional<double> lo;
        double hi = 0.0;
        for (std::size_t i = 0; i < rosl_mask_node_count(mask); ++i) {
            int m = 0;
            check(rosl_mask_member(mask, i, &m));
            if (m) {
                double c = 0.0;
                check(rosl_mask_node(mask, i, &c));
                if (!lo) {
                    lo = c;
                }
                hi = c;
            }
        }
        if (lo) {
            std::cout << prefix << "_extent=" << num(*lo) << ',' << num(hi) << '\n';
        } else {
            std::cout << prefix << "_extent=empty\n";
        }
    }
}

int cmd_check_rosl(const Options& o) {
    MapPtr map = load_map(o);
    const std::size_t dim = rosl_map_dim(map.get());
    const std::vector<double> samples =
        o.grid.empty() ? default_samples(dim) : grid_nodes(parse_grid(o.grid, dim));
    const std::size_t n = samples.size() / dim;

    rosl_rosl_report rep{};
    check(rosl_check_rosl(map.get(), samples.data(), n, o.tol.value_or(0.0), &rep));
    double est = 0.0;
    check(rosl_estimate_ell(map.get(), samples.data(), n, &est));
    const double declared = rosl_map_ell(map.get());

    std::cout << "map=" << rosl_map_id(map.get()) << '\n';
    std::cout << "ell=" << num(declared) << '\n';
    std::cout << "samples=" << n << '\n';
    std::cout << "pairs_checked=" << rep.pairs_checked << '\n';
    std::cout << "status=" << (rep.holds ? "not_refuted" : "refuted") << '\n';
    std::cout << "worst_gap=" << num(rep.worst_gap) << '\n';
    std::cout << "worst_x=" << join(&samples[rep.worst_first * dim], dim) << '\n';
    std::cout << "worst_x2=" << join(&samples[rep.worst_second * dim], dim) << '\n';
    std::cout << "estimate_ell=" << num(est) << '\n';
    const bool agree = std::abs(declared - est) <= kEps * std::max(1.0, std::abs(declared));
    std::cout << "ell_vs_estimate=" << (agree ? "match" : "mismatch") << '\n';
    std::cout << "note=sampled falsification only, not a proof\n";
    if (!agree) {
        std::cerr << "warning: declared ell " << num(declared) << " differs from the sampled estimate "
                  << num(est) << '\n';
    }
    return rep.holds ? kExitOk : kExitRefuted;
}

struct Sweep {
    MapPtr map;
    std::size_t dim = 0;
    std::vector<double> ybar;
    GridArg grid;
};

Sweep prepare_sweep(const Options& o) {
    Sweep s;
    s.map = load_map(o);
    s.dim = rosl_map_dim(s.map.get());
    s.ybar = need_point(o.ybar, s.dim, "--ybar");
    if (o.grid.empty()) {
        throw ConfigError("--grid is required");
    }
    s.grid = parse_grid(o.grid, s.dim);
    return s;
}

MaskPtr run_oracle(const Sweep& s, unsigned threads) {
    const rosl_grid view = s.grid.view();
    rosl_mask* raw = nullptr;
    check(rosl_preimage_oracle(s.map.get(), s.ybar.data(), &view, threads, &raw));
    return MaskPtr(raw);
}

int cmd_preimage(const Options& o) {
    Sweep s = prepare_sweep(o);
    const rosl_grid view = s.grid.view();

    rosl_base_spec base{};
    std::vector<double> points;
    if (o.base == "grid") {
        base.kind = ROSL_BASE_GRID;
    } else if (o.base.rfind("inflate:", 0) == 0) {
        const auto args = parse_csv(o.base.substr(8), "inflate");
        if (args.size() != 2 || args[1] < 0 || args[1] != std::floor(args[1])) {
            throw ConfigError("inflate base must look like inflate:EPS,ITERS");
        }
        base.kind = ROSL_BASE_INFLATE;
        base.eps = args[0];
        base.iterations = static_cast<int>(args[1]);
    } else {
        points = parse_base_list(o.base, s.dim);
        base.kind = ROSL_BASE_EXPLICIT;
        base.points = points.data();
        base.count = points.size() / s.dim;
    }

    rosl_mask* raw = nullptr;
    check(rosl_preimage_outer(s.map.get(), s.ybar.data(), &view, &base, o.filtered ? 1 : 0,
                              o.threads, &raw));
    MaskPtr outer(raw);

    std::cout << "map=" << rosl_map_id(s.map.get()) << '\n';
    std::cout << "ybar=" << join(s.ybar.data(), s.dim) << '\n';
    std::cout << "base=" << o.base << '\n';
    std::cout << "filtered=" << (o.filtered ? "true" : "false") << '\n';
    std::cout << "spacing=" << num(rosl_mask_spacing(outer.get())) << '\n';
    print_mask_summary("outer", outer.get());
    if (!o.out.empty()) {
        write_mask(outer.get(), o.out);
    }

    int code = kExitOk;
    if (o.with_oracle) {
        MaskPtr oracle = run_oracle(s, o.threads);
        print_mask_summary("oracle", oracle.get());
        rosl_mask_diff d{};
        check(rosl_mask_compare(oracle.get(), outer.get(), &d));
        std::cout << "only_outer=" << d.only_outer << '\n';
        std::cout << "only_oracle=" << d.only_oracle << '\n';
        std::cout << "max_boundary_distance=" << num(d.max_boundary_distance) << '\n';
        std::cout << "band_spacings=" << num(d.max_boundary_distance / d.spacing) << '\n';
        std::cout << "containment=" << (d.only_oracle == 0 ? "ok" : "violated") << '\n';
        if (!o.out.empty()) {
            write_mask(oracle.get(), stem_of(o.out) + ".oracle.csv");
        }
        if (d.only_oracle != 0) {
            code = kExitRefuted;
        }
    }
    return code;
}

int cmd_oracle(const Options& o) {
    Sweep s = prepare_sweep(o);
    MaskPtr oracle = run_oracle(s, o.threads);
    std::cout << "map=" << rosl_map_id(s.map.get()) << '\n';
    std::cout << "ybar=" << join(s.ybar.data(), s.dim) << '\n';
    std::cout << "spacing=" << num(rosl_mask_spacing(oracle.get())) << '\n';
    print_mask_summary("oracle", oracle.get());
    if (!o.out.empty()) {
        write_mask(oracle.get(), o.out);
    }
    return kExitOk;
}

int cmd_gf(const Options& o) {
    MapPtr map = load_map(o);
    const std::size_t dim = rosl_map_dim(map.get());
    const auto x = need_point(o.x, dim, "--x");
    const auto ybar = need_point(o.ybar, dim, "--ybar");
    const int filtered = o.filtered ? 1 : 0;

    std::size_t count = 0;
    check(rosl_gf_balls(map.get(), x.data(), ybar.data(), filtered, nullptr, nullptr, 0, &count));
    std::vector<double> centers(count * dim);
    std::vector<double> radii(count);
    check(rosl_gf_balls(map.get(), x.data(), ybar.data(), filtered, centers.data(), radii.data(),
                        count, &count));

    std::cout << "map=" << rosl_map_id(map.get()) << '\n';
    std::cout << "x=" << join(x.data(), dim) << '\n';
    std::cout << "ybar=" << join(ybar.data(), dim) << '\n';
    std::cout << "balls=" << count << '\n';
    for (std::size_t i = 0; i < count; ++i) {
        std::cout << "ball" << i << "_center=" << join(&centers[i * dim], dim) << '\n';
        std::cout << "ball" << i << "_radius=" << num(radii[i]) << '\n';
    }
    if (dim == 1 && count > 0) {
        // Every ball touches x, so the union is one interval.
        double lo = centers[0] - radii[0];
        double hi = centers[0] + radii[0];
        for (std::size_t i = 1; i < count; ++i) {
            lo = std::min(lo, centers[i] - radii[i]);
            hi = std::max(hi, centers[i] + radii[i]);
        }
        std::cout << "union=" << num(lo) << ',' << num(hi) << '\n';
    }
    if (!o.z.empty()) {
        const auto z = parse_point(o.z, dim, "--z");
        int member = 0;
        check(rosl_gf_membership(map.get(), x.data(), ybar.data(), z.data(), o.tol.value_or(0.0),
                                 &member));
        std::cout << "z=" << join(z.data(), dim) << '\n';
        std::cout << "member=" << (member ? "true" : "false") << '\n';
    }
    return kExitOk;
}

int cmd_witness(const Options& o) {
    MapPtr map = load_map(o);
    const std::size_t dim = rosl_map_dim(map.get());
    const auto ybar = need_point(o.ybar, dim, "--ybar");
    const auto z = need_point(o.z, dim, "--z");
    std::vector<double> x(dim);
    int found = 0;
    check(rosl_witness(map.get(), ybar.data(), z.data(), 0, x.data(), &found));
    std::cout << "map=" << rosl_map_id(map.get()) << '\n';
    std::cout << "z=" << join(z.data(), dim) << '\n';
    if (!found) {
        std::cout << "witness=none_found\n";
        return kExitRefuted;
    }
    std::cout << "witness=" << join(x.data(), dim) << '\n';
    return kExitOk;
}

int cmd_reproduce_example34() {
    rosl_map* raw = nullptr;
    check(rosl_map_example34(-1.0, &raw));
    MapPtr map(raw);
    const double ybar = 0.0;
    bool all = true;
    for (double x : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        std::size_t count = 0;
        double centers[8];
        double radii[8];
        check(rosl_gf_balls(map.get(), &x, &ybar, 0, centers, radii, 8, &count));
        double lo = centers[0] - radii[0];
        double hi = centers[0] + radii[0];
        for (std::size_t i = 1; i < count; ++i) {
            lo = std::min(lo, centers[i] - radii[i]);
            hi = std::max(hi, centers[i] + radii[i]);
        }
        // G_F(x,0) = [x,2] for x<0, [-2,2] at 0, [-2,x] for x>0.
        const double elo = x < 0 ? x : -2.0;
        const double ehi = x > 0 ? x : 2.0;
        const bool ok = std::abs(lo - elo) <= 1e-9 && std::abs(hi - ehi) <= 1e-9;
        all = all && ok;
        std::cout << "x=" << num(x) << " computed=" << num(lo) << ',' << num(hi)
                  << " closed_form=" << num(elo) << ',' << num(ehi)
                  << " match=" << (ok ? "true" : "false") << '\n';
    }
    std::cout << "all_match=" << (all ? "true" : "false") << '\n';
    return all ? kExitOk : kExitRefuted;
}

int cmd_bench(const Options& o) {
    bool clean = true;
    for (std::size_t n : {8u, 64u, 512u}) {
        rosl_bench_result r{};
        check(rosl_bench_filter(n, o.queries, o.seed, &r));
        std::cout << "n=" << r.vertices << " queries=" << r.queries << " members=" << r.members
                  << " mismatches=" << r.mismatches
                  << " retained_fraction=" << num(r.mean_retained_fraction)
                  << " unfiltered_qps=" << num(std::round(r.unfiltered_qps))
                  << " filtered_qps=" << num(std::round(r.filtered_qps)) << '\n';
        clean = clean && r.mismatches == 0 && r.mean_retained_fraction <= 1.0;
    }
    std::cout << "verdicts_equal=" << (clean ? "true" : "false") << '\n';
    return clean ? kExitOk : kExitRefuted;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preimages of relaxed one-sided Lipschitz set-valued maps", "rosl"};
    app.set_version_flag("--version", std::string(rosl_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--map", o.map_path, "Map definition file (JSON)");
    app.add_option("--ybar", o.ybar, "Target point, comma separated");
    app.add_option("--grid", o.grid, "Grid LO..HI[,LO..HI...]xN");
    app.add_option("--base", o.base, "Base points: list | grid | inflate:EPS,ITERS");
    app.add_flag("--filtered", o.filtered, "Use outward-facing extreme points only");
    app.add_flag("--with-oracle", o.with_oracle, "Also compute the brute-force oracle mask");
    app.add_option("--out", o.out, "Output CSV path (PGM written alongside for 2D)");
    app.add_option("--tol", o.tol, "Tolerance override");
    app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    app.add_option("--x", o.x, "Base point x, comma separated");
    app.add_option("--z", o.z, "Query point z, comma separated");
    app.add_option("--queries", o.queries, "Benchmark queries per size")->capture_default_str();

    int code = kExitOk;
    auto run = [&code](auto fn) { return [&code, fn] { code = fn(); }; };
    app.add_subcommand("check-rosl", "Sampled check of the one-sided Lipschitz condition")
        ->callback(run([&o] { return cmd_check_rosl(o); }));
    app.add_subcommand("preimage", "Outer approximation of the preimage on a grid")
        ->callback(run([&o] { return cmd_preimage(o); }));
    app.add_subcommand("oracle", "Brute-force preimage mask")
        ->callback(run([&o] { return cmd_oracle(o); }));
    app.add_subcommand("gf", "Balls generating G_F(x, ybar)")
        ->callback(run([&o] { return cmd_gf(o); }));
    app.add_subcommand("witness", "Base point whose G_F excludes z")
        ->callback(run([&o] { return cmd_witness(o); }));
    app.add_subcommand("reproduce-example34", "G_F(x,0) table for the built-in 1D example")
        ->callback(run([] { return cmd_reproduce_example34(); }));
    app.add_subcommand("bench", "Extreme-point filter benchmark")
        ->callback(run([&o] { return cmd_bench(o); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    std::cout.flush();
    return code;
}
