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

// Runs the command-line binary and checks its exit codes and reports.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

const std::string kCli = ROSL_CLI_PATH;
const std::string kData = ROSL_DATA_DIR;

struct Run {
    int code = -1;
    std::string out;
    std::map<std::string, std::string> kv;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) {
        r.out += buf;
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos && line.substr(0, eq).find(' ') == std::string::npos) {
            r.kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    return r;
}

std::string map(const char* name) { return "--map " + kData + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "rosl_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("reproduce-example34 prints the table and succeeds") {
    Run r = run("reproduce-example34");
    CHECK(r.code == 0);
    CHECK(r.kv["all_match"] == "true");
    CHECK(r.out.find("x=-1 computed=-1,2 closed_form=-1,2 match=true") != std::string::npos);
    CHECK(r.out.find("x=0 computed=-2,2") != std::string::npos);
    CHECK(r.out.find("x=2 computed=-2,2") != std::string::npos);
}

TEST_CASE("check-rosl exit codes") {
    Run r = run("check-rosl " + map("example34.json"));
    CHECK(r.code == 0);
    CHECK(r.kv["status"] == "not_refuted");
    CHECK(std::stod(r.kv["worst_gap"]) <= 1e-9);
    CHECK(r.kv.count("estimate_ell") == 1);
    CHECK(r.kv["note"].find("not a proof") != std::string::npos);

    r = run("check-rosl " + map("example34_tight.json"));
    CHECK(r.code == 2);
    CHECK(r.kv["status"] == "refuted");
    CHECK(r.kv["ell_vs_estimate"] == "mismatch");

    r = run("check-rosl " + map("affine2d_aniso.json"));
    CHECK(r.code == 0);

    CHECK(run("check-rosl --map /nonexistent.json").code == 1);
    CHECK(run("check-rosl").code == 1);
    CHECK(run("check-rosl " + map("example34.json") + " --grid 0..1x1").code == 1);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("no-such-command").code == 1);
    CHECK(run("preimage " + map("example34.json") + " --ybar 0,0 --grid -3..3x61").code == 1);
    CHECK(run("preimage " + map("example34.json") + " --ybar 0 --grid nonsense").code == 1);
    CHECK(run("preimage " + map("example34.json") + " --ybar 0 --grid -3..3x61 --base inflate:x").code ==
          1);
    CHECK(run("preimage " + map("affine2d.json") + " --ybar 0,0 --grid -1..1,-1..1,-1..1x5").code == 1);
    CHECK(run("gf " + map("example34.json") + " --ybar 0").code == 1);
}

TEST_CASE("preimage on the 1D map") {
    Run r = run("preimage " + map("example34.json") + " --ybar 0 --grid -3..3x601 --base 0");
    CHECK(r.code == 0);
    CHECK(r.kv["outer_extent"] == "-2,2");
    CHECK(r.kv["outer_members"] == "401");

    r = run("preimage " + map("example34.json") + " --ybar 0 --grid -3..3x601 --base grid --with-oracle");
    CHECK(r.code == 0);
    CHECK(r.kv["oracle_members"] == "1");
    CHECK(r.kv["only_oracle"] == "0");
    CHECK(r.kv["containment"] == "ok");
    CHECK(std::stod(r.kv["band_spacings"]) <= 2.0 + 1e-9);

    r = run("preimage " + map("example34.json") + " --ybar 0 --grid -3..3x601 --base \"{-0.5,0.5}\"");
    CHECK(r.code == 0);
    CHECK(r.kv["outer_members"] == "101");

    r = run("preimage " + map("example34.json") + " --ybar 0 --grid -3..3x121 --base inflate:0.25,2");
    CHECK(r.code == 0);
    CHECK(r.kv["base"] == "inflate:0.25,2");
}

TEST_CASE("preimage on a 2D affine map writes CSV and PGM") {
    const auto out = scratch("affine.csv");
    Run r = run("preimage " + map("affine2d.json") + " --ybar 0,0 --grid -0.5..1.5x41 --filtered --with-oracle --out " +
                      out.string());
    CHECK(r.code == 0);
    CHECK(r.kv["containment"] == "ok");
    CHECK(std::stod(r.kv["band_spacings"]) <= 2.0 + 1e-9);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("# dim=2 lower=-0.5,-0.5 upper=1.5,1.5 nodes=41 ybar=0,0 source=outer", 0) == 0);
    const std::string pgm = slurp(out.parent_path() / "affine.pgm");
    CHECK(pgm.rfind("P2\n41 41\n255\n", 0) == 0);
    const std::string oracle = slurp(out.parent_path() / "affine.oracle.csv");
    CHECK(oracle.find("source=oracle") != std::string::npos);
    CHECK(std::filesystem::exists(out.parent_path() / "affine.oracle.pgm"));
}

TEST_CASE("oracle, gf and witness commands") {
    Run r = run("oracle " + map("example34.json") + " --ybar 0 --grid -3..3x601");
    CHECK(r.code == 0);
    CHECK(r.kv["oracle_extent"] == "0,0");

    r = run("gf " + map("example34.json") + " --x 0.5 --ybar 0 --z 1");
    CHECK(r.code == 0);
    CHECK(r.kv["union"] == "-2,0.5");
    CHECK(r.kv["member"] == "false");
    r = run("gf " + map("example34.json") + " --x -1 --ybar 0 --filtered");
    CHECK(r.kv["balls"] == "1");
    CHECK(r.kv["union"] == "-1,2");

    r = run("witness " + map("example34.json") + " --ybar 0 --z 1");
    CHECK(r.code == 0);
    CHECK(r.kv["witness"] == "0.5");
    CHECK(run("witness " + map("example34.json") + " --ybar 0 --z 0").code == 1);
}

TEST_CASE("bench reports equal verdicts") {
    Run r = run("bench --queries 300 --seed 5");
    CHECK(r.code == 0);
    CHECK(r.kv["verdicts_equal"] == "true");
    CHECK(r.out.find("n=512 ") != std::string::npos);
    CHECK(r.out.find("mismatches=0") != std::string::npos);
}

TEST_CASE("output files are identical across runs and worker counts") {
    const auto a = scratch("run_a.csv");
    const auto b = scratch("run_b.csv");
    const std::string common = "preimage " + map("affine2d_aniso.json") +
                               " --ybar 0.2,-0.1 --grid -3..3x61 --with-oracle --out ";
    const Run ra = run(common + a.string() + " --threads 1");
    const Run rb = run(common + b.string() + " --threads 3");
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    for (const char* suffix : {".csv", ".pgm", ".oracle.csv", ".oracle.pgm"}) {
        const auto pa = a.parent_path() / (std::string("run_a") + suffix);
        const auto pb = b.parent_path() / (std::string("run_b") + suffix);
        CHECK(!slurp(pa).empty());
        CHECK(slurp(pa) == slurp(pb));
    }
}
