#include "doctest.h"

#include "fkmm/cli.hpp"
#include "fkmm/models.hpp"
#include "fkmm/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fkmm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content = "") {
    const fs::path p = fs::temp_directory_path() / ("fkmm_cli_" + std::to_string(::getpid()) + "_" + name);
    if (!content.empty()) {
        std::ofstream f(p, std::ios::binary);
        f << content;
    }
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells(1);
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (ch == '"' && quoted && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = !quoted;
            } else if (ch == ',' && !quoted) {
                cells.emplace_back();
            } else {
                cells.back() += ch;
            }
        }
        rows.push_back(cells);
    }
    return rows;
}

// The mass family with the sign of F3 chosen so that time reversal holds.
const char* kMassFile = R"(format: 1
space: T:0,2,0
family: clifford
params:
  m: 1
  t: 0.5
F0: sin(k1)
F1: sin(k2)
F2: m + cos(k1) + cos(k2)
F3: t*sin(k1)*cos(k2)
F4: 0
)";

// F3 = t sin k1 sin k2 is even under k -> -k while Sigma_3 needs an odd coefficient.
const char* kBrokenFile = R"(format: 1
space: T:0,2,0
family: clifford
params:
  m: 1
  t: 0.5
F0: sin(k1)
F1: sin(k2)
F2: m + cos(k1) + cos(k2)
F3: t*sin(k1)*sin(k2)
F4: 0
)";

}  // namespace

TEST_CASE("classify examples") {
    auto r = run({"classify", "--space", "T:0,3,0", "--rank", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z_2^4") != std::string::npos);
    CHECK(r.err.empty());

    r = run({"classify", "--space", "S:0,4", "--rank", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("EMPTY") != std::string::npos);

    r = run({"classify", "--space", "S:1,1", "--rank", "2"});
    CHECK(r.out.find("0 (unique, trivial)") != std::string::npos);

    r = run({"classify", "--space", "S:0,3", "--rank", "2"});
    CHECK(r.out == "S:0,3 rank=2m -> 2Z via c1 (FKMM bijective)\n");

    r = run({"classify", "--space", "T:0,2,0", "--rank", "2", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("group") == "Z_2");
    CHECK(j.at("status") == "group");
}

TEST_CASE("cohomology examples") {
    CHECK(run({"cohomology", "--space", "T:1,1,1", "--deg", "2", "--twist", "1"}).out == "Z_2 (+) Z^2\n");
    CHECK(run({"cohomology", "--space", "S:0,3", "--deg", "2", "--twist", "1"}).out == "Z\n");
    for (const char* s : {"S:0,2", "S:0,3", "S:0,4", "T:0,0,1", "T:0,1,1", "T:1,0,1", "T:0,0,3"})
        CHECK_MESSAGE(run({"cohomology", "--space", s, "--deg", "0", "--twist", "1"}).out == "0\n", s);
    CHECK(run({"cohomology", "--space", "S:0,3", "--deg", "2", "--twist", "2"}).code == kExitUsage);
}

TEST_CASE("invariant examples") {
    auto r = run({"invariant", "--model", "builtin:hopf-s12"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z2 index: -1\n") != std::string::npos);

    r = run({"invariant", "--model", "builtin:trivial-t020", "--grid", "16"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z2 index: +1\n") != std::string::npos);

    const auto path = temp_file("mass.yaml", kMassFile);
    r = run({"invariant", "--model", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z2 index: -1\n") != std::string::npos);
    CHECK(r.out.find("c1 on k1k2: 0\n") != std::string::npos);

    // parameters from the command line override the file
    r = run({"invariant", "--model", path.string(), "--param", "m=3"});
    CHECK(r.out.find("Z2 index: +1\n") != std::string::npos);
    r = run({"invariant", "--model", path.string(), "--param", "m=-1", "--param", "t=0.2"});
    CHECK(r.out.find("Z2 index: -1\n") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("invariant output formats") {
    auto r = run({"invariant", "--model", "builtin:hopf-line-s03", "--format", "csv", "--grid", "16"});
    CHECK(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"model", "space", "grid", "min_gap", "c1_S2", "class"});
    CHECK(rows[1][4] == "1");
    CHECK(r.out.find('\r') == std::string::npos);

    for (const char* model : {"builtin:hopf-s12", "builtin:mass-t020", "builtin:hopf-line-s03", "builtin:trivial-t111"}) {
        r = run({"invariant", "--model", model, "--format", "json", "--grid", "16"});
        REQUIRE_MESSAGE(r.code == 0, model);
        const InvariantReport rep = report_from_json(nlohmann::json::parse(r.out));
        CHECK(report_from_json(nlohmann::json::parse(to_json(rep).dump())) == rep);
        CHECK(to_json(rep).dump(2) + "\n" == r.out);
    }
    CHECK_THROWS_AS(report_from_json(nlohmann::json{{"model", "x"}}), Error);
}

TEST_CASE("--out and --curvature write files, stdout stays empty") {
    const auto out = temp_file("report.json");
    const auto curv = temp_file("curv.csv");
    auto r = run({"invariant", "--model", "builtin:hopf-line-s03", "--grid", "16", "--format", "json", "--out", out.string(),
                  "--curvature", curv.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(report_from_json(nlohmann::json::parse(read_file(out))).chern.at("S2") == 1);
    const std::string c = read_file(curv);
    CHECK(c.rfind("x0,x1,x2,F_plaquette\n", 0) == 0);
    fs::remove(out);
    fs::remove(curv);
}

TEST_CASE("exit codes") {
    CHECK(run({"classify", "--space", "T:3,1,0", "--rank", "2"}).code == kExitUnsupported);
    CHECK(run({"classify", "--space", "X:1", "--rank", "2"}).code == kExitUsage);

    // gap closes at m = 0 on the grid (k = (0, pi))
    auto r = run({"invariant", "--model", "builtin:mass-t020", "--param", "m=0"});
    CHECK(r.code == kExitGapClosed);
    CHECK(r.out.empty());
    CHECK(r.err.find("GapClosed") != std::string::npos);

    // a high-frequency odd map is too rough for an 8 point grid
    const auto rough = temp_file("rough.yaml", R"(format: 1
space: S:0,3
family: pauli
F0: sin(5*x0)
F1: sin(5*x1 + 2*x0)
F2: sin(5*x2 - x1)
)");
    r = run({"invariant", "--model", rough.string(), "--grid", "8"});
    CHECK(r.code == kExitNotAdmissible);
    CHECK(r.err.find("refine the grid") != std::string::npos);
    CHECK(run({"invariant", "--model", rough.string(), "--grid", "16"}).code == 0);
    fs::remove(rough);

    const auto broken = temp_file("broken.yaml", kBrokenFile);
    r = run({"invariant", "--model", broken.string()});
    CHECK(r.code == kExitTrs);
    CHECK(r.out.empty());
    CHECK(r.err.find("violates time reversal") != std::string::npos);
    CHECK(run({"sweep", "--model", broken.string(), "--param", "m", "--range", "0:1:0.5"}).code == kExitTrs);
    fs::remove(broken);

    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:hopf-s12", "--grid", "7"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:hopf-s12", "--grid", "4"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:hopf-s12", "--format", "xml"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:no-such-model"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:mass-t020", "--param", "q=1"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "builtin:mass-t020", "--param", "m=abc"}).code == kExitUsage);
    CHECK(run({"invariant", "--model", "/nonexistent/model.yaml"}).code == kExitUsage);
    CHECK(run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "0:1"}).code == kExitUsage);
    CHECK(run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "0:1:0"}).code == kExitUsage);
    CHECK(run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "0:1:-1"}).code == kExitUsage);
    CHECK(run({"sweep", "--model", "builtin:mass-t020", "--param", "zz", "--range", "0:1:1"}).code == kExitUsage);

    r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("exit code table") {
    CHECK(exit_code(Errc::UnsupportedSpace) == 2);
    CHECK(exit_code(Errc::UnsupportedDimension) == 2);
    CHECK(exit_code(Errc::GapClosed) == 3);
    CHECK(exit_code(Errc::NotAdmissible) == 4);
    CHECK(exit_code(Errc::SyntaxError) == 6);
    CHECK(exit_code(Errc::OddResolution) == 6);
    CHECK(exit_code(Errc::NumericalInconsistency) == 7);
    CHECK(exit_code(Errc::OddChernParity) == 7);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--model", "builtin:mass-t020", "--grid", "16"});
    CHECK(r.code == 0);
    CHECK(!r.out.empty());
    const auto broken = temp_file("broken_v.yaml", kBrokenFile);
    r = run({"verify", "--model", broken.string(), "--grid", "16", "--format", "json"});
    CHECK(r.code == kExitTrs);
    CHECK(nlohmann::json::parse(r.out).at("pass") == false);
    CHECK(r.err.find("violates time reversal") != std::string::npos);
    fs::remove(broken);
}

TEST_CASE("mass family sweep") {
    auto r = run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "-3:3:0.25", "--grid", "32"});
    CHECK(r.code == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 26);
    CHECK(rows[0] == std::vector<std::string>{"m", "gap_min", "Z2", "c1_k1k2"});
    double prev = -1e9;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double m = std::stod(rows[i][0]);
        CHECK(m > prev);
        prev = m;
        if (m == -2 || m == 0 || m == 2) {
            CHECK_MESSAGE(rows[i][2] == "NA", m);
            CHECK(rows[i][3] == "NA");
            CHECK(std::stod(rows[i][1]) < 1e-6);
        } else {
            CHECK_MESSAGE(rows[i][2] == (std::abs(m) < 2 ? "-1" : "1"), m);
            CHECK(rows[i][3] == "0");
            CHECK(std::stod(rows[i][1]) > 0.1);
        }
    }
    // NA points are diagnosed on stderr
    CHECK(r.err.find("m = 0: NA") != std::string::npos);

    r = run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "1:0:0.5"});
    CHECK(r.code == 0);
    CHECK(r.out == "m,gap_min,Z2,c1_k1k2\n");

    r = run({"sweep", "--model", "builtin:mass-t020", "--param", "m", "--range", "0.5:1.5:0.5", "--format", "json", "--grid",
             "16"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("rows").size() == 3);
    CHECK(j.at("rows")[0].at("Z2") == -1);
}

TEST_CASE("sweep of a trivial model is constant") {
    const auto path = temp_file("flat.yaml", R"(format: 1
space: T:0,2,0
family: clifford
params:
  a: 1
F0: 0
F1: 0
F2: a
F3: 0
F4: 0
)");
    const auto out = temp_file("flat.csv");
    const auto r = run({"sweep", "--model", path.string(), "--param", "a", "--range", "0.5:2:0.5", "--grid", "16", "--out",
                        out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto rows = csv_rows(read_file(out));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "1");
    fs::remove(path);
    fs::remove(out);
}

TEST_CASE("FKMM_GAP_TOL") {
    // the mass model at m = 1 has min Q / max Q = 1/9 on the grid
    ::setenv("FKMM_GAP_TOL", "0.5", 1);
    CHECK(run({"invariant", "--model", "builtin:mass-t020", "--grid", "16"}).code == kExitGapClosed);
    ::setenv("FKMM_GAP_TOL", "0.05", 1);
    CHECK(run({"invariant", "--model", "builtin:mass-t020", "--grid", "16"}).code == 0);
    ::setenv("FKMM_GAP_TOL", "lots", 1);
    CHECK(run({"invariant", "--model", "builtin:mass-t020", "--grid", "16"}).code == kExitUsage);
    ::unsetenv("FKMM_GAP_TOL");
}
