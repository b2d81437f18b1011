#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nlohmann/json.hpp"
#include "splinedft/bench.hpp"
#include "splinedft/spline.hpp"
#include "splinedft/test_functions.hpp"

namespace fs = std::filesystem;
using namespace splinedft;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp_dir() {
    static const fs::path dir = [] {
        const char* env = std::getenv("SPLINEDFT_TEST_TMP");
        fs::path p = env && *env ? fs::path(env) : fs::temp_directory_path() / "splinedft_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string path(const std::string& name) { return (tmp_dir() / name).string(); }

std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// N + 1 rows of t,value for a test function.
std::string samples_csv(const TestFunction<double>& f, int n, bool header = true) {
    std::ostringstream os;
    os.precision(17);
    if (header) os << "t,value\n";
    for (int j = 0; j <= n; ++j) {
        const double t = f.period * j / n;
        os << t << ',' << f(t) << '\n';
    }
    return os.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> r;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

double max_error(const TestFunction<double>& f, const std::string& csv) {
    double e = 0;
    for (const auto& r : parse_csv(csv)) e = std::max(e, std::abs(f(r[0]) - r[1]));
    return e;
}

}  // namespace

TEST_CASE("interpolate at the nodes reproduces the samples") {
    const auto f = make_test_function<double>("g1");
    const auto in = path("g1_31.csv");
    write(in, samples_csv(f, 31));
    const auto r = run({"interpolate", in, "--theta", "3", "--bc", "method2", "--eval-at", "nodes"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 32);
    for (int j = 0; j <= 31; ++j) {
        CHECK(rows[j][0] == doctest::Approx(f.period * j / 31).epsilon(1e-15));
        CHECK(std::abs(rows[j][1] - f(f.period * j / 31)) <= 1e-10);
    }
}

TEST_CASE("interpolate from a value list with derivatives") {
    const auto r = run({"interpolate", "--values", "0,1,4,9,16,25,36,49", "--T", "7", "--theta", "3", "--bc", "zero",
                        "--eval-at", "linspace:0:7:5", "--derivs", "2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].size() == 4);
    CHECK(r.out.rfind("t,value,d1,d2\n", 0) == 0);
    CHECK(rows[4][0] == 7.0);
    CHECK(rows[4][1] == doctest::Approx(49.0));
}

TEST_CASE("exit codes") {
    const auto f = make_test_function<double>("g1");
    const auto even = path("g1_30.csv");
    write(even, samples_csv(f, 30));
    SUBCASE("parity") {
        CHECK(run({"interpolate", even, "--theta", "4", "--bc", "method2", "--eval-at", "nodes"}).code == 3);
        CHECK(run({"interpolate", even, "--theta", "4", "--bc", "method1", "--eval-at", "nodes"}).code == 3);
        CHECK(run({"interpolate", even, "--theta", "3", "--bc", "method2", "--eval-at", "nodes"}).code == 3);
        CHECK(run({"interpolate", even, "--theta", "3", "--bc", "method1", "--eval-at", "nodes"}).code == 0);
        CHECK(run({"ft-demo", "--theta", "4", "--out", path("ft_even")}).code == 3);
    }
    SUBCASE("usage") {
        CHECK(run({"interpolate", even, "--theta", "3", "--bogus"}).code == 2);
        CHECK(run({"interpolate", even, "--bc", "method1", "--eval-at", "nodes"}).code == 2);
        CHECK(run({"interpolate", even, "--theta", "3", "--bc", "spline"}).code == 2);
        CHECK(run({"interpolate", even, "--theta", "3", "--bc", "method1", "--eval-at", "everywhere"}).code == 2);
        CHECK(run({"bench", "--theta", ""}).code == 2);
        CHECK(run({"bench", "--function", "g7"}).code == 2);
        CHECK(run({}).code == 2);
        const auto bad = path("bad.csv");
        write(bad, "t,value\n0,1\n0.5,abc\n1,2\n");
        CHECK(run({"interpolate", bad, "--theta", "1", "--eval-at", "nodes"}).code == 2);
    }
    SUBCASE("not equispaced") {
        const auto p = path("uneven.csv");
        write(p, "0,0\n0.25,1\n0.5,0\n0.8,1\n1.0,0\n");
        const auto r = run({"interpolate", p, "--theta", "1", "--eval-at", "nodes"});
        CHECK(r.code == 2);
        CHECK(r.err.find("t[3]") != std::string::npos);
    }
    SUBCASE("singular") {
        const auto r = run({"interpolate", "--values", "0,0.1,0.4,0.9", "--T", "1", "--theta", "5", "--bc",
                            "method1", "--eval-at", "nodes"});
        CHECK(r.code == 4);
    }
    SUBCASE("io") {
        CHECK(run({"interpolate", path("missing.csv"), "--theta", "3", "--eval-at", "nodes"}).code == 5);
        CHECK(run({"interpolate", "--from-spline", path("missing.json"), "--eval-at", "nodes"}).code == 5);
    }
}

TEST_CASE("analytic boundary file beats method 2") {
    const auto f = make_test_function<double>("g1");
    const auto in = path("g1_101.csv");
    write(in, samples_csv(f, 101));
    const auto d = f.boundary_differences(3);
    const auto bfile = path("g1_b.txt");
    {
        std::ofstream o(bfile);
        o.precision(17);
        o << "# b_1, b_2\n" << d[0] << '\n' << d[1] << '\n';
    }
    const auto exact = run({"interpolate", in, "--theta", "3", "--bc", "exact-file=" + bfile, "--eval-at", "refine:10"});
    const auto m2 = run({"interpolate", in, "--theta", "3", "--bc", "method2", "--eval-at", "refine:10"});
    REQUIRE(exact.code == 0);
    REQUIRE(m2.code == 0);
    const double e_exact = max_error(f, exact.out);
    const double e_m2 = max_error(f, m2.out);
    CHECK(e_exact <= e_m2);

    write(bfile, "1.0\n");
    CHECK(run({"interpolate", in, "--theta", "3", "--bc", "exact-file=" + bfile, "--eval-at", "nodes"}).code == 2);
}

TEST_CASE("serialized spline round trip and determinism") {
    const auto f = make_test_function<double>("g4");
    const auto in = path("g4_31.csv");
    write(in, samples_csv(f, 31, false));
    const auto js = path("g4.json");
    const auto a = path("g4_a.csv");
    const auto b = path("g4_b.csv");
    REQUIRE(run({"interpolate", in, "--theta", "5", "--bc", "method1", "--emit-spline", js, "--eval-at", "refine:7",
                 "--derivs", "3", "--out", a})
                .code == 0);
    REQUIRE(run({"interpolate", "--from-spline", js, "--eval-at", "refine:7", "--derivs", "3", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    const std::string first = slurp(js);
    REQUIRE(run({"interpolate", in, "--theta", "5", "--bc", "method1", "--emit-spline", js}).code == 0);
    CHECK(slurp(js) == first);
    CHECK(first.find("finished_utc") == std::string::npos);
    const auto meta = nlohmann::json::parse(slurp(js + ".meta.json"));
    CHECK(meta.contains("finished_utc"));
    CHECK(meta["digits"] == 15);

    write(js, "{\"format\": \"nope\"}");
    CHECK(run({"interpolate", "--from-spline", js, "--eval-at", "nodes"}).code == 2);
}

TEST_CASE("SPLINEDFT_DIGITS overrides --digits") {
    const auto js = path("env.json");
    setenv("SPLINEDFT_DIGITS", "30", 1);
    const auto r = run({"interpolate", "--values", "0,1,0,-1,0,1,0,-1", "--T", "7", "--theta", "3", "--bc", "method2",
                        "--emit-spline", js});
    unsetenv("SPLINEDFT_DIGITS");
    REQUIRE(r.code == 0);
    CHECK(spline_json_digits(slurp(js)) == 30);
    setenv("SPLINEDFT_DIGITS", "12", 1);
    CHECK(run({"interpolate", "--values", "0,1,0", "--T", "1", "--theta", "1", "--eval-at", "nodes"}).code == 2);
    unsetenv("SPLINEDFT_DIGITS");
}

TEST_CASE("bench and table") {
    SUBCASE("exactness row") {
        const auto r = run({"bench", "--function", "g3", "--theta", "11", "--bc", "exact", "--n", "31"});
        REQUIRE(r.code == 0);
        const auto lines = r.out.substr(r.out.find('\n') + 1);
        std::vector<std::string> cells;
        std::stringstream ls(lines.substr(0, lines.find('\n')));
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 12);
        CHECK(std::stod(cells[6]) <= 1e-9);
        CHECK(cells.back() == "ok");
    }
    SUBCASE("skipped rows do not fail the run") {
        const auto out = path("bench.json");
        const auto r = run({"bench", "--theta", "4", "--n", "30,31", "--bc", "method1", "--format", "json", "--out", out});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(slurp(out));
        REQUIRE(doc.size() == 2);
        CHECK(doc[0]["status"].get<std::string>().rfind("skipped", 0) == 0);
        CHECK(doc[1]["status"] == "ok");
        CHECK(fs::exists(out + ".meta.json"));
    }
    SUBCASE("table") {
        const auto r = run({"table", "--function", "g1", "--theta", "3", "--format", "csv"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("g1,3,501,method2") != std::string::npos);
        const auto t = run({"table", "--function", "g1", "--theta", "3"});
        REQUIRE(t.code == 0);
        CHECK(t.out.find("cubic-nak") != std::string::npos);
    }
}

TEST_CASE("ft-demo writes its artifacts") {
    const auto dir = path("ft");
    fs::remove_all(dir);
    const auto r = run({"ft-demo", "--theta", "3", "--bc", "zero,exact", "--omega-grid", "0,60,120", "--lambda", "2",
                        "--out", dir});
    REQUIRE(r.code == 0);
    for (const char* name : {"summary.csv", "ft_error_theta3_zero.csv", "ft_error_theta3_exact.csv",
                             "difference_theta3_zero.csv", "run.meta.json"})
        CHECK_MESSAGE(fs::exists(fs::path(dir) / name), name);
    const auto ft = parse_csv(slurp((fs::path(dir) / "ft_error_theta3_exact.csv").string()));
    CHECK(ft.size() == 3);
    CHECK(ft[1][0] == 60.0);
}

TEST_CASE("help and selftest") {
    const auto h = run({"interpolate", "--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("rows minus one") != std::string::npos);
    const auto s = run({"selftest"});
    CHECK(s.code == 0);
    CHECK(s.out.find("FAIL") == std::string::npos);
    CHECK(run({"--version"}).out == "1.0.0\n");
}
