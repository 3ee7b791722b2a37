#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "debranges/bounds.hpp"
#include "debranges/cli.hpp"
#include "debranges/errors.hpp"
#include "debranges/json_io.hpp"

using namespace dbr;
using namespace dbr::cli;
using json_io::json;

namespace {

constexpr double pi = std::numbers::pi;

struct Scratch {
    std::filesystem::path dir;
    Scratch() : dir(std::filesystem::temp_directory_path() / "debranges_cli_test") {
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::filesystem::path write(const std::string& name, const json& j) const {
        const auto path = dir / name;
        json_io::write_file(j, path);
        return path;
    }
};

HBSpec power_spec(int n) { return HBSpec::from_zeros(std::vector<cplx>(n, cplx{0.0, -1.0})); }

struct Run {
    int code = -1;
    json report;
    std::string log;
};

Run execute(const RunConfig& config) {
    std::ostringstream out, log;
    Run r;
    r.code = run(config, out, log);
    r.report = json::parse(out.str());
    r.log = log.str();
    return r;
}

}  // namespace

TEST_CASE("command names and windows parse") {
    CHECK(parse_command("verify-hormander") == Command::verify_hormander);
    CHECK(command_name(Command::separation) == "separation");
    CHECK_THROWS_AS(parse_command("plot"), InputError);
    const hormander::Window w = parse_window("-2.5,4");
    CHECK(w.lo == -2.5);
    CHECK(w.hi == 4.0);
    CHECK_THROWS_AS(parse_window("3,1"), InputError);
    CHECK_THROWS_AS(parse_window("1;2"), InputError);
    CHECK_THROWS_AS(parse_window("1,2,3"), InputError);
}

TEST_CASE("tolerance resolution order") {
    RunConfig c;
    ::unsetenv(kToleranceEnv);
    CHECK(resolve_tolerance(c) == kDefaultTolerance);
    ::setenv(kToleranceEnv, "1e-6", 1);
    CHECK(resolve_tolerance(c) == 1e-6);
    c.tol = 1e-3;
    CHECK(resolve_tolerance(c) == 1e-3);
    c.tol.reset();
    ::setenv(kToleranceEnv, "soon", 1);
    CHECK_THROWS_AS(resolve_tolerance(c), InputError);
    ::unsetenv(kToleranceEnv);
    c.tol = -1.0;
    CHECK_THROWS_AS(resolve_tolerance(c), InputError);
}

TEST_CASE("bounds for S_pi at p = 2") {
    Scratch s;
    RunConfig c;
    c.command = Command::bounds;
    c.spec_path = s.write("s_pi.json", json_io::to_json(HBSpec::paley_wiener(pi)));
    c.p = 2.0;
    const Run r = execute(c);
    REQUIRE(r.code == kExitOk);
    const auto b = json_io::parse_bound_report(r.report["results"]["bound"]);
    CHECK(b.K_p == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-14));
    CHECK(b.C_bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r.report["passed"] == true);
    CHECK(r.report["command"] == "bounds");
    CHECK(r.report["inputs"]["p"] == 2.0);
    CHECK(r.report["tolerances"]["tol"] == kDefaultTolerance);
    CHECK(r.report["wall_time_seconds"].get<double>() >= 0.0);
}

TEST_CASE("verify-hormander sign-free on the constant function") {
    Scratch s;
    RunConfig c;
    c.command = Command::verify_hormander;
    c.spec_path = s.write("e2.json", json_io::to_json(power_spec(2)));
    c.f_path = s.write("one.json", json_io::to_json(Entire::polynomial({1.0})));
    c.sign_free = true;
    c.csv_path = s.dir / "margin.csv";
    const Run r = execute(c);
    REQUIRE(r.code == kExitOk);
    const auto h = json_io::parse_hormander_report(r.report["results"]);
    CHECK(std::abs(h.xi) < 1e-10);
    CHECK(h.bracket_lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(h.bracket_hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.min_margin >= -1e-9);
    CHECK(json_io::to_json(h) == r.report["results"]);

    std::ifstream csv(*c.csv_path);
    std::string header, line;
    std::getline(csv, header);
    CHECK(header == "x,margin");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 2048);
}

TEST_CASE("verify-hormander signed bound needs a bracket on both sides") {
    Scratch s;
    RunConfig c;
    c.command = Command::verify_hormander;
    c.spec_path = s.write("e2.json", json_io::to_json(power_spec(2)));
    c.f_path = s.write("one.json", json_io::to_json(Entire::polynomial({1.0})));
    const Run r = execute(c);
    CHECK(r.code == kExitMathFailure);
    CHECK(r.report["error"]["kind"] == "BracketUnavailable");
}

TEST_CASE("wrong sign is a mathematical failure naming the invariant") {
    Scratch s;
    const HBSpec pw = HBSpec::paley_wiener(pi);
    const HBSpec half = HBSpec::paley_wiener(pi / 2);
    const Entire k = Entire::kernel(half, 0.0);
    const Entire neg = Entire::combination({{-1.0, Entire::product({{half, k}, {half, k}})}});
    RunConfig c;
    c.command = Command::verify_hormander;
    c.spec_path = s.write("s_pi.json", json_io::to_json(pw));
    c.f_path = s.write("neg.json", json_io::to_json(neg));
    c.window = hormander::Window{-20.0, 20.0};
    const Run r = execute(c);
    CHECK(r.code == kExitMathFailure);
    CHECK(r.report["error"]["invariant"] == "wrong sign at xi");
    CHECK(r.report["passed"] == false);

    c.sign_free = true;
    CHECK(execute(c).code == kExitOk);
}

TEST_CASE("input errors map to exit code 2") {
    Scratch s;
    RunConfig c;
    c.command = Command::bounds;
    CHECK(execute(c).code == kExitInputError);  // no spec
    c.spec_path = s.write("e3.json", json_io::to_json(power_spec(3)));
    const Run r = execute(c);  // no p
    CHECK(r.code == kExitInputError);
    CHECK(r.report["error"]["kind"] == "InputError");
    c.p = 2.0;
    {
        std::ofstream bad(s.dir / "bad.json");
        bad << "{\"zeros\": [[0, 1]]}";
    }
    c.spec_path = s.dir / "bad.json";
    CHECK(execute(c).code == kExitInputError);
}

TEST_CASE("non-convergence maps to exit code 3") {
    Scratch s;
    extremal::ExtremalProblem pr;
    pr.spec = power_spec(6);
    pr.p = 1.5;
    pr.xi = 0.4;
    pr.max_iterations = 1;
    pr.kkt_tol = 1e-15;
    RunConfig c;
    c.command = Command::extremal;
    c.problem_path = s.write("problem.json", json_io::to_json(pr));
    const Run r = execute(c);
    CHECK(r.code == kExitConvergence);
    CHECK(r.report["error"]["kind"] == "ConvergenceError");
}

TEST_CASE("extremal at p = 2 reproduces the kernel constant") {
    Scratch s;
    const HBSpec e4 = power_spec(4);
    RunConfig c;
    c.command = Command::extremal;
    c.spec_path = s.write("e4.json", json_io::to_json(e4));
    c.p = 2.0;
    c.xi = 0.0;
    c.csv_path = s.dir / "profile.csv";
    const Run r = execute(c);
    REQUIRE(r.code == kExitOk);
    const auto sol = json_io::parse_solution(r.report["results"]["solution"]);
    // K_0 has degree 2 for (z + i)^4, so the exact p = 2 constant is attained
    CHECK(sol.C_value == doctest::Approx(bounds::C2_exact(e4, 0.0)).epsilon(1e-10));
    CHECK(json_io::to_json(sol) == r.report["results"]["solution"]);
    CHECK(r.report["results"]["within_bound"] == true);
    CHECK(json_io::parse_problem(r.report["inputs"]["problem"]).xi == 0.0);
    CHECK(std::filesystem::file_size(*c.csv_path) > 1000);
}

TEST_CASE("separation on a Paley-Wiener kernel problem") {
    Scratch s;
    extremal::ExtremalProblem pr;
    pr.spec = HBSpec::paley_wiener(pi);
    pr.basis = extremal::BasisKind::kernel_nodes;
    for (int k = -8; k <= 8; ++k) pr.nodes.push_back(0.5 * k);
    pr.window = hormander::Window{-30.0, 30.0};
    RunConfig c;
    c.command = Command::separation;
    c.problem_path = s.write("pw.json", json_io::to_json(pr));
    const Run r = execute(c);
    REQUIRE(r.code == kExitOk);
    const auto sep = json_io::parse_separation_report(r.report["results"]["separation"]);
    CHECK(sep.passed);
    CHECK(sep.delta == doctest::Approx(0.25));
    CHECK(sep.min_gap > 0.5);
}

TEST_CASE("phase command lists interlacing zeros and reports are deterministic") {
    Scratch s;
    const HBSpec spec = HBSpec::from_zeros({{-1.5, -0.5}, {0.25, -1.0}, {2.0, -0.75}});
    RunConfig c;
    c.command = Command::phase;
    c.spec_path = s.write("e.json", json_io::to_json(spec));
    c.alpha = 0.4;
    c.xi = 0.1;
    c.out_path = s.dir / "report.json";
    std::ostringstream unused, log;
    REQUIRE(run(c, unused, log) == kExitOk);
    CHECK(unused.str().empty());
    json a = json_io::read_file(*c.out_path);
    const auto az = a["results"]["A_zeros"].get<std::vector<double>>();
    const auto bz = a["results"]["B_zeros"].get<std::vector<double>>();
    REQUIRE(az.size() + bz.size() >= 4);
    std::vector<std::pair<double, int>> merged;
    for (double x : az) merged.push_back({x, 0});
    for (double x : bz) merged.push_back({x, 1});
    std::sort(merged.begin(), merged.end());
    for (std::size_t i = 1; i < merged.size(); ++i) CHECK(merged[i].second != merged[i - 1].second);
    CHECK(a["results"]["at_xi"]["phase_derivative"].get<double>() > 0.0);

    REQUIRE(run(c, unused, log) == kExitOk);
    json b = json_io::read_file(*c.out_path);
    a.erase("wall_time_seconds");
    b.erase("wall_time_seconds");
    CHECK(a == b);
}
