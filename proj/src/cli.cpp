#include "debranges/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "debranges/acceptance.hpp"
#include "debranges/bounds.hpp"
#include "debranges/errors.hpp"
#include "debranges/extremal.hpp"
#include "debranges/json_io.hpp"

namespace dbr::cli {

namespace {

using json_io::json;
using json_io::number;

constexpr int kProfileSamples = 1025;

// Result of one command: the computed values and the verdict on them.
struct Outcome {
    json results = json::object();
    bool passed = true;
    std::string invariant;  // names the failed property when !passed
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

HBSpec load_spec(const RunConfig& config, json& inputs) {
    if (!config.spec_path) throw InputError("--spec is required for this command");
    const HBSpec spec = json_io::parse_spec(json_io::read_file(*config.spec_path));
    inputs["spec_path"] = config.spec_path->string();
    inputs["spec"] = json_io::to_json(spec);
    return spec;
}

// A window wide enough to show every feature of a polynomial-type phase.
hormander::Window default_window(const HBSpec& spec) {
    if (!spec.polynomial_type()) return {-10.0, 10.0};
    double reach = 5.0;
    double height = 0.0;
    for (const cplx& zn : spec.zeros) {
        reach = std::max(reach, std::abs(zn.real()) + 5.0);
        height = std::max(height, -zn.imag());
    }
    reach += 4.0 * height;
    return {-reach, reach};
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
    char buf[32];
    bool first = true;
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << (first ? "" : ",") << buf;
        first = false;
    }
    out << '\n';
}

double sample_point(const hormander::Window& w, int k) {
    if (k == kProfileSamples - 1) return w.hi;
    return w.lo + (w.hi - w.lo) * k / (kProfileSamples - 1);
}

std::optional<double> explicit_tolerance(const RunConfig& config) {
    if (config.tol) return config.tol;
    if (std::getenv(kToleranceEnv)) return resolve_tolerance(config);
    return std::nullopt;
}

Outcome run_phase(const RunConfig& config, json& inputs) {
    const HBSpec spec = load_spec(config, inputs);
    const hormander::Window window = config.window.value_or(default_window(spec));
    const double alpha = config.alpha.value_or(0.0);
    inputs["window"] = json_io::to_json(window);
    inputs["alpha"] = number(alpha);

    const PhaseProfile profile = PhaseProfile::anchored(spec);
    const auto [lim_lo, lim_hi] = phase_limits(profile);
    const PhaseSup sup = phase_derivative_sup(spec);

    Outcome o;
    o.results["anchor"] = {{"point", number(profile.anchor_point)}, {"value", number(profile.anchor_value)}};
    o.results["phase_limits"] = {number(lim_lo), number(lim_hi)};
    o.results["phase_derivative_sup"] = {
        {"value", number(sup.value)},
        {"argmax", sup.at_infinity() ? json(nullptr) : number(*sup.argmax)},
    };
    json a_zeros = json::array(), b_zeros = json::array();
    for (double x : level_crossings(profile, 2.0 * alpha + std::numbers::pi, window.lo, window.hi))
        a_zeros.push_back(number(x));
    for (double x : level_crossings(profile, 2.0 * alpha, window.lo, window.hi)) b_zeros.push_back(number(x));
    o.results["A_zeros"] = a_zeros;
    o.results["B_zeros"] = b_zeros;
    if (config.xi) {
        inputs["xi"] = number(*config.xi);
        o.results["at_xi"] = {
            {"phase", number(phase(profile, *config.xi))},
            {"phase_derivative", number(phase_derivative(spec, *config.xi))},
            {"alpha", number(hormander::alpha_at(spec, *config.xi))},
        };
    }

    // the phase must increase strictly; a non-positive derivative means a bad spec
    double min_derivative = std::numeric_limits<double>::infinity();
    std::optional<std::ofstream> csv;
    if (config.csv_path) {
        csv = open_csv(*config.csv_path);
        *csv << "x,phase,phase_derivative,A_over_E,B_over_E\n";
    }
    for (int k = 0; k < kProfileSamples; ++k) {
        const double x = sample_point(window, k);
        const double d = phase_derivative(spec, x);
        min_derivative = std::min(min_derivative, d);
        if (csv) {
            const auto [a, b] = eval_AB(spec, alpha, x);
            const double e = std::abs(eval_E(spec, cplx{x, 0.0}));
            write_row(*csv, {x, phase(profile, x), d, a / e, b / e});
        }
    }
    o.results["min_phase_derivative"] = number(min_derivative);
    if (!(min_derivative > 0.0)) {
        o.passed = false;
        o.invariant = "phase monotonicity";
        o.detail = fmt("phase derivative %.3e is not positive on the window", min_derivative);
    }
    return o;
}

Outcome run_verify(const RunConfig& config, json& inputs, double tol) {
    const HBSpec spec = load_spec(config, inputs);
    if (!config.f_path) throw InputError("--f is required for verify-hormander");
    const Entire f = json_io::parse_entire(json_io::read_file(*config.f_path));
    inputs["f_path"] = config.f_path->string();
    inputs["f"] = json_io::to_json(f);
    if (config.window) inputs["window"] = json_io::to_json(*config.window);

    const hormander::HormanderReport r = config.sign_free
                                             ? hormander::verify_sign_free(f, spec, tol, config.window)
                                             : hormander::verify_theorem1(f, spec, tol, config.window);
    if (config.csv_path) {
        std::ofstream csv = open_csv(*config.csv_path);
        hormander::write_margin_csv(r, csv);
    }
    Outcome o;
    o.results = json_io::to_json(r);
    if (!r.passed) {
        o.passed = false;
        o.invariant = "hormander margin";
        o.detail = fmt("min margin %.3e, equality gap %.3e", r.min_margin, r.equality_gap);
    }
    return o;
}

Outcome run_bounds(const RunConfig& config, json& inputs) {
    const HBSpec spec = load_spec(config, inputs);
    if (!config.p) throw InputError("--p is required for bounds");
    inputs["p"] = number(*config.p);
    const PhaseSup sup = phase_derivative_sup(spec);
    const bounds::BoundReport b = bounds::bound_report(*config.p, sup.value);

    Outcome o;
    o.results["bound"] = json_io::to_json(b);
    const bounds::C2Sup c2 = bounds::C2_sup(spec);
    o.results["C2_sup"] = {
        {"value", number(c2.value)},
        {"attained", c2.attained},
        {"argmax", c2.attained ? number(c2.argmax) : json(nullptr)},
    };
    if (config.xi) {
        inputs["xi"] = number(*config.xi);
        o.results["at_xi"] = {
            {"C2_exact", number(bounds::C2_exact(spec, *config.xi))},
            {"kernel_diagonal", number(bounds::kernel_diagonal(spec, *config.xi))},
        };
    }
    if (!b.wendel_chain_holds) {
        o.passed = false;
        o.invariant = "bound chain";
        o.detail = fmt("C^p = %.17g exceeds the non-asymptotic bound %.17g", std::pow(b.C_bound, b.p),
                       b.C_bound_nonasymptotic_pth_power);
    }
    return o;
}

extremal::ExtremalProblem load_problem(const RunConfig& config, json& inputs) {
    extremal::ExtremalProblem problem;
    if (config.problem_path) {
        problem = json_io::parse_problem(json_io::read_file(*config.problem_path));
        inputs["problem_path"] = config.problem_path->string();
        if (config.spec_path) problem.spec = load_spec(config, inputs);
    } else {
        problem.spec = load_spec(config, inputs);
    }
    if (config.p) problem.p = *config.p;
    if (config.xi) problem.xi = *config.xi;
    if (config.window) problem.window = *config.window;
    if (config.seed) {
        problem.random_start = true;
        problem.seed = *config.seed;
    }
    if (const auto tol = explicit_tolerance(config)) problem.kkt_tol = *tol;
    problem.validate();
    inputs["problem"] = json_io::to_json(problem);
    return problem;
}

void write_extremal_csv(const extremal::ExtremalSolution& s, const extremal::ExtremalProblem& problem,
                        const std::filesystem::path& path) {
    const hormander::Window w = problem.window.value_or(default_window(problem.spec));
    std::ofstream csv = open_csv(path);
    csv << "x,f_over_E,abs_pow_p\n";
    for (int k = 0; k < kProfileSamples; ++k) {
        const double x = sample_point(w, k);
        const double r = s.f(x) / std::abs(eval_E(problem.spec, cplx{x, 0.0}));
        write_row(csv, {x, r, std::pow(std::abs(r), problem.p)});
    }
}

Outcome run_extremal(const RunConfig& config, json& inputs) {
    const extremal::ExtremalProblem problem = load_problem(config, inputs);
    const extremal::ExtremalSolution s = extremal::solve(problem);
    if (config.csv_path) write_extremal_csv(s, problem, *config.csv_path);

    Outcome o;
    o.results["solution"] = json_io::to_json(s);
    const extremal::MeanTypeReport mt =
        extremal::mean_type_diagnostic([&](cplx z) { return s.f(z); }, problem.spec);
    o.results["mean_type"] = json_io::to_json(mt);
    const double bound = bounds::embedding_bound(problem.p, phase_derivative_sup(problem.spec).value);
    o.results["C_bound"] = number(bound);
    // a window-truncated norm may legitimately give a larger ratio
    const bool within = s.truncated || s.C_value <= bound * (1.0 + 1e-9);
    o.results["within_bound"] = within;
    if (!within) {
        o.passed = false;
        o.invariant = "extremal constant above bound";
        o.detail = fmt("C = %.17g exceeds the embedding bound %.17g", s.C_value, bound);
    }
    return o;
}

Outcome run_separation(const RunConfig& config, json& inputs) {
    const extremal::ExtremalProblem problem = load_problem(config, inputs);
    const extremal::ExtremalSolution s = extremal::solve(problem);
    if (config.csv_path) write_extremal_csv(s, problem, *config.csv_path);

    const extremal::SeparationReport r = extremal::separation_report(s, problem);
    Outcome o;
    o.results["C_value"] = number(s.C_value);
    o.results["zeros"] = json_io::to_json(s.zeros);
    o.results["separation"] = json_io::to_json(r);
    if (!r.passed) {
        o.passed = false;
        o.invariant = "zero separation";
        o.detail = fmt("minimum zero gap %.3e is not positive", r.min_gap);
    }
    return o;
}

Outcome run_selftest(const RunConfig& config, json& inputs, std::ostream& log) {
    const std::uint64_t seed = config.seed.value_or(1);
    inputs["seed"] = seed;
    Outcome o;
    json criteria = json::array();
    std::string failed;
    for (const acceptance::CriterionResult& r : acceptance::run_all(seed, &log)) {
        criteria.push_back({
            {"id", r.id},
            {"title", r.title},
            {"passed", r.passed},
            {"within_time", r.within_time},
            {"seconds", number(r.seconds)},
            {"time_limit", number(r.time_limit)},
            {"detail", r.detail},
        });
        if (!r.passed) failed += (failed.empty() ? "" : ", ") + std::to_string(r.id);
    }
    o.results["criteria"] = criteria;
    if (!failed.empty()) {
        o.passed = false;
        o.invariant = "acceptance";
        o.detail = "failed criteria: " + failed;
    }
    return o;
}

json error_entry(const char* kind, const std::string& message, const std::string& invariant = "") {
    json e = {{"kind", kind}, {"message", message}};
    if (!invariant.empty()) e["invariant"] = invariant;
    return e;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "phase") return Command::phase;
    if (name == "verify-hormander") return Command::verify_hormander;
    if (name == "bounds") return Command::bounds;
    if (name == "extremal") return Command::extremal;
    if (name == "separation") return Command::separation;
    if (name == "selftest") return Command::selftest;
    throw InputError("unknown command \"" + name + "\"");
}

std::string command_name(Command command) {
    switch (command) {
        case Command::phase: return "phase";
        case Command::verify_hormander: return "verify-hormander";
        case Command::bounds: return "bounds";
        case Command::extremal: return "extremal";
        case Command::separation: return "separation";
        case Command::selftest: return "selftest";
    }
    return "";
}

hormander::Window parse_window(const std::string& text) {
    std::istringstream in(text);
    hormander::Window w;
    char comma = 0;
    if (!(in >> w.lo >> comma >> w.hi) || comma != ',' || !(in >> std::ws).eof())
        throw InputError("--window expects LO,HI but got \"" + text + "\"");
    if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.lo < w.hi))
        throw InputError("--window needs finite LO < HI");
    return w;
}

double resolve_tolerance(const RunConfig& config) {
    double tol = kDefaultTolerance;
    if (config.tol) {
        tol = *config.tol;
    } else if (const char* env = std::getenv(kToleranceEnv)) {
        char* end = nullptr;
        tol = std::strtod(env, &end);
        if (end == env || *end != '\0')
            throw InputError(std::string(kToleranceEnv) + " is not a number: \"" + env + "\"");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tolerance must be positive and finite");
    return tol;
}

int run(const RunConfig& config, std::ostream& report, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    json doc = {{"command", command_name(config.command)}};
    json inputs = json::object();
    if (config.seed) inputs["seed"] = *config.seed;
    int code = kExitOk;
    try {
        const double tol = resolve_tolerance(config);
        doc["tolerances"] = {
            {"tol", number(tol)},
            {"source", config.tol ? "flag" : std::getenv(kToleranceEnv) ? "environment" : "default"},
        };
        Outcome o;
        switch (config.command) {
            case Command::phase: o = run_phase(config, inputs); break;
            case Command::verify_hormander: o = run_verify(config, inputs, tol); break;
            case Command::bounds: o = run_bounds(config, inputs); break;
            case Command::extremal: o = run_extremal(config, inputs); break;
            case Command::separation: o = run_separation(config, inputs); break;
            case Command::selftest: o = run_selftest(config, inputs, log); break;
        }
        doc["results"] = std::move(o.results);
        if (!o.passed) {
            code = kExitMathFailure;
            doc["error"] = error_entry("MathFailure", o.invariant + ": " + o.detail, o.invariant);
        }
    } catch (const MathFailure& e) {
        code = kExitMathFailure;
        doc["error"] = error_entry("MathFailure", e.what(), e.invariant());
    } catch (const BracketUnavailable& e) {
        code = kExitMathFailure;
        doc["error"] = error_entry("BracketUnavailable", e.what(), "bracket unavailable");
    } catch (const InputError& e) {
        code = kExitInputError;
        doc["error"] = error_entry("InputError", e.what());
    } catch (const BracketError& e) {
        code = kExitInputError;
        doc["error"] = error_entry("BracketError", e.what());
    } catch (const ConvergenceError& e) {
        code = kExitConvergence;
        doc["error"] = error_entry("ConvergenceError", e.what());
    }
    doc["inputs"] = std::move(inputs);
    doc["flags"] = {{"sign_free", config.sign_free}, {"csv", config.csv_path.has_value()}};
    doc["passed"] = code == kExitOk;
    doc["exit_code"] = code;
    doc["wall_time_seconds"] =
        number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    if (config.out_path) {
        try {
            json_io::write_file(doc, *config.out_path);
        } catch (const InputError& e) {
            log << "error: " << e.what() << '\n';
            return kExitInputError;
        }
    } else {
        report << doc.dump(2) << '\n';
    }
    if (doc.contains("error")) log << "error: " << doc["error"]["message"].get<std::string>() << '\n';
    return code;
}

}  // namespace dbr::cli
