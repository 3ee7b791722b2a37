#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "debranges/cli.hpp"
#include "debranges/errors.hpp"

/// Command-line front end: one subcommand per analysis, a JSON report on
/// stdout (or --out) and optional CSV profiles.
int main(int argc, char** argv) {
    CLI::App app{"de Branges space toolkit: phase, Hormander inequality, embedding bounds, extremal problems"};
    app.require_subcommand(1);

    std::string spec, f, problem, out, csv, window;
    double p = 0.0, xi = 0.0, alpha = 0.0, tol = 0.0;
    std::uint64_t seed = 0;
    bool sign_free = false;

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"phase", "phase profile, limits and A/B zeros of a spec"},
        {"verify-hormander", "check the Hormander-type inequality for a test function"},
        {"bounds", "embedding bounds and the p = 2 constants of a spec"},
        {"extremal", "solve the point-evaluation extremal problem"},
        {"separation", "zero separation of the extremal function"},
        {"selftest", "run the acceptance suite"},
    };
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        cmd->add_option("--spec", spec, "HB spec JSON")->check(CLI::ExistingFile);
        cmd->add_option("--f", f, "test function JSON")->check(CLI::ExistingFile);
        cmd->add_option("--problem", problem, "extremal problem JSON")->check(CLI::ExistingFile);
        cmd->add_option("--p", p, "exponent");
        cmd->add_option("--xi", xi, "evaluation point");
        cmd->add_option("--alpha", alpha, "rotation angle for A/B zeros");
        cmd->add_option("--window", window, "search or norm window LO,HI");
        cmd->add_option("--out", out, "report path (default stdout)");
        cmd->add_option("--csv", csv, "profile CSV path");
        cmd->add_option("--tol", tol, "tolerance (default $DEBRANGES_TOL or 1e-9)");
        cmd->add_option("--seed", seed, "seed for randomized starts and suites");
        cmd->add_flag("--sign-free", sign_free, "verify |f| on the A-zero bracket");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dbr::cli::kExitInputError;
    }

    dbr::cli::RunConfig config;
    try {
        CLI::App* cmd = app.get_subcommands().front();
        config.command = dbr::cli::parse_command(cmd->get_name());
        auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
        if (given("--spec")) config.spec_path = spec;
        if (given("--f")) config.f_path = f;
        if (given("--problem")) config.problem_path = problem;
        if (given("--out")) config.out_path = out;
        if (given("--csv")) config.csv_path = csv;
        if (given("--p")) config.p = p;
        if (given("--xi")) config.xi = xi;
        if (given("--alpha")) config.alpha = alpha;
        if (given("--tol")) config.tol = tol;
        if (given("--seed")) config.seed = seed;
        if (given("--window")) config.window = dbr::cli::parse_window(window);
        config.sign_free = sign_free;
    } catch (const dbr::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dbr::cli::kExitInputError;
    }
    return dbr::cli::run(config, std::cout, std::cerr);
}
