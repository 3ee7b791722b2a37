#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "debranges/hormander.hpp"

/// Command dispatch behind the `debranges` executable.
namespace dbr::cli {

enum class Command { phase, verify_hormander, bounds, extremal, separation, selftest };

/// Exit codes of a run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitConvergence = 3;

/// Environment variable holding the default tolerance.
inline constexpr const char* kToleranceEnv = "DEBRANGES_TOL";
inline constexpr double kDefaultTolerance = 1e-9;

struct RunConfig {
    Command command = Command::selftest;
    std::optional<std::filesystem::path> spec_path;     // HB spec JSON
    std::optional<std::filesystem::path> f_path;        // test function JSON (verify-hormander)
    std::optional<std::filesystem::path> problem_path;  // extremal problem JSON
    std::optional<std::filesystem::path> out_path;      // report destination, stdout when empty
    std::optional<std::filesystem::path> csv_path;      // profile destination
    std::optional<double> p;
    std::optional<double> xi;
    std::optional<double> alpha;
    std::optional<hormander::Window> window;
    std::optional<double> tol;  // overrides the environment default
    std::optional<std::uint64_t> seed;
    bool sign_free = false;  // verify-hormander: compare |f| on the A-zero bracket
};

/// Parses a command name ("verify-hormander", ...); throws InputError.
Command parse_command(const std::string& name);
std::string command_name(Command command);

/// Parses "LO,HI"; throws InputError unless both are finite and LO < HI.
hormander::Window parse_window(const std::string& text);

/// --tol when set, else DEBRANGES_TOL when set, else kDefaultTolerance.
/// Throws InputError for a non-positive or unparsable value.
double resolve_tolerance(const RunConfig& config);

/// Executes the command, writes the JSON report to `out_path` (or `report`
/// when no path is set) and returns the exit code. Errors are caught,
/// recorded in the report and mapped to the exit codes above. Acceptance
/// progress lines of `selftest` go to `log`.
int run(const RunConfig& config, std::ostream& report, std::ostream& log);

}  // namespace dbr::cli
