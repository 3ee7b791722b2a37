#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "debranges/bounds.hpp"
#include "debranges/entire.hpp"
#include "debranges/extremal.hpp"
#include "debranges/hb_core.hpp"
#include "debranges/hormander.hpp"

/// JSON schema for specs, test functions, problems and reports.
///
/// Doubles are written in the shortest form that parses back to the same
/// value. Non-finite values are written as the strings "inf", "-inf" and
/// "nan". Every parse error surfaces as InputError.
namespace dbr::json_io {

using nlohmann::json;

json number(double x);
double read_number(const json& j, const char* key);

/// {"exp_rate", "zeros": [[re, im], ...], "rotation", "scale"}; missing keys take
/// the defaults of HBSpec. The parsed spec is validated.
json to_json(const HBSpec& spec);
HBSpec parse_spec(const json& j);

/// Tagged tree with "kind" in {rotation_real_part, kernel, polynomial, combination, product}.
json to_json(const Entire& f);
Entire parse_entire(const json& j);

json to_json(const hormander::Window& w);
hormander::Window parse_window(const json& j);

json to_json(const extremal::ExtremalProblem& problem);
extremal::ExtremalProblem parse_problem(const json& j);

json to_json(const bounds::BoundReport& report);
bounds::BoundReport parse_bound_report(const json& j);

json to_json(const hormander::LocalExpansion& local);
hormander::LocalExpansion parse_local_expansion(const json& j);

/// The margin profile is left to the CSV export.
json to_json(const hormander::HormanderReport& report);
hormander::HormanderReport parse_hormander_report(const json& j);

json to_json(const extremal::ExtremalFunction& f);
extremal::ExtremalFunction parse_extremal_function(const json& j);

json to_json(const extremal::ZeroSet& zeros);
extremal::ZeroSet parse_zero_set(const json& j);

json to_json(const extremal::ExtremalSolution& solution);
extremal::ExtremalSolution parse_solution(const json& j);

json to_json(const extremal::SeparationReport& report);
extremal::SeparationReport parse_separation_report(const json& j);

json to_json(const extremal::MeanTypeReport& report);
extremal::MeanTypeReport parse_mean_type_report(const json& j);

/// Reads and parses a JSON document; throws InputError on I/O or syntax errors.
json read_file(const std::filesystem::path& path);
/// Writes `j` indented by two spaces; throws InputError when the file cannot be written.
void write_file(const json& j, const std::filesystem::path& path);

}  // namespace dbr::json_io
