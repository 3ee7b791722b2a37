#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace dbr::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    bool within_time = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;  // worst observed quantities
};

/// Number of acceptance criteria.
inline constexpr int kCriteria = 12;

/// Runs every criterion in order; criteria 9, 10 and 12 share the extremal
/// solves. When `progress` is set each result line is written as soon as it
/// is known.
std::vector<CriterionResult> run_all(std::uint64_t seed = 1, std::ostream* progress = nullptr);

/// Runs a single criterion (1-based id).
CriterionResult run_criterion(int id, std::uint64_t seed = 1);

/// "[PASS] 4 Hormander classic (1.23 s / 10 s): detail".
std::string format_line(const CriterionResult& result);

}  // namespace dbr::acceptance
