#pragma once

// Acceptance battery: each criterion runs end to end against independent
// oracles and reports pass/fail with a one-line detail.

#include "colorpart/real.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace colorpart::selfcheck {

struct Options {
    std::uint64_t seed = 0;
    Precision precision{};
};

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
    double time_limit_seconds;
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion (1-based id).
CriterionResult run_criterion(int id, const Options& options);

/// Runs the listed criteria, or all of them when `ids` is empty.
std::vector<CriterionResult> run_all(std::span<const int> ids, const Options& options);

/// TAP version 13 stream, one `ok` / `not ok` line per criterion.
void write_tap(std::ostream& out, std::span<const CriterionResult> results);

}  // namespace colorpart::selfcheck
