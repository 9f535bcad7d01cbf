#pragma once

#include "hydro/io/config.hpp"
#include "hydro/io/outputs.hpp"

namespace hydro::io {

// Exit codes of the pipeline (and the CLI).
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitIoError = 1;       // unreadable/invalid input, write failures
inline constexpr int kExitPathFailure = 2;   // continuation did not reach theta = 1
inline constexpr int kExitStructural = 3;    // structural checks failed; nothing solved

struct RunResult {
    int exit_code = kExitSuccess;
    structural::StructuralReport report;
    continuation::SolutionPath path;
    ComparisonReport comparison;
    bool comparison_valid = false;
};

// Full pipeline: parse + validate + assemble, structural checks, continuation,
// artifact emission (path.csv, structural_report.json, comparison.txt).
RunResult run(const RunConfig& config);

}  // namespace hydro::io
