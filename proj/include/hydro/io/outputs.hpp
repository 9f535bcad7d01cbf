#pragma once

#include <string>

#include "hydro/continuation/path.hpp"
#include "hydro/model/assemble.hpp"
#include "hydro/structural/report.hpp"

namespace hydro::io {

// path.csv: header `theta,time_step,variable,value`, rows ordered by theta
// ascending, then timestep, then variable index; values printed with 17
// significant digits so a parse/re-emit round trip is byte identical.
std::string path_csv(const continuation::SolutionPath& path, const model::CascadeNlp& nlp);

std::string structural_report_json(const structural::StructuralReport& report);

struct ComparisonReport {
    double energy_linear_schedule_mwh = 0.0;     // theta = 0 releases, nonlinear physics
    double energy_nonlinear_schedule_mwh = 0.0;  // theta = 1 releases, same scoring
    double absolute_gain_mwh = 0.0;
    double relative_gain_percent = 0.0;
    double wall_time_ms = 0.0;  // diagnostic only, never serialized
};

// Scores both endpoint schedules with the forward simulator under the full
// nonlinear physics. The path must contain theta = 0 and theta = 1 entries.
ComparisonReport compare_schedules(const model::CascadeSpec& spec,
                                   const continuation::SolutionPath& path);

std::string comparison_txt(const ComparisonReport& report);

// Printf-style %.17g, the round-trip-exact format used by every emitter.
std::string format_value(double value);

void write_file(const std::string& path, const std::string& contents);

}  // namespace hydro::io
