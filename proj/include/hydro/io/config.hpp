#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "hydro/continuation/path.hpp"
#include "hydro/model/types.hpp"
#include "hydro/solver/barrier_solver.hpp"

namespace hydro::io {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Strict parser for the cascade JSON document; unknown keys are rejected.
model::CascadeSpec parse_cascade_spec(const std::string& json_text);
model::CascadeSpec load_cascade_spec(const std::string& path);

std::string cascade_spec_to_json(const model::CascadeSpec& spec);

struct EmitFlags {
    bool path_csv = true;
    bool report_json = true;
    bool comparison_txt = true;
};

struct RunConfig {
    std::string spec_path;
    std::string output_dir;
    solver::SolverOptions solver;
    continuation::ContinuationSchedule schedule;
    EmitFlags emit;
    bool check_only = false;
    bool quiet = false;
    int structural_samples = 5;
    // Diagnostic hook: force bounds onto named variables after assembly
    // (exercises the BND failure path; not part of the cascade schema).
    std::map<std::string, std::array<double, 2>> bound_overrides;
};

}  // namespace hydro::io
