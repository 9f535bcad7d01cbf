#pragma once

#include <string>
#include <vector>

#include "hydro/model/types.hpp"

namespace hydro::model {

struct Diagnostic {
    std::string field;    // offending field, e.g. "reservoirs[0].initial_level"
    std::string rule;     // violated rule, e.g. "initial_level_within_bounds"
    std::string message;  // human-readable detail
};

// Returns an empty list iff the spec satisfies all type invariants.
std::vector<Diagnostic> validate(const CascadeSpec& spec);

// Effective linearization constants after applying the documented defaults.
Linearization effective_linearization(const CascadeSpec& spec, const TurbineSpec& turbine);

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

}  // namespace hydro::model
