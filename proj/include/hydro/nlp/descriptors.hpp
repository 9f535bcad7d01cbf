#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hydro::nlp {

// Proper variables carry box bounds and enter every constraint affinely;
// redundant variables are unbounded and absorb all nonlinearity.
enum class VariableKind { Proper, Redundant };

struct VariableDescriptor {
    int index = 0;
    VariableKind kind = VariableKind::Proper;
    std::optional<double> lower;
    std::optional<double> upper;
    std::string name;
    // 1-based timestep for time-indexed problems, -1 for static problems.
    int time_step = -1;
    // Initializer value for variables without bounds (forward-propagated
    // by the assembler); ignored for box-bounded variables.
    std::optional<double> initial_hint;

    bool bounded() const { return lower.has_value() || upper.has_value(); }
};

enum class ConstraintFamily {
    Power,           // c1: generation blend
    LevelVolume,     // c2: level-volume blend
    MassBalance,     // c3: storage dynamics
    HeadDifference,  // c4
    FlowAlias,       // c5
    General,
};

struct ConstraintDescriptor {
    int index = 0;
    ConstraintFamily family = ConstraintFamily::General;
    std::string name;
    int time_step = -1;
};

const char* to_string(ConstraintFamily family);

}  // namespace hydro::nlp
