#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hydro/model/types.hpp"

namespace hydro::model {

class SimulationError : public std::runtime_error {
  public:
    SimulationError(std::string message, int step, std::string variable)
        : std::runtime_error(std::move(message)), step(step), variable(std::move(variable)) {}
    int step;
    std::string variable;
};

struct EnergyReport {
    // Powers in W, indexed [turbine][step]; levels in m, indexed [reservoir][step].
    std::vector<std::vector<double>> step_power_w;
    std::vector<std::vector<double>> step_level_m;
    double total_energy_joules = 0.0;
    double total_energy_wh = 0.0;
};

/**
 * Forward-simulates the cascade under the full nonlinear physics: mass balance
 * propagates volumes, levels come from the nonlinear level-volume relation, and
 * generation uses the full efficiency-weighted product of flow and head.
 * Power at step j uses the end-of-step state, matching the discretization of
 * the assembled program. Independent of the optimizer.
 *
 * releases are indexed [turbine][step] in m^3/s and must respect the flow
 * bounds; simulated levels must stay inside the level bounds (a small
 * tolerance absorbs accumulation roundoff). Violations raise SimulationError
 * naming the step and variable.
 */
EnergyReport evaluate_schedule(const CascadeSpec& spec,
                               const std::vector<std::vector<double>>& releases);

}  // namespace hydro::model
