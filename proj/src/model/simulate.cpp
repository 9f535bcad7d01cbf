#include "hydro/model/simulate.hpp"

#include <cmath>
#include <sstream>

#include "hydro/model/validate.hpp"
#include "hydro/units.hpp"

namespace hydro::model {

namespace {

double bound_tolerance(double bound) {
    return 1e-6 * std::max(1.0, std::abs(bound));
}

[[noreturn]] void raise(const std::string& what, int step, const std::string& variable,
                        double value, double bound) {
    std::ostringstream oss;
    oss << what << " at step " << step << ": " << variable << " = " << value
        << " violates bound " << bound;
    throw SimulationError(oss.str(), step, variable);
}

}  // namespace

EnergyReport evaluate_schedule(const CascadeSpec& spec,
                               const std::vector<std::vector<double>>& releases) {
    const auto diagnostics = validate(spec);
    if (!diagnostics.empty()) {
        throw std::invalid_argument("invalid cascade spec:\n" + format_diagnostics(diagnostics));
    }
    const int n_steps = spec.grid.step_count;
    const int n_res = static_cast<int>(spec.reservoirs.size());
    const int n_turb = static_cast<int>(spec.turbines.size());
    if (static_cast<int>(releases.size()) != n_turb) {
        throw std::invalid_argument("one release series per turbine required");
    }
    for (const auto& series : releases) {
        if (static_cast<int>(series.size()) != n_steps) {
            throw std::invalid_argument("release series length must equal step_count");
        }
    }

    auto reservoir_index = [&spec](const std::string& name) {
        for (size_t i = 0; i < spec.reservoirs.size(); ++i) {
            if (spec.reservoirs[i].name == name) return static_cast<int>(i);
        }
        return -1;
    };
    auto turbine_index = [&spec](const std::string& name) {
        for (size_t i = 0; i < spec.turbines.size(); ++i) {
            if (spec.turbines[i].name == name) return static_cast<int>(i);
        }
        return -1;
    };

    for (int t = 0; t < n_turb; ++t) {
        const auto& ts = spec.turbines[t];
        for (int j = 0; j < n_steps; ++j) {
            const double q = releases[t][j];
            if (q < ts.flow_bounds[0] - bound_tolerance(ts.flow_bounds[0]) ||
                q > ts.flow_bounds[1] + bound_tolerance(ts.flow_bounds[1])) {
                raise("release outside flow bounds", j + 1, "Q[" + ts.name + "]", q,
                      q < ts.flow_bounds[0] ? ts.flow_bounds[0] : ts.flow_bounds[1]);
            }
        }
    }

    std::vector<double> volume(n_res);
    for (int r = 0; r < n_res; ++r) {
        volume[r] = initial_volume(spec.reservoirs[r]);
    }

    EnergyReport report;
    report.step_power_w.assign(n_turb, std::vector<double>(n_steps, 0.0));
    report.step_level_m.assign(n_res, std::vector<double>(n_steps, 0.0));

    const double dt = spec.grid.step_seconds;
    std::vector<double> level(n_res);
    for (int j = 0; j < n_steps; ++j) {
        for (int r = 0; r < n_res; ++r) {
            const auto& rs = spec.reservoirs[r];
            double inflow = 0.0;
            if (rs.inflow.kind == Inflow::Kind::UpstreamTurbine) {
                inflow = releases[turbine_index(rs.inflow.turbine)][j];
            } else {
                inflow = rs.inflow.series.values[j];
            }
            double outflow = 0.0;
            for (int t = 0; t < n_turb; ++t) {
                if (reservoir_index(spec.turbines[t].upstream_reservoir) == r) {
                    outflow += releases[t][j];
                }
            }
            volume[r] += dt * (inflow - outflow);
            level[r] = rs.level_volume.level(volume[r]);
            if (level[r] < rs.level_bounds[0] - bound_tolerance(rs.level_bounds[0])) {
                raise("level below bound", j + 1, "H[" + rs.name + "]", level[r],
                      rs.level_bounds[0]);
            }
            if (level[r] > rs.level_bounds[1] + bound_tolerance(rs.level_bounds[1])) {
                raise("level above bound", j + 1, "H[" + rs.name + "]", level[r],
                      rs.level_bounds[1]);
            }
            report.step_level_m[r][j] = level[r];
        }
        for (int t = 0; t < n_turb; ++t) {
            const auto& ts = spec.turbines[t];
            const int up = reservoir_index(ts.upstream_reservoir);
            double h_down = ts.downstream.level;
            if (ts.downstream.kind == Downstream::Kind::Reservoir) {
                h_down = level[reservoir_index(ts.downstream.reservoir)];
            }
            const double dh = level[up] - h_down;
            const double q = releases[t][j];
            const double eta = ts.efficiency.value(q, volume[up], dh);
            const double power = units::g_rho * eta * q * dh;
            report.step_power_w[t][j] = power;
            report.total_energy_joules += power * dt;
        }
    }
    report.total_energy_wh = report.total_energy_joules / units::seconds_per_hour;
    return report;
}

}  // namespace hydro::model
