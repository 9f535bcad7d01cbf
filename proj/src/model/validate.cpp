#include "hydro/model/validate.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hydro::model {

namespace {

std::string reservoir_field(size_t i, const std::string& member) {
    std::ostringstream oss;
    oss << "reservoirs[" << i << "]." << member;
    return oss.str();
}

std::string turbine_field(size_t i, const std::string& member) {
    std::ostringstream oss;
    oss << "turbines[" << i << "]." << member;
    return oss.str();
}

const ReservoirSpec* find_reservoir(const CascadeSpec& spec, const std::string& name) {
    for (const auto& r : spec.reservoirs) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

const TurbineSpec* find_turbine(const CascadeSpec& spec, const std::string& name) {
    for (const auto& t : spec.turbines) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

}  // namespace

Linearization effective_linearization(const CascadeSpec& spec, const TurbineSpec& turbine) {
    Linearization lin = turbine.linearization;
    const ReservoirSpec* up = find_reservoir(spec, turbine.upstream_reservoir);
    if (!lin.has_delta_h0()) {
        double h_down = turbine.downstream.level;
        if (turbine.downstream.kind == Downstream::Kind::Reservoir) {
            if (const ReservoirSpec* down = find_reservoir(spec, turbine.downstream.reservoir)) {
                h_down = down->initial_level;
            }
        }
        if (up) {
            lin.delta_h0 = up->initial_level - h_down;
        }
    }
    if (!lin.has_eta0()) {
        if (turbine.efficiency.kind() == EfficiencyModel::Kind::Constant) {
            lin.eta0 = turbine.efficiency.constant_value();
        } else if (up) {
            // Initial operating point: flow-box midpoint, initial volume,
            // default head difference.
            const double q0 = 0.5 * (turbine.flow_bounds[0] + turbine.flow_bounds[1]);
            const double v0 = initial_volume(*up);
            try {
                lin.eta0 = turbine.efficiency.value(q0, v0, lin.delta_h0);
            } catch (const EfficiencyRangeError&) {
                lin.eta0 = Linearization::kUnset;
            }
        }
    }
    return lin;
}

std::vector<Diagnostic> validate(const CascadeSpec& spec) {
    std::vector<Diagnostic> out;
    auto add = [&out](std::string field, std::string rule, std::string message) {
        out.push_back({std::move(field), std::move(rule), std::move(message)});
    };

    if (spec.grid.step_count < 1) {
        add("grid.step_count", "positive_step_count", "step_count must be >= 1");
    }
    if (!(spec.grid.step_seconds > 0.0)) {
        add("grid.step_seconds", "positive_step_seconds", "step_seconds must be > 0");
    }

    std::set<std::string> reservoir_names;
    for (size_t i = 0; i < spec.reservoirs.size(); ++i) {
        const auto& r = spec.reservoirs[i];
        if (r.name.empty()) {
            add(reservoir_field(i, "name"), "nonempty_name", "reservoir name must not be empty");
        }
        if (!reservoir_names.insert(r.name).second) {
            add(reservoir_field(i, "name"), "unique_name", "duplicate reservoir name " + r.name);
        }
        const double bottom = r.level_volume.bottom_level();
        if (r.level_bounds[0] < bottom) {
            std::ostringstream oss;
            oss << "lower level bound " << r.level_bounds[0] << " m below bottom level " << bottom
                << " m";
            add(reservoir_field(i, "level_bounds"), "min_above_bottom", oss.str());
        }
        if (!(r.level_bounds[0] < r.level_bounds[1])) {
            add(reservoir_field(i, "level_bounds"), "ordered_bounds",
                "level bounds must satisfy min < max");
        }
        if (r.initial_level < r.level_bounds[0] || r.initial_level > r.level_bounds[1]) {
            std::ostringstream oss;
            oss << "initial level " << r.initial_level << " m outside [" << r.level_bounds[0]
                << ", " << r.level_bounds[1] << "] m";
            add(reservoir_field(i, "initial_level"), "initial_level_within_bounds", oss.str());
        }
        if (r.level_volume.kind() == LevelVolumeRelation::Kind::Linear &&
            !(r.level_volume.area() > 0.0)) {
            add(reservoir_field(i, "level_volume.area"), "positive_area", "area must be > 0");
        }
        if (r.level_volume.kind() == LevelVolumeRelation::Kind::ConcavePower) {
            if (!(r.level_volume.coefficient() > 0.0)) {
                add(reservoir_field(i, "level_volume.coefficient"), "positive_coefficient",
                    "coefficient must be > 0");
            }
            const double p = r.level_volume.exponent();
            if (!(p > 0.0 && p <= 1.0)) {
                add(reservoir_field(i, "level_volume.exponent"), "exponent_in_unit_interval",
                    "exponent must lie in (0, 1]");
            }
            if (p < 1.0 && !(r.initial_level > bottom)) {
                add(reservoir_field(i, "initial_level"), "tangent_defined",
                    "initial level must exceed the bottom level for a concave power relation");
            }
        }
        if (r.inflow.kind == Inflow::Kind::UpstreamTurbine) {
            const TurbineSpec* t = find_turbine(spec, r.inflow.turbine);
            if (!t) {
                add(reservoir_field(i, "inflow.turbine"), "reference_exists",
                    "inflow references unknown turbine " + r.inflow.turbine);
            } else if (t->downstream.kind != Downstream::Kind::Reservoir ||
                       t->downstream.reservoir != r.name) {
                add(reservoir_field(i, "inflow.turbine"), "consistent_link",
                    "turbine " + r.inflow.turbine + " does not discharge into " + r.name);
            }
        }
    }

    std::set<std::string> turbine_names;
    for (size_t i = 0; i < spec.turbines.size(); ++i) {
        const auto& t = spec.turbines[i];
        if (t.name.empty()) {
            add(turbine_field(i, "name"), "nonempty_name", "turbine name must not be empty");
        }
        if (!turbine_names.insert(t.name).second) {
            add(turbine_field(i, "name"), "unique_name", "duplicate turbine name " + t.name);
        }
        if (!find_reservoir(spec, t.upstream_reservoir)) {
            add(turbine_field(i, "upstream_reservoir"), "reference_exists",
                "upstream reservoir " + t.upstream_reservoir + " does not exist");
        }
        if (t.downstream.kind == Downstream::Kind::Reservoir) {
            const ReservoirSpec* down = find_reservoir(spec, t.downstream.reservoir);
            if (!down) {
                add(turbine_field(i, "downstream.reservoir"), "reference_exists",
                    "downstream reservoir " + t.downstream.reservoir + " does not exist");
            } else if (down->inflow.kind != Inflow::Kind::UpstreamTurbine ||
                       down->inflow.turbine != t.name) {
                add(turbine_field(i, "downstream.reservoir"), "consistent_link",
                    "reservoir " + t.downstream.reservoir + " does not list " + t.name +
                        " as its inflow");
            }
        }
        if (t.flow_bounds[0] != 0.0) {
            add(turbine_field(i, "flow_bounds"), "zero_lower_flow_bound",
                "flow bounds must start at 0");
        }
        if (!(t.flow_bounds[1] > 0.0)) {
            add(turbine_field(i, "flow_bounds"), "positive_max_flow", "Q_max must be > 0");
        }
        if (t.power_bounds[0] != 0.0) {
            add(turbine_field(i, "power_bounds"), "zero_lower_power_bound",
                "power bounds must start at 0");
        }
        if (!(t.power_bounds[1] > 0.0)) {
            add(turbine_field(i, "power_bounds"), "positive_max_power", "P_max must be > 0");
        }
        if (t.efficiency.kind() == EfficiencyModel::Kind::Constant) {
            const double eta = t.efficiency.constant_value();
            if (!(eta > 0.0 && eta <= 1.0)) {
                add(turbine_field(i, "efficiency"), "eta_in_unit_interval",
                    "constant efficiency must lie in (0, 1]");
            }
        }
        const Linearization lin = effective_linearization(spec, t);
        if (!(lin.delta_h0 > 0.0)) {
            add(turbine_field(i, "linearization.delta_h0"), "positive_delta_h0",
                "linearization head difference must be > 0");
        }
        if (!(lin.eta0 > 0.0)) {
            add(turbine_field(i, "linearization.eta0"), "positive_eta0",
                "linearization efficiency must be > 0");
        }
    }

    // Cycle detection on the reservoir graph induced by turbine edges.
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& t : spec.turbines) {
        if (t.downstream.kind == Downstream::Kind::Reservoir) {
            edges[t.upstream_reservoir].push_back(t.downstream.reservoir);
        }
    }
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    bool cycle = false;
    std::string cycle_node;
    std::function<void(const std::string&)> dfs = [&](const std::string& node) {
        state[node] = 1;
        auto it = edges.find(node);
        if (it != edges.end()) {
            for (const auto& next : it->second) {
                if (cycle) return;
                if (state[next] == 1) {
                    cycle = true;
                    cycle_node = next;
                    return;
                }
                if (state[next] == 0) dfs(next);
            }
        }
        state[node] = 2;
    };
    for (const auto& r : spec.reservoirs) {
        if (!cycle && state[r.name] == 0) dfs(r.name);
    }
    if (cycle) {
        add("turbines", "acyclic_topology", "topology contains a cycle through " + cycle_node);
    }

    return out;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::ostringstream oss;
    for (const auto& d : diagnostics) {
        oss << d.field << " [" << d.rule << "]: " << d.message << "\n";
    }
    return oss.str();
}

}  // namespace hydro::model
