#include "hydro/io/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hydro::io {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) {
        throw ConfigError(where + " is missing \"" + key + "\"");
    }
    if (!obj[key].is_number()) {
        throw ConfigError(where + "." + key + " must be a number");
    }
    return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        throw ConfigError(where + " needs string \"" + key + "\"");
    }
    return obj[key].get<std::string>();
}

std::array<double, 2> get_pair(const json& obj, const std::string& where,
                               const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 2) {
        throw ConfigError(where + "." + key + " must be a [min, max] pair");
    }
    return {obj[key][0].get<double>(), obj[key][1].get<double>()};
}

model::LevelVolumeRelation parse_level_volume(const json& obj, const std::string& where) {
    const std::string type = get_string(obj, where, "type");
    if (type == "linear") {
        require_keys(obj, where, {"type", "area", "bottom_level"});
        return model::LevelVolumeRelation::linear(get_number(obj, where, "area"),
                                                  get_number(obj, where, "bottom_level"));
    }
    if (type == "concave_power") {
        require_keys(obj, where, {"type", "coefficient", "exponent", "bottom_level"});
        return model::LevelVolumeRelation::concave_power(
            get_number(obj, where, "coefficient"), get_number(obj, where, "exponent"),
            get_number(obj, where, "bottom_level"));
    }
    throw ConfigError(where + ".type must be \"linear\" or \"concave_power\"");
}

model::EfficiencyModel parse_efficiency(const json& obj, const std::string& where) {
    const std::string type = get_string(obj, where, "type");
    if (type == "constant") {
        require_keys(obj, where, {"type", "value"});
        return model::EfficiencyModel::constant(get_number(obj, where, "value"));
    }
    if (type == "smooth_polynomial") {
        require_keys(obj, where, {"type", "coefficients"});
        if (!obj.contains("coefficients")) {
            throw ConfigError(where + " needs \"coefficients\"");
        }
        static const std::array<const char*, model::EfficiencyModel::kNumCoefficients> names = {
            "const", "q", "v", "dh", "qq", "qv", "qdh", "vv", "vdh", "dhdh"};
        const json& c = obj["coefficients"];
        require_keys(c, where + ".coefficients",
                     std::set<std::string>(names.begin(), names.end()));
        std::array<double, model::EfficiencyModel::kNumCoefficients> coeffs{};
        for (size_t i = 0; i < names.size(); ++i) {
            if (c.contains(names[i])) {
                coeffs[i] = c[names[i]].get<double>();
            }
        }
        return model::EfficiencyModel::smooth_polynomial(coeffs);
    }
    throw ConfigError(where + ".type must be \"constant\" or \"smooth_polynomial\"");
}

}  // namespace

model::CascadeSpec parse_cascade_spec(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    require_keys(root, "config", {"grid", "reservoirs", "turbines", "objective"});

    model::CascadeSpec spec;
    if (!root.contains("grid")) throw ConfigError("config is missing \"grid\"");
    require_keys(root["grid"], "grid", {"step_count", "step_seconds"});
    spec.grid.step_count = static_cast<int>(get_number(root["grid"], "grid", "step_count"));
    spec.grid.step_seconds = get_number(root["grid"], "grid", "step_seconds");

    if (!root.contains("reservoirs") || !root["reservoirs"].is_array()) {
        throw ConfigError("config needs a \"reservoirs\" array");
    }
    size_t index = 0;
    for (const auto& r : root["reservoirs"]) {
        std::ostringstream oss;
        oss << "reservoirs[" << index++ << "]";
        const std::string where = oss.str();
        require_keys(r, where, {"name", "level_volume", "initial_level", "level_bounds",
                                "inflow"});
        model::ReservoirSpec rs;
        rs.name = get_string(r, where, "name");
        if (!r.contains("level_volume")) throw ConfigError(where + " needs \"level_volume\"");
        rs.level_volume = parse_level_volume(r["level_volume"], where + ".level_volume");
        rs.initial_level = get_number(r, where, "initial_level");
        rs.level_bounds = get_pair(r, where, "level_bounds");
        if (!r.contains("inflow")) throw ConfigError(where + " needs \"inflow\"");
        const json& inflow = r["inflow"];
        const std::string type = get_string(inflow, where + ".inflow", "type");
        if (type == "series") {
            require_keys(inflow, where + ".inflow", {"type", "values"});
            if (!inflow.contains("values") || !inflow["values"].is_array()) {
                throw ConfigError(where + ".inflow needs a \"values\" array");
            }
            rs.inflow.kind = model::Inflow::Kind::Series;
            for (const auto& v : inflow["values"]) {
                rs.inflow.series.values.push_back(v.get<double>());
            }
        } else if (type == "turbine") {
            require_keys(inflow, where + ".inflow", {"type", "turbine"});
            rs.inflow.kind = model::Inflow::Kind::UpstreamTurbine;
            rs.inflow.turbine = get_string(inflow, where + ".inflow", "turbine");
        } else {
            throw ConfigError(where + ".inflow.type must be \"series\" or \"turbine\"");
        }
        spec.reservoirs.push_back(std::move(rs));
    }

    if (!root.contains("turbines") || !root["turbines"].is_array()) {
        throw ConfigError("config needs a \"turbines\" array");
    }
    index = 0;
    for (const auto& t : root["turbines"]) {
        std::ostringstream oss;
        oss << "turbines[" << index++ << "]";
        const std::string where = oss.str();
        require_keys(t, where, {"name", "upstream_reservoir", "downstream", "efficiency",
                                "flow_bounds", "power_bounds", "linearization"});
        model::TurbineSpec ts;
        ts.name = get_string(t, where, "name");
        ts.upstream_reservoir = get_string(t, where, "upstream_reservoir");
        if (!t.contains("downstream")) throw ConfigError(where + " needs \"downstream\"");
        const json& down = t["downstream"];
        const std::string type = get_string(down, where + ".downstream", "type");
        if (type == "reservoir") {
            require_keys(down, where + ".downstream", {"type", "reservoir"});
            ts.downstream.kind = model::Downstream::Kind::Reservoir;
            ts.downstream.reservoir = get_string(down, where + ".downstream", "reservoir");
        } else if (type == "fixed_tailwater") {
            require_keys(down, where + ".downstream", {"type", "level"});
            ts.downstream.kind = model::Downstream::Kind::FixedTailwater;
            ts.downstream.level = get_number(down, where + ".downstream", "level");
        } else {
            throw ConfigError(where +
                              ".downstream.type must be \"reservoir\" or \"fixed_tailwater\"");
        }
        if (!t.contains("efficiency")) throw ConfigError(where + " needs \"efficiency\"");
        ts.efficiency = parse_efficiency(t["efficiency"], where + ".efficiency");
        ts.flow_bounds = get_pair(t, where, "flow_bounds");
        ts.power_bounds = get_pair(t, where, "power_bounds");
        if (t.contains("linearization")) {
            const json& lin = t["linearization"];
            require_keys(lin, where + ".linearization", {"eta0", "delta_h0"});
            if (lin.contains("eta0")) ts.linearization.eta0 = lin["eta0"].get<double>();
            if (lin.contains("delta_h0")) {
                ts.linearization.delta_h0 = lin["delta_h0"].get<double>();
            }
        }
        spec.turbines.push_back(std::move(ts));
    }

    const std::string objective = get_string(root, "config", "objective");
    if (objective != "maximize_total_generation") {
        throw ConfigError("objective must be \"maximize_total_generation\"");
    }
    spec.objective = model::Objective::MaximizeTotalGeneration;
    return spec;
}

model::CascadeSpec load_cascade_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open spec file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_cascade_spec(buffer.str());
}

std::string cascade_spec_to_json(const model::CascadeSpec& spec) {
    json root;
    root["grid"] = {{"step_count", spec.grid.step_count},
                    {"step_seconds", spec.grid.step_seconds}};
    root["objective"] = "maximize_total_generation";
    root["reservoirs"] = json::array();
    for (const auto& r : spec.reservoirs) {
        json obj;
        obj["name"] = r.name;
        if (r.level_volume.kind() == model::LevelVolumeRelation::Kind::Linear) {
            obj["level_volume"] = {{"type", "linear"},
                                   {"area", r.level_volume.area()},
                                   {"bottom_level", r.level_volume.bottom_level()}};
        } else {
            obj["level_volume"] = {{"type", "concave_power"},
                                   {"coefficient", r.level_volume.coefficient()},
                                   {"exponent", r.level_volume.exponent()},
                                   {"bottom_level", r.level_volume.bottom_level()}};
        }
        obj["initial_level"] = r.initial_level;
        obj["level_bounds"] = {r.level_bounds[0], r.level_bounds[1]};
        if (r.inflow.kind == model::Inflow::Kind::Series) {
            obj["inflow"] = {{"type", "series"}, {"values", r.inflow.series.values}};
        } else {
            obj["inflow"] = {{"type", "turbine"}, {"turbine", r.inflow.turbine}};
        }
        root["reservoirs"].push_back(std::move(obj));
    }
    root["turbines"] = json::array();
    for (const auto& t : spec.turbines) {
        json obj;
        obj["name"] = t.name;
        obj["upstream_reservoir"] = t.upstream_reservoir;
        if (t.downstream.kind == model::Downstream::Kind::Reservoir) {
            obj["downstream"] = {{"type", "reservoir"}, {"reservoir", t.downstream.reservoir}};
        } else {
            obj["downstream"] = {{"type", "fixed_tailwater"}, {"level", t.downstream.level}};
        }
        if (t.efficiency.kind() == model::EfficiencyModel::Kind::Constant) {
            obj["efficiency"] = {{"type", "constant"},
                                 {"value", t.efficiency.constant_value()}};
        } else {
            static const std::array<const char*, model::EfficiencyModel::kNumCoefficients>
                names = {"const", "q", "v", "dh", "qq", "qv", "qdh", "vv", "vdh", "dhdh"};
            json coeffs;
            for (size_t i = 0; i < names.size(); ++i) {
                coeffs[names[i]] = t.efficiency.coefficients()[i];
            }
            obj["efficiency"] = {{"type", "smooth_polynomial"}, {"coefficients", coeffs}};
        }
        obj["flow_bounds"] = {t.flow_bounds[0], t.flow_bounds[1]};
        obj["power_bounds"] = {t.power_bounds[0], t.power_bounds[1]};
        json lin;
        if (t.linearization.has_eta0()) lin["eta0"] = t.linearization.eta0;
        if (t.linearization.has_delta_h0()) lin["delta_h0"] = t.linearization.delta_h0;
        if (!lin.empty()) obj["linearization"] = lin;
        root["turbines"].push_back(std::move(obj));
    }
    return root.dump(2) + "\n";
}

}  // namespace hydro::io
