#include "hydro/io/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hydro/model/simulate.hpp"
#include "hydro/units.hpp"

namespace hydro::io {

std::string format_value(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string path_csv(const continuation::SolutionPath& path, const model::CascadeNlp& nlp) {
    std::string out = "theta,time_step,variable,value\n";
    const auto& vars = nlp.variables();
    for (const auto& entry : path.entries) {
        const std::string theta = format_value(entry.theta);
        for (const auto& var : vars) {
            out += theta;
            out += ',';
            out += std::to_string(var.time_step);
            out += ',';
            out += var.name;
            out += ',';
            out += format_value(entry.solution.x[var.index]);
            out += '\n';
        }
    }
    return out;
}

std::string structural_report_json(const structural::StructuralReport& report) {
    nlohmann::json root;
    root["bnd_ok"] = report.bnd_ok;
    root["lin_ok"] = report.lin_ok;
    root["ind_ok"] = report.ind_ok;
    root["zero_convex_ok"] = report.zero_convex_ok;
    root["lemma1_independence_ok"] = report.lemma1_independence_ok;
    root["lemma1_span_ok"] = report.lemma1_span_ok;
    root["lemma2_block_ok"] = report.lemma2_block_ok;
    root["all_ok"] = report.all_ok();
    root["details"] = nlohmann::json::array();
    for (const auto& detail : report.details) {
        nlohmann::json d;
        d["check"] = detail.check;
        d["pass"] = detail.pass;
        d["info"] = detail.info;
        for (const auto& [key, value] : detail.data) {
            d["data"][key] = value;
        }
        root["details"].push_back(std::move(d));
    }
    return root.dump(2) + "\n";
}

ComparisonReport compare_schedules(const model::CascadeSpec& spec,
                                   const continuation::SolutionPath& path) {
    if (path.entries.empty() || path.entries.front().theta != 0.0 ||
        path.entries.back().theta != 1.0) {
        throw std::invalid_argument(
            "compare_schedules needs a path with theta = 0 and theta = 1 entries");
    }
    const model::CascadeNlp nlp(spec);
    const auto linear_releases = nlp.extract_releases(path.entries.front().solution.x);
    const auto nonlinear_releases = nlp.extract_releases(path.entries.back().solution.x);

    const auto linear = model::evaluate_schedule(spec, linear_releases);
    const auto nonlinear = model::evaluate_schedule(spec, nonlinear_releases);

    ComparisonReport report;
    report.energy_linear_schedule_mwh = linear.total_energy_joules / units::joules_per_mwh;
    report.energy_nonlinear_schedule_mwh =
        nonlinear.total_energy_joules / units::joules_per_mwh;
    report.absolute_gain_mwh =
        report.energy_nonlinear_schedule_mwh - report.energy_linear_schedule_mwh;
    report.relative_gain_percent = report.energy_linear_schedule_mwh != 0.0
                                       ? 100.0 * report.absolute_gain_mwh /
                                             report.energy_linear_schedule_mwh
                                       : 0.0;
    return report;
}

std::string comparison_txt(const ComparisonReport& report) {
    std::string out;
    out += "energy_linear_schedule_mwh = " + format_value(report.energy_linear_schedule_mwh) +
           "\n";
    out += "energy_nonlinear_schedule_mwh = " +
           format_value(report.energy_nonlinear_schedule_mwh) + "\n";
    out += "absolute_gain_mwh = " + format_value(report.absolute_gain_mwh) + "\n";
    out += "relative_gain_percent = " + format_value(report.relative_gain_percent) + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

}  // namespace hydro::io
