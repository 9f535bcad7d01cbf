#include "hydro/io/run.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>

#include "hydro/model/validate.hpp"
#include "hydro/nlp/decorators.hpp"

namespace hydro::io {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

}  // namespace

RunResult run(const RunConfig& config) {
    RunResult result;
    auto info = [&config](const std::string& line) {
        if (!config.quiet) std::cout << line << "\n";
    };

    model::CascadeSpec spec;
    try {
        spec = load_cascade_spec(config.spec_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }

    const auto diagnostics = model::validate(spec);
    if (!diagnostics.empty()) {
        std::cerr << "error: spec validation failed\n" << model::format_diagnostics(diagnostics);
        result.exit_code = kExitIoError;
        return result;
    }

    std::unique_ptr<model::CascadeNlp> cascade;
    try {
        cascade = model::assemble_nlp(spec);
    } catch (const model::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }

    std::unique_ptr<nlp::BoundOverrideNlp> overridden;
    const nlp::ParametricNlp* program = cascade.get();
    if (!config.bound_overrides.empty()) {
        try {
            overridden =
                std::make_unique<nlp::BoundOverrideNlp>(*cascade, config.bound_overrides);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            result.exit_code = kExitIoError;
            return result;
        }
        program = overridden.get();
    }

    try {
        fs::create_directories(config.output_dir);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: cannot create output directory: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }
    const fs::path out_dir(config.output_dir);

    result.report = structural::full_report(*program, config.structural_samples);
    try {
        if (config.emit.report_json) {
            write_file((out_dir / "structural_report.json").string(),
                       structural_report_json(result.report));
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }
    if (!result.report.all_ok()) {
        std::cerr << "structural checks failed:\n";
        for (const auto& detail : result.report.details) {
            if (!detail.pass) {
                std::cerr << "  [" << detail.check << "] " << detail.info << "\n";
            }
        }
        result.exit_code = kExitStructural;
        return result;
    }
    info("structural checks passed");
    if (config.check_only) {
        result.exit_code = kExitSuccess;
        return result;
    }

    const auto start = Clock::now();
    result.path = continuation::continue_path(*program, config.schedule, config.solver);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();

    try {
        if (config.emit.path_csv && !result.path.entries.empty()) {
            write_file((out_dir / "path.csv").string(), path_csv(result.path, *cascade));
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }

    if (!result.path.complete()) {
        std::cerr << "continuation stopped: " << continuation::to_string(result.path.status)
                  << " at theta = " << result.path.failure_theta << " ("
                  << result.path.failure_cause << ")\n";
        result.exit_code = kExitPathFailure;
        return result;
    }

    result.comparison = compare_schedules(spec, result.path);
    result.comparison.wall_time_ms = wall_ms;
    result.comparison_valid = true;
    try {
        if (config.emit.comparison_txt) {
            write_file((out_dir / "comparison.txt").string(), comparison_txt(result.comparison));
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        result.exit_code = kExitIoError;
        return result;
    }

    info("path complete: " + std::to_string(result.path.entries.size()) + " theta points");
    info("energy, linear schedule:    " +
         format_value(result.comparison.energy_linear_schedule_mwh) + " MWh");
    info("energy, nonlinear schedule: " +
         format_value(result.comparison.energy_nonlinear_schedule_mwh) + " MWh");
    info("gain: " + format_value(result.comparison.absolute_gain_mwh) + " MWh (" +
         format_value(result.comparison.relative_gain_percent) + " %)");
    info("wall time: " + std::to_string(wall_ms) + " ms");
    result.exit_code = kExitSuccess;
    return result;
}

}  // namespace hydro::io
