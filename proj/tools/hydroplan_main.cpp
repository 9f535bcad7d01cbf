#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydro/io/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "hydroplan - reservoir release scheduling by homotopy continuation\n"
        "with an interior-point core and structural diagnostics"};

    hydro::io::RunConfig config;
    config.output_dir = ".";
    std::vector<std::string> overrides;

    app.add_option("--spec", config.spec_path, "cascade spec JSON file")->required();
    app.add_option("--out", config.output_dir, "output directory (default: .)");
    app.add_option("--theta-step", config.schedule.theta_step, "homotopy increment");
    app.add_option("--mu-min", config.solver.mu_min, "final barrier parameter");
    app.add_option("--kkt-tol", config.solver.kkt_tolerance, "KKT residual tolerance");
    app.add_flag_callback(
        "--no-adaptive", [&config]() { config.schedule.adaptive = false; },
        "fail instead of halving the theta step");
    app.add_flag("--check-only", config.check_only,
                 "run the structural checks, write the report, and exit");
    app.add_flag("--quiet", config.quiet, "suppress progress output");
    app.add_option("--samples", config.structural_samples,
                   "interior points per structural check (default: 5)");
    app.add_option("--override-bound", overrides,
                   "diagnostic: force bounds NAME:LO:HI onto matching variables")
        ->take_all();

    CLI11_PARSE(app, argc, argv);

    for (const auto& text : overrides) {
        const auto first = text.find(':');
        const auto second = text.find(':', first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            std::cerr << "error: --override-bound expects NAME:LO:HI, got " << text << "\n";
            return hydro::io::kExitIoError;
        }
        try {
            config.bound_overrides[text.substr(0, first)] = {
                std::stod(text.substr(first + 1, second - first - 1)),
                std::stod(text.substr(second + 1))};
        } catch (const std::exception&) {
            std::cerr << "error: cannot parse bounds in " << text << "\n";
            return hydro::io::kExitIoError;
        }
    }

    return hydro::io::run(config).exit_code;
}
