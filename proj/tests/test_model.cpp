#include <doctest.h>

#include <cmath>

#include "hydro/io/config.hpp"
#include "hydro/model/assemble.hpp"
#include "hydro/model/simulate.hpp"
#include "hydro/model/validate.hpp"
#include "hydro/nlp/sampling.hpp"
#include "hydro/units.hpp"
#include "support/toy_nlps.hpp"

using namespace hydro;

namespace {

model::CascadeSpec example_spec() { return io::load_cascade_spec(HYDRO_EXAMPLE_CONFIG); }

}  // namespace

TEST_CASE("validate accepts the bundled example spec") {
    CHECK(model::validate(example_spec()).empty());
}

TEST_CASE("validate flags an initial level below the bottom") {
    auto spec = example_spec();
    spec.reservoirs[0].initial_level = 999.0;  // bottom is 1000 m
    const auto diagnostics = model::validate(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].field == "reservoirs[0].initial_level");
}

TEST_CASE("validate flags a dangling reservoir reference") {
    auto spec = example_spec();
    spec.turbines[0].upstream_reservoir = "missing";
    const auto diagnostics = model::validate(spec);
    REQUIRE(!diagnostics.empty());
    bool found = false;
    for (const auto& d : diagnostics) {
        if (d.rule == "reference_exists") found = true;
    }
    CHECK(found);
}

TEST_CASE("validate flags inconsistent cascade links and cycles") {
    auto spec = example_spec();
    spec.reservoirs[1].inflow.turbine = "turbine_down";  // discharges to tailwater
    CHECK(!model::validate(spec).empty());

    auto cyclic = example_spec();
    cyclic.turbines[1].downstream.kind = model::Downstream::Kind::Reservoir;
    cyclic.turbines[1].downstream.reservoir = "upstream";
    cyclic.reservoirs[0].inflow.kind = model::Inflow::Kind::UpstreamTurbine;
    cyclic.reservoirs[0].inflow.turbine = "turbine_down";
    const auto diagnostics = model::validate(cyclic);
    bool cycle = false;
    for (const auto& d : diagnostics) {
        if (d.rule == "acyclic_topology") cycle = true;
    }
    CHECK(cycle);
}

TEST_CASE("assembly produces the documented problem size") {
    const model::CascadeNlp nlp(example_spec());
    CHECK(nlp.num_variables() == 576);    // 12 per timestep, 48 steps
    CHECK(nlp.num_constraints() == 480);  // 10 per timestep

    int vars_step_1 = 0;
    for (const auto& v : nlp.variables()) {
        if (v.time_step == 1) ++vars_step_1;
    }
    CHECK(vars_step_1 == 12);
    int cons_step_1 = 0;
    for (const auto& c : nlp.constraints()) {
        if (c.time_step == 1) ++cons_step_1;
    }
    CHECK(cons_step_1 == 10);
}

TEST_CASE("generation residual at theta 0 pins power to the linear model") {
    const model::CascadeNlp nlp(example_spec());
    nlp::Rng rng(7);
    Eigen::VectorXd x = nlp::sample_interior_point(nlp, rng);
    x[nlp.flow_index(0, 1)] = 100.0;
    x[nlp.power_index(0, 1)] = 66708000.0;  // 9.81 * 1000 * 0.85 * 100 * 80

    Eigen::VectorXd c;
    nlp.constraint_residuals(x, 0.0, c);
    CHECK(std::abs(c[nlp.constraint_power_index(0, 1)]) < 1e-9);

    // One g*rho of watts moves the scaled residual by exactly one unit.
    x[nlp.power_index(0, 1)] += units::g_rho;
    nlp.constraint_residuals(x, 0.0, c);
    CHECK(c[nlp.constraint_power_index(0, 1)] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flow alias residual vanishes when flow equals its alias") {
    const model::CascadeNlp nlp(example_spec());
    nlp::Rng rng(8);
    Eigen::VectorXd x = nlp::sample_interior_point(nlp, rng);
    x[nlp.flow_index(1, 3)] = 42.0;
    x[nlp.flow_alias_index(1, 3)] = 42.0;
    Eigen::VectorXd c;
    nlp.constraint_residuals(x, 0.7, c);
    CHECK(c[nlp.constraint_power_index(1, 3) + 2] == 0.0);
}

TEST_CASE("initial volume inverts the level-volume relation") {
    const auto spec = example_spec();
    CHECK(model::initial_volume(spec.reservoirs[0]) == doctest::Approx(5e5).epsilon(1e-12));
    CHECK(model::initial_volume(spec.reservoirs[1]) == doctest::Approx(2.5e6).epsilon(1e-12));

    auto empty = spec.reservoirs[0];
    empty.initial_level = 1000.0;  // at the bottom
    CHECK(model::initial_volume(empty) == 0.0);
}

TEST_CASE("steady releases reproduce the hand-computed energy") {
    const auto spec = example_spec();
    const std::vector<std::vector<double>> releases(2, std::vector<double>(48, 100.0));
    const auto report = model::evaluate_schedule(spec, releases);
    // Constant levels: 48 h at 66.708 + 104.23125 MW.
    const double expected_mwh = 48.0 * (66.708 + 104.23125);
    CHECK(report.total_energy_joules / units::joules_per_mwh ==
          doctest::Approx(expected_mwh).epsilon(1e-12));
    CHECK(report.total_energy_wh == doctest::Approx(expected_mwh * 1e6).epsilon(1e-12));
    CHECK(report.step_power_w[0][17] == doctest::Approx(66708000.0).epsilon(1e-12));
    CHECK(report.step_power_w[1][17] == doctest::Approx(104231250.0).epsilon(1e-12));
}

TEST_CASE("zero releases produce zero energy") {
    const auto spec = testing::two_reservoir_spec(5);
    const std::vector<std::vector<double>> none(2, std::vector<double>(5, 0.0));
    const auto report = model::evaluate_schedule(spec, none);
    CHECK(report.total_energy_wh == 0.0);
}

TEST_CASE("full releases stay feasible against the downstream ceiling") {
    auto spec = example_spec();
    spec.reservoirs[1].level_bounds[1] = 930.0;
    const std::vector<std::vector<double>> releases(2, std::vector<double>(48, 100.0));
    CHECK_NOTHROW(model::evaluate_schedule(spec, releases));
}

TEST_CASE("simulation rejects bound violations with step and variable") {
    const auto spec = testing::two_reservoir_spec(8);
    // Everything held back: the upstream level rises 3.6 m/h and crosses
    // 1030 m during step 7.
    const std::vector<std::vector<double>> releases(2, std::vector<double>(8, 0.0));
    try {
        model::evaluate_schedule(spec, releases);
        FAIL("expected SimulationError");
    } catch (const model::SimulationError& e) {
        CHECK(e.step == 7);
        CHECK(e.variable == "H[upstream]");
    }
}

TEST_CASE("mass conservation telescopes through the simulation") {
    const auto spec = testing::two_reservoir_spec(48);
    nlp::Rng rng(99);
    std::vector<std::vector<double>> releases(2, std::vector<double>(48));
    for (int j = 0; j < 48; ++j) {
        const double q = rng.uniform(92.0, 100.0);
        releases[0][j] = q;
        releases[1][j] = q;
    }
    const auto report = model::evaluate_schedule(spec, releases);
    const double dt = spec.grid.step_seconds;
    for (int r = 0; r < 2; ++r) {
        const double v0 = model::initial_volume(spec.reservoirs[r]);
        const double v_final =
            spec.reservoirs[r].level_volume.volume(report.step_level_m[r][47]);
        double net = 0.0;
        for (int j = 0; j < 48; ++j) {
            const double inflow = r == 0 ? 100.0 : releases[0][j];
            net += inflow - releases[r][j];
        }
        const double scale = std::max({1.0, v0, std::abs(net) * dt});
        CHECK(std::abs(v_final - v0 - dt * net) / scale < 1e-9);
    }
}

TEST_CASE("theta 0 constraint Jacobian is point independent") {
    const model::CascadeNlp nlp(testing::two_reservoir_spec(6));
    nlp::Rng rng(5);
    Eigen::MatrixXd first;
    nlp.constraint_jacobian(nlp::sample_interior_point(nlp, rng), 0.0, first);
    for (int s = 1; s < 10; ++s) {
        Eigen::MatrixXd jac;
        nlp.constraint_jacobian(nlp::sample_interior_point(nlp, rng), 0.0, jac);
        CHECK((jac - first).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("blend endpoints match the pure models exactly") {
    const auto spec = testing::two_reservoir_spec(4);
    const model::CascadeNlp nlp(spec);
    nlp::Rng rng(11);
    const Eigen::VectorXd x = nlp::sample_interior_point(nlp, rng);

    Eigen::VectorXd at_zero, at_one;
    nlp.constraint_residuals(x, 0.0, at_zero);
    nlp.constraint_residuals(x, 1.0, at_one);

    for (int t = 0; t < nlp.num_turbines(); ++t) {
        const auto lin = model::effective_linearization(spec, spec.turbines[t]);
        const int up = t;  // chain layout: turbine t drains reservoir t
        for (int j = 1; j <= spec.grid.step_count; ++j) {
            const double p = x[nlp.power_index(t, j)];
            const double q = x[nlp.flow_index(t, j)];
            const double qt = x[nlp.flow_alias_index(t, j)];
            const double v = x[nlp.volume_index(up, j)];
            const double dh = x[nlp.head_index(t, j)];
            const double pure_linear = p / units::g_rho - lin.eta0 * q * lin.delta_h0;
            const double eta = spec.turbines[t].efficiency.value(qt, v, dh);
            const double pure_nonlinear = p / units::g_rho - eta * qt * dh;
            // Exact: the inactive branch is multiplied by zero.
            CHECK(at_zero[nlp.constraint_power_index(t, j)] == pure_linear);
            CHECK(at_one[nlp.constraint_power_index(t, j)] == pure_nonlinear);
        }
    }
}

TEST_CASE("assembly rejects a boundary series of the wrong length") {
    auto spec = testing::two_reservoir_spec(8);
    spec.reservoirs[0].inflow.series.values.pop_back();
    CHECK_THROWS_AS(model::CascadeNlp{spec}, model::SpecError);
}

TEST_CASE("concave power relation: tangent, inverse, derivatives") {
    const auto rel = model::LevelVolumeRelation::concave_power(0.5, 0.5, 900.0);
    const double v = 1e6;
    CHECK(rel.level(v) == doctest::Approx(900.0 + 0.5 * std::sqrt(v)));
    CHECK(rel.volume(rel.level(v)) == doctest::Approx(v).epsilon(1e-12));
    const auto tangent = rel.tangent_at(v);
    CHECK(tangent.alpha == doctest::Approx(rel.level_derivative(v)));
    CHECK(tangent.alpha * v + tangent.beta == doctest::Approx(rel.level(v)));
}

TEST_CASE("efficiency model enforces its range") {
    const auto eta = model::EfficiencyModel::constant(0.85);
    CHECK(eta.value(10.0, 1e5, 50.0) == 0.85);

    std::array<double, model::EfficiencyModel::kNumCoefficients> coeffs{};
    coeffs[0] = 0.5;
    coeffs[1] = 0.1;  // 0.5 + 0.1 q: exceeds 1.2 for q > 7
    const auto poly = model::EfficiencyModel::smooth_polynomial(coeffs);
    CHECK(poly.value(1.0, 0.0, 0.0) == doctest::Approx(0.6));
    CHECK_THROWS_AS(poly.value(10.0, 0.0, 0.0), model::EfficiencyRangeError);
    CHECK_THROWS_AS(poly.value(-5.0, 0.0, 0.0), model::EfficiencyRangeError);
}

TEST_CASE("linearization defaults come from initial conditions") {
    auto spec = testing::two_reservoir_spec(4);
    spec.turbines[0].linearization = {};
    spec.turbines[1].linearization = {};
    const auto up = model::effective_linearization(spec, spec.turbines[0]);
    CHECK(up.eta0 == doctest::Approx(0.85));
    CHECK(up.delta_h0 == doctest::Approx(80.0));  // 1005 - 925
    const auto down = model::effective_linearization(spec, spec.turbines[1]);
    CHECK(down.delta_h0 == doctest::Approx(125.0));  // 925 - 800
}
