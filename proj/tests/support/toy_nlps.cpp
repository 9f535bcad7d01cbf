#include "support/toy_nlps.hpp"

namespace hydro::testing {

namespace {

nlp::VariableDescriptor make_var(int index, nlp::VariableKind kind, std::optional<double> lower,
                                 std::optional<double> upper, const std::string& name,
                                 std::optional<double> hint = std::nullopt) {
    nlp::VariableDescriptor v;
    v.index = index;
    v.kind = kind;
    v.lower = lower;
    v.upper = upper;
    v.name = name;
    v.initial_hint = hint;
    return v;
}

nlp::ConstraintDescriptor make_con(int index, nlp::ConstraintFamily family,
                                   const std::string& name) {
    nlp::ConstraintDescriptor c;
    c.index = index;
    c.family = family;
    c.name = name;
    return c;
}

}  // namespace

std::unique_ptr<CallbackNlp> fold_toy() {
    auto toy = std::make_unique<CallbackNlp>();
    toy->vars = {make_var(0, nlp::VariableKind::Proper, -1.5, 2.5, "x")};
    toy->cons = {make_con(0, nlp::ConstraintFamily::General, "fold")};
    toy->obj = [](const Eigen::VectorXd& x, double) { return -x[0]; };
    toy->obj_grad = [](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g.setZero(x.size());
        g[0] = -1.0;
    };
    toy->c_val = {[](const Eigen::VectorXd& x, double theta) {
        return x[0] * x[0] + 1.25 * theta - 1.0;
    }};
    toy->c_row = {[](const Eigen::VectorXd& x, double, Eigen::VectorXd& row) {
        row[0] = 2.0 * x[0];
    }};
    toy->c_hess = {[](const Eigen::VectorXd& x, double, Eigen::MatrixXd& h) {
        h.setZero(x.size(), x.size());
        h(0, 0) = 2.0;
    }};
    return toy;
}

std::unique_ptr<CallbackNlp> theta_independent_toy() {
    auto toy = std::make_unique<CallbackNlp>();
    toy->vars = {make_var(0, nlp::VariableKind::Proper, 0.0, 3.0, "x"),
                 make_var(1, nlp::VariableKind::Redundant, std::nullopt, std::nullopt, "y", 0.5)};
    toy->cons = {make_con(0, nlp::ConstraintFamily::General, "sum")};
    toy->obj = [](const Eigen::VectorXd& x, double) {
        return (x[0] - 1.0) * (x[0] - 1.0) + x[1] * x[1];
    };
    toy->obj_grad = [](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g.setZero(x.size());
        g[0] = 2.0 * (x[0] - 1.0);
        g[1] = 2.0 * x[1];
    };
    toy->obj_hess = [](const Eigen::VectorXd& x, double, Eigen::MatrixXd& h) {
        h.setZero(x.size(), x.size());
        h(0, 0) = 2.0;
        h(1, 1) = 2.0;
    };
    toy->c_val = {[](const Eigen::VectorXd& x, double) { return x[0] + x[1] - 2.0; }};
    toy->c_row = {[](const Eigen::VectorXd&, double, Eigen::VectorXd& row) {
        row[0] = 1.0;
        row[1] = 1.0;
    }};
    toy->c_hess = {CallbackNlp::Hessian{}};
    return toy;
}

std::unique_ptr<CallbackNlp> defective_blend_toy() {
    auto toy = std::make_unique<CallbackNlp>();
    // P, Q proper; Qt, dH redundant. The generation row keeps its bilinear
    // term at theta = 0 instead of blending it out.
    toy->vars = {
        make_var(0, nlp::VariableKind::Proper, 0.0, 10.0, "P"),
        make_var(1, nlp::VariableKind::Proper, 0.0, 5.0, "Q"),
        make_var(2, nlp::VariableKind::Redundant, std::nullopt, std::nullopt, "Qt", 1.0),
        make_var(3, nlp::VariableKind::Redundant, std::nullopt, std::nullopt, "dH", 2.0),
    };
    toy->cons = {make_con(0, nlp::ConstraintFamily::Power, "generation"),
                 make_con(1, nlp::ConstraintFamily::HeadDifference, "head"),
                 make_con(2, nlp::ConstraintFamily::FlowAlias, "alias")};
    toy->obj = [](const Eigen::VectorXd& x, double) { return -x[0]; };
    toy->obj_grad = [](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g.setZero(x.size());
        g[0] = -1.0;
    };
    toy->c_val = {
        [](const Eigen::VectorXd& x, double) { return x[0] - x[2] * x[3]; },
        [](const Eigen::VectorXd& x, double) { return x[3] - 2.0; },
        [](const Eigen::VectorXd& x, double) { return x[1] - x[2]; },
    };
    toy->c_row = {
        [](const Eigen::VectorXd& x, double, Eigen::VectorXd& row) {
            row[0] = 1.0;
            row[2] = -x[3];
            row[3] = -x[2];
        },
        [](const Eigen::VectorXd&, double, Eigen::VectorXd& row) { row[3] = 1.0; },
        [](const Eigen::VectorXd&, double, Eigen::VectorXd& row) {
            row[1] = 1.0;
            row[2] = -1.0;
        },
    };
    toy->c_hess = {[](const Eigen::VectorXd& x, double, Eigen::MatrixXd& h) {
                       h.setZero(x.size(), x.size());
                       h(2, 3) = -1.0;
                       h(3, 2) = -1.0;
                   },
                   CallbackNlp::Hessian{}, CallbackNlp::Hessian{}};
    return toy;
}

std::unique_ptr<CallbackNlp> lp_toy() {
    auto toy = std::make_unique<CallbackNlp>();
    toy->vars = {make_var(0, nlp::VariableKind::Proper, 0.0, 1.0, "x"),
                 make_var(1, nlp::VariableKind::Proper, 0.0, 1.0, "y")};
    toy->cons = {make_con(0, nlp::ConstraintFamily::General, "budget")};
    toy->obj = [](const Eigen::VectorXd& x, double) { return -x[0] - x[1]; };
    toy->obj_grad = [](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g.setConstant(x.size(), -1.0);
    };
    toy->c_val = {[](const Eigen::VectorXd& x, double) { return x[0] + x[1] - 1.0; }};
    toy->c_row = {[](const Eigen::VectorXd&, double, Eigen::VectorXd& row) {
        row[0] = 1.0;
        row[1] = 1.0;
    }};
    toy->c_hess = {CallbackNlp::Hessian{}};
    return toy;
}

model::CascadeSpec two_reservoir_spec(int step_count) {
    model::CascadeSpec spec;
    spec.grid.step_count = step_count;
    spec.grid.step_seconds = 3600.0;

    model::ReservoirSpec up;
    up.name = "upstream";
    up.level_volume = model::LevelVolumeRelation::linear(1e5, 1000.0);
    up.initial_level = 1005.0;
    up.level_bounds = {1000.0, 1030.0};
    up.inflow.kind = model::Inflow::Kind::Series;
    up.inflow.series.values.assign(step_count, 100.0);
    spec.reservoirs.push_back(up);

    model::ReservoirSpec down;
    down.name = "downstream";
    down.level_volume = model::LevelVolumeRelation::linear(1e5, 900.0);
    down.initial_level = 925.0;
    down.level_bounds = {900.0, 930.0};
    down.inflow.kind = model::Inflow::Kind::UpstreamTurbine;
    down.inflow.turbine = "turbine_up";
    spec.reservoirs.push_back(down);

    model::TurbineSpec tu;
    tu.name = "turbine_up";
    tu.upstream_reservoir = "upstream";
    tu.downstream.kind = model::Downstream::Kind::Reservoir;
    tu.downstream.reservoir = "downstream";
    tu.efficiency = model::EfficiencyModel::constant(0.85);
    tu.flow_bounds = {0.0, 100.0};
    tu.power_bounds = {0.0, 1e9};
    tu.linearization.eta0 = 0.85;
    tu.linearization.delta_h0 = 80.0;
    spec.turbines.push_back(tu);

    model::TurbineSpec td;
    td.name = "turbine_down";
    td.upstream_reservoir = "downstream";
    td.downstream.kind = model::Downstream::Kind::FixedTailwater;
    td.downstream.level = 800.0;
    td.efficiency = model::EfficiencyModel::constant(0.85);
    td.flow_bounds = {0.0, 100.0};
    td.power_bounds = {0.0, 1e9};
    td.linearization.eta0 = 0.85;
    td.linearization.delta_h0 = 125.0;
    spec.turbines.push_back(td);

    return spec;
}

StripBoundsNlp::StripBoundsNlp(const nlp::ParametricNlp& inner, const std::string& prefix)
    : inner_(inner), vars_(inner.variables()) {
    for (auto& var : vars_) {
        if (var.name.rfind(prefix, 0) == 0) {
            var.lower.reset();
            var.upper.reset();
        }
    }
}

DuplicateConstraintNlp::DuplicateConstraintNlp(const nlp::ParametricNlp& inner, int row)
    : inner_(inner), row_(row), cons_(inner.constraints()) {
    nlp::ConstraintDescriptor copy = cons_[row];
    copy.index = static_cast<int>(cons_.size());
    copy.name += "_dup";
    cons_.push_back(copy);
}

void DuplicateConstraintNlp::constraint_residuals(const Eigen::VectorXd& x, double theta,
                                                  Eigen::VectorXd& out) const {
    Eigen::VectorXd base;
    inner_.constraint_residuals(x, theta, base);
    out.resize(base.size() + 1);
    out.head(base.size()) = base;
    out[base.size()] = base[row_];
}

void DuplicateConstraintNlp::constraint_jacobian(const Eigen::VectorXd& x, double theta,
                                                 Eigen::MatrixXd& jac) const {
    Eigen::MatrixXd base;
    inner_.constraint_jacobian(x, theta, base);
    jac.resize(base.rows() + 1, base.cols());
    jac.topRows(base.rows()) = base;
    jac.row(base.rows()) = base.row(row_);
}

void DuplicateConstraintNlp::constraint_hessian_combination(const Eigen::VectorXd& x,
                                                            const Eigen::VectorXd& lambda,
                                                            double theta,
                                                            Eigen::MatrixXd& h) const {
    // The duplicate shares the original row's curvature.
    Eigen::VectorXd folded = lambda.head(lambda.size() - 1);
    folded[row_] += lambda[lambda.size() - 1];
    inner_.constraint_hessian_combination(x, folded, theta, h);
}

}  // namespace hydro::testing
