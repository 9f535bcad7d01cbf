#include "hydro/model/assemble.hpp"

#include <sstream>

#include "hydro/model/validate.hpp"
#include "hydro/units.hpp"

namespace hydro::model {

namespace {

// d and its derivatives describe eta(q, v, h); returns derivatives of
// g(q, v, h) = eta * q * h, the nonlinear generation term.
struct GenerationTerm {
    double value;
    double dq, dv, dh;
    double dqq, dqv, dqh, dvv, dvh, dhh;
};

GenerationTerm generation_term(const EfficiencyModel& model, double q, double v, double h) {
    const auto d = model.derivatives(q, v, h);
    GenerationTerm g;
    g.value = d.value * q * h;
    g.dq = d.grad[0] * q * h + d.value * h;
    g.dv = d.grad[1] * q * h;
    g.dh = d.grad[2] * q * h + d.value * q;
    g.dqq = d.hess[0][0] * q * h + 2.0 * d.grad[0] * h;
    g.dqv = d.hess[0][1] * q * h + d.grad[1] * h;
    g.dqh = d.hess[0][2] * q * h + d.grad[0] * q + d.grad[2] * h + d.value;
    g.dvv = d.hess[1][1] * q * h;
    g.dvh = d.hess[1][2] * q * h + d.grad[1] * q;
    g.dhh = d.hess[2][2] * q * h + 2.0 * d.grad[2] * q;
    return g;
}

std::string step_tag(int j) {
    std::ostringstream oss;
    oss << "[t" << j << "]";
    return oss.str();
}

}  // namespace

CascadeNlp::CascadeNlp(CascadeSpec spec) : spec_(std::move(spec)) {
    const auto diagnostics = validate(spec_);
    if (!diagnostics.empty()) {
        throw SpecError("invalid cascade spec:\n" + format_diagnostics(diagnostics));
    }

    const int n_steps = spec_.grid.step_count;
    const int n_res = static_cast<int>(spec_.reservoirs.size());
    const int n_turb = static_cast<int>(spec_.turbines.size());
    vars_per_step_ = 2 * n_res + 4 * n_turb;
    cons_per_step_ = 2 * n_res + 3 * n_turb;

    auto reservoir_index = [this](const std::string& name) {
        for (size_t i = 0; i < spec_.reservoirs.size(); ++i) {
            if (spec_.reservoirs[i].name == name) return static_cast<int>(i);
        }
        return -1;
    };
    auto turbine_index = [this](const std::string& name) {
        for (size_t i = 0; i < spec_.turbines.size(); ++i) {
            if (spec_.turbines[i].name == name) return static_cast<int>(i);
        }
        return -1;
    };

    reservoirs_.resize(n_res);
    for (int r = 0; r < n_res; ++r) {
        const auto& rs = spec_.reservoirs[r];
        auto& data = reservoirs_[r];
        data.relation = rs.level_volume;
        data.v0 = initial_volume(rs);
        data.tangent = rs.level_volume.tangent_at(data.v0);
        if (rs.inflow.kind == Inflow::Kind::UpstreamTurbine) {
            data.inflow_turbine = turbine_index(rs.inflow.turbine);
        } else {
            data.series = rs.inflow.series.values;
            if (static_cast<int>(data.series.size()) != n_steps) {
                std::ostringstream oss;
                oss << "boundary series for reservoir " << rs.name << " has "
                    << data.series.size() << " entries, expected " << n_steps;
                throw SpecError(oss.str());
            }
        }
    }

    turbines_.resize(n_turb);
    for (int t = 0; t < n_turb; ++t) {
        const auto& ts = spec_.turbines[t];
        auto& data = turbines_[t];
        data.upstream = reservoir_index(ts.upstream_reservoir);
        if (ts.downstream.kind == Downstream::Kind::Reservoir) {
            data.downstream = reservoir_index(ts.downstream.reservoir);
        } else {
            data.tailwater = ts.downstream.level;
        }
        data.efficiency = ts.efficiency;
        const Linearization lin = effective_linearization(spec_, ts);
        data.eta0 = lin.eta0;
        data.dh0 = lin.delta_h0;
        reservoirs_[data.upstream].outflow_turbines.push_back(t);
    }

    variables_.reserve(static_cast<size_t>(n_steps) * vars_per_step_);
    constraints_.reserve(static_cast<size_t>(n_steps) * cons_per_step_);
    for (int j = 1; j <= n_steps; ++j) {
        const std::string tag = step_tag(j);
        for (int r = 0; r < n_res; ++r) {
            const auto& rs = spec_.reservoirs[r];
            nlp::VariableDescriptor h;
            h.index = level_index(r, j);
            h.kind = nlp::VariableKind::Proper;
            h.lower = rs.level_bounds[0];
            h.upper = rs.level_bounds[1];
            h.name = "H[" + rs.name + "]" + tag;
            h.time_step = j;
            variables_.push_back(h);

            nlp::VariableDescriptor v;
            v.index = volume_index(r, j);
            v.kind = nlp::VariableKind::Redundant;
            v.name = "V[" + rs.name + "]" + tag;
            v.time_step = j;
            v.initial_hint = reservoirs_[r].v0;
            variables_.push_back(v);
        }
        for (int t = 0; t < n_turb; ++t) {
            const auto& ts = spec_.turbines[t];
            nlp::VariableDescriptor p;
            p.index = power_index(t, j);
            p.kind = nlp::VariableKind::Proper;
            p.lower = ts.power_bounds[0];
            p.upper = ts.power_bounds[1];
            p.name = "P[" + ts.name + "]" + tag;
            p.time_step = j;
            variables_.push_back(p);

            nlp::VariableDescriptor q;
            q.index = flow_index(t, j);
            q.kind = nlp::VariableKind::Proper;
            q.lower = ts.flow_bounds[0];
            q.upper = ts.flow_bounds[1];
            q.name = "Q[" + ts.name + "]" + tag;
            q.time_step = j;
            variables_.push_back(q);

            nlp::VariableDescriptor qt;
            qt.index = flow_alias_index(t, j);
            qt.kind = nlp::VariableKind::Redundant;
            qt.name = "Qt[" + ts.name + "]" + tag;
            qt.time_step = j;
            qt.initial_hint = 0.5 * (ts.flow_bounds[0] + ts.flow_bounds[1]);
            variables_.push_back(qt);

            nlp::VariableDescriptor dh;
            dh.index = head_index(t, j);
            dh.kind = nlp::VariableKind::Redundant;
            dh.name = "dH[" + ts.name + "]" + tag;
            dh.time_step = j;
            const auto& up = spec_.reservoirs[turbines_[t].upstream];
            double h_down = turbines_[t].downstream >= 0
                                ? spec_.reservoirs[turbines_[t].downstream].initial_level
                                : turbines_[t].tailwater;
            dh.initial_hint = up.initial_level - h_down;
            variables_.push_back(dh);
        }

        for (int r = 0; r < n_res; ++r) {
            const auto& rs = spec_.reservoirs[r];
            nlp::ConstraintDescriptor c2;
            c2.index = constraint_level_volume_index(r, j);
            c2.family = nlp::ConstraintFamily::LevelVolume;
            c2.name = "level_volume[" + rs.name + "]" + tag;
            c2.time_step = j;
            constraints_.push_back(c2);

            nlp::ConstraintDescriptor c3;
            c3.index = constraint_mass_balance_index(r, j);
            c3.family = nlp::ConstraintFamily::MassBalance;
            c3.name = "mass_balance[" + rs.name + "]" + tag;
            c3.time_step = j;
            constraints_.push_back(c3);
        }
        for (int t = 0; t < n_turb; ++t) {
            const auto& ts = spec_.turbines[t];
            nlp::ConstraintDescriptor c1;
            c1.index = constraint_power_index(t, j);
            c1.family = nlp::ConstraintFamily::Power;
            c1.name = "generation[" + ts.name + "]" + tag;
            c1.time_step = j;
            constraints_.push_back(c1);

            nlp::ConstraintDescriptor c4;
            c4.index = constraint_power_index(t, j) + 1;
            c4.family = nlp::ConstraintFamily::HeadDifference;
            c4.name = "head_difference[" + ts.name + "]" + tag;
            c4.time_step = j;
            constraints_.push_back(c4);

            nlp::ConstraintDescriptor c5;
            c5.index = constraint_power_index(t, j) + 2;
            c5.family = nlp::ConstraintFamily::FlowAlias;
            c5.name = "flow_alias[" + ts.name + "]" + tag;
            c5.time_step = j;
            constraints_.push_back(c5);
        }
    }
}

double CascadeNlp::objective(const Eigen::VectorXd& x, double /*theta*/) const {
    double total = 0.0;
    for (int j = 1; j <= spec_.grid.step_count; ++j) {
        for (int t = 0; t < num_turbines(); ++t) {
            total += x[power_index(t, j)];
        }
    }
    return -total / units::watts_per_objective_unit;
}

void CascadeNlp::objective_gradient(const Eigen::VectorXd& x, double /*theta*/,
                                    Eigen::VectorXd& grad) const {
    grad.setZero(x.size());
    for (int j = 1; j <= spec_.grid.step_count; ++j) {
        for (int t = 0; t < num_turbines(); ++t) {
            grad[power_index(t, j)] = -1.0 / units::watts_per_objective_unit;
        }
    }
}

void CascadeNlp::objective_hessian(const Eigen::VectorXd& x, double /*theta*/,
                                   Eigen::MatrixXd& hess) const {
    hess.setZero(x.size(), x.size());
}

void CascadeNlp::constraint_residuals(const Eigen::VectorXd& x, double theta,
                                      Eigen::VectorXd& out) const {
    out.setZero(num_constraints());
    const double dt = spec_.grid.step_seconds;
    for (int j = 1; j <= spec_.grid.step_count; ++j) {
        for (int r = 0; r < num_reservoirs(); ++r) {
            const auto& data = reservoirs_[r];
            const double v = x[volume_index(r, j)];
            const double linear = data.tangent.alpha * v + data.tangent.beta;
            out[constraint_level_volume_index(r, j)] =
                x[level_index(r, j)] - (1.0 - theta) * linear - theta * data.relation.level(v);

            const double v_prev = (j == 1) ? data.v0 : x[volume_index(r, j - 1)];
            double balance = (v - v_prev) / dt;
            if (data.inflow_turbine >= 0) {
                balance -= x[flow_index(data.inflow_turbine, j)];
            } else {
                balance -= data.series[j - 1];
            }
            for (int t : data.outflow_turbines) {
                balance += x[flow_index(t, j)];
            }
            out[constraint_mass_balance_index(r, j)] = balance;
        }
        for (int t = 0; t < num_turbines(); ++t) {
            const auto& data = turbines_[t];
            const double q = x[flow_index(t, j)];
            const double qt = x[flow_alias_index(t, j)];
            const double v_up = x[volume_index(data.upstream, j)];
            const double dh = x[head_index(t, j)];
            const auto g = generation_term(data.efficiency, qt, v_up, dh);
            out[constraint_power_index(t, j)] =
                x[power_index(t, j)] / units::g_rho -
                ((1.0 - theta) * data.eta0 * q * data.dh0 + theta * g.value);

            const double h_down =
                data.downstream >= 0 ? x[level_index(data.downstream, j)] : data.tailwater;
            out[constraint_power_index(t, j) + 1] =
                dh - x[level_index(data.upstream, j)] + h_down;

            out[constraint_power_index(t, j) + 2] = q - qt;
        }
    }
}

void CascadeNlp::jacobian_triplets(const Eigen::VectorXd& x, double theta,
                                   std::vector<nlp::Triplet>& out) const {
    out.clear();
    const double dt = spec_.grid.step_seconds;
    for (int j = 1; j <= spec_.grid.step_count; ++j) {
        for (int r = 0; r < num_reservoirs(); ++r) {
            const auto& data = reservoirs_[r];
            const double v = x[volume_index(r, j)];
            const int c2 = constraint_level_volume_index(r, j);
            out.push_back({c2, level_index(r, j), 1.0});
            out.push_back({c2, volume_index(r, j),
                           -(1.0 - theta) * data.tangent.alpha -
                               theta * data.relation.level_derivative(v)});

            const int c3 = constraint_mass_balance_index(r, j);
            out.push_back({c3, volume_index(r, j), 1.0 / dt});
            if (j > 1) {
                out.push_back({c3, volume_index(r, j - 1), -1.0 / dt});
            }
            if (data.inflow_turbine >= 0) {
                out.push_back({c3, flow_index(data.inflow_turbine, j), -1.0});
            }
            for (int t : data.outflow_turbines) {
                out.push_back({c3, flow_index(t, j), 1.0});
            }
        }
        for (int t = 0; t < num_turbines(); ++t) {
            const auto& data = turbines_[t];
            const double qt = x[flow_alias_index(t, j)];
            const double v_up = x[volume_index(data.upstream, j)];
            const double dh = x[head_index(t, j)];
            const auto g = generation_term(data.efficiency, qt, v_up, dh);

            const int c1 = constraint_power_index(t, j);
            out.push_back({c1, power_index(t, j), 1.0 / units::g_rho});
            out.push_back({c1, flow_index(t, j), -(1.0 - theta) * data.eta0 * data.dh0});
            out.push_back({c1, flow_alias_index(t, j), -theta * g.dq});
            out.push_back({c1, volume_index(data.upstream, j), -theta * g.dv});
            out.push_back({c1, head_index(t, j), -theta * g.dh});

            const int c4 = c1 + 1;
            out.push_back({c4, head_index(t, j), 1.0});
            out.push_back({c4, level_index(data.upstream, j), -1.0});
            if (data.downstream >= 0) {
                out.push_back({c4, level_index(data.downstream, j), 1.0});
            }

            const int c5 = c1 + 2;
            out.push_back({c5, flow_index(t, j), 1.0});
            out.push_back({c5, flow_alias_index(t, j), -1.0});
        }
    }
}

void CascadeNlp::constraint_jacobian(const Eigen::VectorXd& x, double theta,
                                     Eigen::MatrixXd& jac) const {
    jac.setZero(num_constraints(), num_variables());
    std::vector<nlp::Triplet> triplets;
    jacobian_triplets(x, theta, triplets);
    for (const auto& t : triplets) {
        jac(t.row, t.col) += t.value;
    }
}

void CascadeNlp::hessian_triplets(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                  double theta, std::vector<nlp::Triplet>& out) const {
    out.clear();
    for (int j = 1; j <= spec_.grid.step_count; ++j) {
        for (int r = 0; r < num_reservoirs(); ++r) {
            const auto& data = reservoirs_[r];
            const double v = x[volume_index(r, j)];
            const double l = lambda[constraint_level_volume_index(r, j)];
            out.push_back({volume_index(r, j), volume_index(r, j),
                           -l * theta * data.relation.level_second_derivative(v)});
        }
        for (int t = 0; t < num_turbines(); ++t) {
            const auto& data = turbines_[t];
            const double qt = x[flow_alias_index(t, j)];
            const double v_up = x[volume_index(data.upstream, j)];
            const double dh = x[head_index(t, j)];
            const auto g = generation_term(data.efficiency, qt, v_up, dh);
            const double w = -lambda[constraint_power_index(t, j)] * theta;

            const int iq = flow_alias_index(t, j);
            const int iv = volume_index(data.upstream, j);
            const int ih = head_index(t, j);
            out.push_back({iq, iq, w * g.dqq});
            out.push_back({iv, iv, w * g.dvv});
            out.push_back({ih, ih, w * g.dhh});
            out.push_back({iq, iv, w * g.dqv});
            out.push_back({iv, iq, w * g.dqv});
            out.push_back({iq, ih, w * g.dqh});
            out.push_back({ih, iq, w * g.dqh});
            out.push_back({iv, ih, w * g.dvh});
            out.push_back({ih, iv, w * g.dvh});
        }
    }
}

void CascadeNlp::constraint_hessian_combination(const Eigen::VectorXd& x,
                                                const Eigen::VectorXd& lambda, double theta,
                                                Eigen::MatrixXd& hess) const {
    hess.setZero(num_variables(), num_variables());
    std::vector<nlp::Triplet> triplets;
    hessian_triplets(x, lambda, theta, triplets);
    for (const auto& t : triplets) {
        hess(t.row, t.col) += t.value;
    }
}

std::vector<std::vector<double>> CascadeNlp::extract_releases(const Eigen::VectorXd& x) const {
    std::vector<std::vector<double>> releases(num_turbines());
    for (int t = 0; t < num_turbines(); ++t) {
        releases[t].resize(spec_.grid.step_count);
        for (int j = 1; j <= spec_.grid.step_count; ++j) {
            releases[t][j - 1] = x[flow_index(t, j)];
        }
    }
    return releases;
}

std::unique_ptr<CascadeNlp> assemble_nlp(const CascadeSpec& spec) {
    return std::make_unique<CascadeNlp>(spec);
}

}  // namespace hydro::model
