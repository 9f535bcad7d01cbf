#include "hydro/nlp/parametric_nlp.hpp"

#include <stdexcept>

#include "hydro/nlp/decorators.hpp"

namespace hydro::nlp {

const char* to_string(ConstraintFamily family) {
    switch (family) {
        case ConstraintFamily::Power: return "power";
        case ConstraintFamily::LevelVolume: return "level_volume";
        case ConstraintFamily::MassBalance: return "mass_balance";
        case ConstraintFamily::HeadDifference: return "head_difference";
        case ConstraintFamily::FlowAlias: return "flow_alias";
        case ConstraintFamily::General: return "general";
    }
    return "unknown";
}

void ParametricNlp::jacobian_triplets(const Eigen::VectorXd& x, double theta,
                                      std::vector<Triplet>& out) const {
    Eigen::MatrixXd jac;
    constraint_jacobian(x, theta, jac);
    out.clear();
    out.reserve(static_cast<size_t>(jac.rows()) * jac.cols());
    for (int r = 0; r < jac.rows(); ++r) {
        for (int c = 0; c < jac.cols(); ++c) {
            out.push_back({r, c, jac(r, c)});
        }
    }
}

void ParametricNlp::hessian_triplets(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                     double theta, std::vector<Triplet>& out) const {
    Eigen::MatrixXd obj;
    objective_hessian(x, theta, obj);
    if (num_constraints() > 0) {
        Eigen::MatrixXd cons;
        constraint_hessian_combination(x, lambda, theta, cons);
        obj += cons;
    }
    out.clear();
    for (int r = 0; r < obj.rows(); ++r) {
        for (int c = 0; c < obj.cols(); ++c) {
            out.push_back({r, c, obj(r, c)});
        }
    }
}

BoundOverrideNlp::BoundOverrideNlp(const ParametricNlp& inner,
                                   const std::map<std::string, std::array<double, 2>>& overrides)
    : inner_(inner), variables_(inner.variables()) {
    for (const auto& [prefix, bounds] : overrides) {
        bool matched = false;
        for (auto& var : variables_) {
            if (var.name.rfind(prefix, 0) == 0) {
                var.lower = bounds[0];
                var.upper = bounds[1];
                matched = true;
            }
        }
        if (!matched) {
            throw std::invalid_argument("bound override matches no variable: " + prefix);
        }
    }
}

}  // namespace hydro::nlp
