#pragma once

#include <array>
#include <map>
#include <string>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::nlp {

/**
 * Delegating view of another program with replaced variable bounds. Keys of
 * the override map are matched as name prefixes ("dH[" hits every head
 * difference). Indices and evaluators are untouched, so layouts derived from
 * the inner program stay valid. Used as the diagnostic hook that forces
 * bounds onto redundant variables.
 */
class BoundOverrideNlp final : public ParametricNlp {
  public:
    BoundOverrideNlp(const ParametricNlp& inner,
                     const std::map<std::string, std::array<double, 2>>& overrides);

    const std::vector<VariableDescriptor>& variables() const override { return variables_; }
    const std::vector<ConstraintDescriptor>& constraints() const override {
        return inner_.constraints();
    }
    double objective(const Eigen::VectorXd& x, double theta) const override {
        return inner_.objective(x, theta);
    }
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& grad) const override {
        inner_.objective_gradient(x, theta, grad);
    }
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& hess) const override {
        inner_.objective_hessian(x, theta, hess);
    }
    void constraint_residuals(const Eigen::VectorXd& x, double theta,
                              Eigen::VectorXd& out) const override {
        inner_.constraint_residuals(x, theta, out);
    }
    void constraint_jacobian(const Eigen::VectorXd& x, double theta,
                             Eigen::MatrixXd& jac) const override {
        inner_.constraint_jacobian(x, theta, jac);
    }
    void constraint_hessian_combination(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                        double theta, Eigen::MatrixXd& hess) const override {
        inner_.constraint_hessian_combination(x, lambda, theta, hess);
    }
    void jacobian_triplets(const Eigen::VectorXd& x, double theta,
                           std::vector<Triplet>& out) const override {
        inner_.jacobian_triplets(x, theta, out);
    }
    void hessian_triplets(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda, double theta,
                          std::vector<Triplet>& out) const override {
        inner_.hessian_triplets(x, lambda, theta, out);
    }

  private:
    const ParametricNlp& inner_;
    std::vector<VariableDescriptor> variables_;
};

}  // namespace hydro::nlp
