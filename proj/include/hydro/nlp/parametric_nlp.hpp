#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hydro/nlp/descriptors.hpp"

namespace hydro::nlp {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/**
 * Equality-constrained parametric program
 *
 *     min_x f(x, theta)   subject to   c(x, theta) = 0
 *
 * with box bounds attached to the variable descriptors and a homotopy
 * parameter theta in [0, 1]. Evaluators must be deterministic and pure;
 * implementations are safe to call concurrently.
 */
class ParametricNlp {
  public:
    virtual ~ParametricNlp() = default;

    virtual const std::vector<VariableDescriptor>& variables() const = 0;
    virtual const std::vector<ConstraintDescriptor>& constraints() const = 0;

    int num_variables() const { return static_cast<int>(variables().size()); }
    int num_constraints() const { return static_cast<int>(constraints().size()); }

    virtual double objective(const Eigen::VectorXd& x, double theta) const = 0;
    virtual void objective_gradient(const Eigen::VectorXd& x, double theta,
                                    Eigen::VectorXd& grad) const = 0;
    // Objective Hessian, dense n x n.
    virtual void objective_hessian(const Eigen::VectorXd& x, double theta,
                                   Eigen::MatrixXd& hess) const = 0;

    virtual void constraint_residuals(const Eigen::VectorXd& x, double theta,
                                      Eigen::VectorXd& out) const = 0;
    // Dense Jacobian of c, ell x n.
    virtual void constraint_jacobian(const Eigen::VectorXd& x, double theta,
                                     Eigen::MatrixXd& jac) const = 0;
    // Sum_k lambda_k * Hessian(c_k), dense n x n.
    virtual void constraint_hessian_combination(const Eigen::VectorXd& x,
                                                const Eigen::VectorXd& lambda, double theta,
                                                Eigen::MatrixXd& hess) const = 0;

    // Sparse access for the solver hot path. The structural sparsity pattern
    // must not depend on (x, lambda, theta). Defaults fall back to the dense
    // evaluators and emit every entry.
    virtual void jacobian_triplets(const Eigen::VectorXd& x, double theta,
                                   std::vector<Triplet>& out) const;
    virtual void hessian_triplets(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                  double theta, std::vector<Triplet>& out) const;
};

}  // namespace hydro::nlp
