#pragma once

#include <Eigen/Dense>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::nlp {

/**
 * Newton system of the barrier stationarity equations:
 *
 *   [ W   B^T ] [dx]   = rhs = -F_mu,   W = hess(L_mu),  B = jac(c)
 *   [ B   0   ] [dl]
 *
 * Stored dense; dimension (n + ell)^2 with variables first.
 */
struct KktSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    int num_variables = 0;
    int num_constraints = 0;
};

// Stacked residual (grad f + mu * barrier gradient + B^T lambda, c(x, theta)).
Eigen::VectorXd kkt_residual(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& lambda, double mu, double theta);

// Hessian of the barrier Lagrangian:
// hess f + sum_k lambda_k hess c_k + mu * barrier diagonal.
Eigen::MatrixXd lagrangian_hessian(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, double mu, double theta);

// Exact Jacobian of kkt_residual with respect to (x, lambda), plus -F_mu.
KktSystem assemble_kkt(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& lambda, double mu, double theta);

}  // namespace hydro::nlp
