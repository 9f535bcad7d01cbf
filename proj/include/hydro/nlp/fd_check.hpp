#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::nlp {

// Central-difference verification of analytic derivatives. All checks return
// the max over entries of |analytic - fd| / (1 + |analytic|), with step
// h_i = 1e-6 * (1 + |x_i|).

double fd_max_rel_error(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& value,
                        const Eigen::MatrixXd& analytic_jacobian, const Eigen::VectorXd& point);

double fd_check_scalar(const std::function<double(double)>& value,
                       const std::function<double(double)>& derivative, double point);

double fd_check_constraints(const ParametricNlp& nlp, const Eigen::VectorXd& x, double theta);
double fd_check_objective_gradient(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   double theta);
// Lagrangian Hessian (including the barrier block) against central differences
// of the analytic stationarity residual.
double fd_check_lagrangian_hessian(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, double mu, double theta);

}  // namespace hydro::nlp
