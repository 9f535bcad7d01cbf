#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::nlp {

// Raised when a barrier term is evaluated on or outside a bound.
class BarrierDomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BarrierTerms {
    double value = 0.0;               // -sum of shifted logs (mu not applied)
    Eigen::VectorXd gradient;         // d(value)/dx, zero on unbounded variables
    Eigen::VectorXd hessian_diagonal; // d2(value)/dx2, zero on unbounded variables
};

// Shifted-log barrier contributions for every bounded variable. Redundant
// variables carry no bounds and therefore no terms.
BarrierTerms barrier_terms(const std::vector<VariableDescriptor>& variables,
                           const Eigen::VectorXd& x);

// f(x, theta) - mu * sum of shifted logs over bounded variables.
double barrier_objective(const ParametricNlp& nlp, const Eigen::VectorXd& x, double mu,
                         double theta);

}  // namespace hydro::nlp
