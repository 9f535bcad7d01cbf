#include "hydro/nlp/barrier.hpp"

#include <cmath>
#include <sstream>

namespace hydro::nlp {

BarrierTerms barrier_terms(const std::vector<VariableDescriptor>& variables,
                           const Eigen::VectorXd& x) {
    BarrierTerms terms;
    terms.gradient.setZero(x.size());
    terms.hessian_diagonal.setZero(x.size());
    for (const auto& var : variables) {
        const double xi = x[var.index];
        if (var.lower) {
            const double d = xi - *var.lower;
            if (!(d > 0.0)) {
                std::ostringstream oss;
                oss << var.name << " = " << xi << " is not strictly above lower bound "
                    << *var.lower;
                throw BarrierDomainError(oss.str());
            }
            terms.value -= std::log(d);
            terms.gradient[var.index] -= 1.0 / d;
            terms.hessian_diagonal[var.index] += 1.0 / (d * d);
        }
        if (var.upper) {
            const double d = *var.upper - xi;
            if (!(d > 0.0)) {
                std::ostringstream oss;
                oss << var.name << " = " << xi << " is not strictly below upper bound "
                    << *var.upper;
                throw BarrierDomainError(oss.str());
            }
            terms.value -= std::log(d);
            terms.gradient[var.index] += 1.0 / d;
            terms.hessian_diagonal[var.index] += 1.0 / (d * d);
        }
    }
    return terms;
}

double barrier_objective(const ParametricNlp& nlp, const Eigen::VectorXd& x, double mu,
                         double theta) {
    const BarrierTerms terms = barrier_terms(nlp.variables(), x);
    return nlp.objective(x, theta) + mu * terms.value;
}

}  // namespace hydro::nlp
