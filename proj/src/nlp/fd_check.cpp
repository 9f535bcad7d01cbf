#include "hydro/nlp/fd_check.hpp"

#include <cmath>

#include "hydro/nlp/barrier.hpp"
#include "hydro/nlp/kkt.hpp"

namespace hydro::nlp {

namespace {

double step_size(double xi) { return 1e-6 * (1.0 + std::abs(xi)); }

}  // namespace

double fd_max_rel_error(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& value,
                        const Eigen::MatrixXd& analytic_jacobian, const Eigen::VectorXd& point) {
    double worst = 0.0;
    Eigen::VectorXd x = point;
    for (int i = 0; i < point.size(); ++i) {
        const double h = step_size(point[i]);
        x[i] = point[i] + h;
        const Eigen::VectorXd plus = value(x);
        x[i] = point[i] - h;
        const Eigen::VectorXd minus = value(x);
        x[i] = point[i];
        for (int row = 0; row < plus.size(); ++row) {
            const double fd = (plus[row] - minus[row]) / (2.0 * h);
            const double analytic = analytic_jacobian(row, i);
            worst = std::max(worst, std::abs(analytic - fd) / (1.0 + std::abs(analytic)));
        }
    }
    return worst;
}

double fd_check_scalar(const std::function<double(double)>& value,
                       const std::function<double(double)>& derivative, double point) {
    const double h = step_size(point);
    const double fd = (value(point + h) - value(point - h)) / (2.0 * h);
    const double analytic = derivative(point);
    return std::abs(analytic - fd) / (1.0 + std::abs(analytic));
}

double fd_check_constraints(const ParametricNlp& nlp, const Eigen::VectorXd& x, double theta) {
    Eigen::MatrixXd jac;
    nlp.constraint_jacobian(x, theta, jac);
    auto value = [&nlp, theta](const Eigen::VectorXd& p) {
        Eigen::VectorXd c;
        nlp.constraint_residuals(p, theta, c);
        return c;
    };
    return fd_max_rel_error(value, jac, x);
}

double fd_check_objective_gradient(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   double theta) {
    Eigen::VectorXd grad;
    nlp.objective_gradient(x, theta, grad);
    auto value = [&nlp, theta](const Eigen::VectorXd& p) {
        Eigen::VectorXd v(1);
        v[0] = nlp.objective(p, theta);
        return v;
    };
    return fd_max_rel_error(value, grad.transpose(), x);
}

double fd_check_lagrangian_hessian(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, double mu, double theta) {
    const Eigen::MatrixXd hess = lagrangian_hessian(nlp, x, lambda, mu, theta);
    auto value = [&nlp, &lambda, mu, theta](const Eigen::VectorXd& p) {
        Eigen::VectorXd grad;
        nlp.objective_gradient(p, theta, grad);
        const BarrierTerms barrier = barrier_terms(nlp.variables(), p);
        grad += mu * barrier.gradient;
        if (nlp.num_constraints() > 0) {
            std::vector<Triplet> jac;
            nlp.jacobian_triplets(p, theta, jac);
            for (const auto& t : jac) {
                grad[t.col] += t.value * lambda[t.row];
            }
        }
        return grad;
    };
    return fd_max_rel_error(value, hess, x);
}

}  // namespace hydro::nlp
