#include "hydro/nlp/kkt.hpp"

#include "hydro/nlp/barrier.hpp"

namespace hydro::nlp {

Eigen::VectorXd kkt_residual(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& lambda, double mu, double theta) {
    const int n = nlp.num_variables();
    const int ell = nlp.num_constraints();
    Eigen::VectorXd residual(n + ell);

    Eigen::VectorXd grad;
    nlp.objective_gradient(x, theta, grad);
    const BarrierTerms barrier = barrier_terms(nlp.variables(), x);
    residual.head(n) = grad + mu * barrier.gradient;

    if (ell > 0) {
        Eigen::VectorXd c(ell);
        nlp.constraint_residuals(x, theta, c);
        std::vector<Triplet> jac;
        nlp.jacobian_triplets(x, theta, jac);
        for (const auto& t : jac) {
            residual[t.col] += t.value * lambda[t.row];
        }
        residual.tail(ell) = c;
    }
    return residual;
}

Eigen::MatrixXd lagrangian_hessian(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, double mu, double theta) {
    Eigen::MatrixXd hess;
    nlp.objective_hessian(x, theta, hess);
    if (nlp.num_constraints() > 0) {
        Eigen::MatrixXd chess;
        nlp.constraint_hessian_combination(x, lambda, theta, chess);
        hess += chess;
    }
    const BarrierTerms barrier = barrier_terms(nlp.variables(), x);
    hess.diagonal() += mu * barrier.hessian_diagonal;
    return hess;
}

KktSystem assemble_kkt(const ParametricNlp& nlp, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& lambda, double mu, double theta) {
    const int n = nlp.num_variables();
    const int ell = nlp.num_constraints();
    KktSystem sys;
    sys.num_variables = n;
    sys.num_constraints = ell;
    sys.matrix.setZero(n + ell, n + ell);
    sys.matrix.topLeftCorner(n, n) = lagrangian_hessian(nlp, x, lambda, mu, theta);
    if (ell > 0) {
        Eigen::MatrixXd jac;
        nlp.constraint_jacobian(x, theta, jac);
        sys.matrix.bottomLeftCorner(ell, n) = jac;
        sys.matrix.topRightCorner(n, ell) = jac.transpose();
    }
    sys.rhs = -kkt_residual(nlp, x, lambda, mu, theta);
    return sys;
}

}  // namespace hydro::nlp
