#pragma once

#include <functional>
#include <memory>

#include "hydro/model/assemble.hpp"
#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::testing {

/**
 * Parametric program assembled from callbacks; the workhorse for toy problems
 * in tests. Constraint gradients write a full dense row.
 */
class CallbackNlp final : public nlp::ParametricNlp {
  public:
    using Objective = std::function<double(const Eigen::VectorXd&, double)>;
    using Gradient = std::function<void(const Eigen::VectorXd&, double, Eigen::VectorXd&)>;
    using Hessian = std::function<void(const Eigen::VectorXd&, double, Eigen::MatrixXd&)>;
    using ConstraintValue = std::function<double(const Eigen::VectorXd&, double)>;
    using ConstraintRow = std::function<void(const Eigen::VectorXd&, double, Eigen::VectorXd&)>;

    std::vector<nlp::VariableDescriptor> vars;
    std::vector<nlp::ConstraintDescriptor> cons;
    Objective obj = [](const Eigen::VectorXd&, double) { return 0.0; };
    Gradient obj_grad = [](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g.setZero(x.size());
    };
    Hessian obj_hess = [](const Eigen::VectorXd& x, double, Eigen::MatrixXd& h) {
        h.setZero(x.size(), x.size());
    };
    std::vector<ConstraintValue> c_val;
    std::vector<ConstraintRow> c_row;
    // Hessian of each constraint; an empty entry means affine.
    std::vector<Hessian> c_hess;

    const std::vector<nlp::VariableDescriptor>& variables() const override { return vars; }
    const std::vector<nlp::ConstraintDescriptor>& constraints() const override { return cons; }

    double objective(const Eigen::VectorXd& x, double theta) const override {
        return obj(x, theta);
    }
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& grad) const override {
        obj_grad(x, theta, grad);
    }
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& hess) const override {
        obj_hess(x, theta, hess);
    }
    void constraint_residuals(const Eigen::VectorXd& x, double theta,
                              Eigen::VectorXd& out) const override {
        out.resize(static_cast<int>(c_val.size()));
        for (size_t k = 0; k < c_val.size(); ++k) {
            out[static_cast<int>(k)] = c_val[k](x, theta);
        }
    }
    void constraint_jacobian(const Eigen::VectorXd& x, double theta,
                             Eigen::MatrixXd& jac) const override {
        jac.setZero(static_cast<int>(c_row.size()), x.size());
        Eigen::VectorXd row(x.size());
        for (size_t k = 0; k < c_row.size(); ++k) {
            row.setZero();
            c_row[k](x, theta, row);
            jac.row(static_cast<int>(k)) = row;
        }
    }
    void constraint_hessian_combination(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                        double theta, Eigen::MatrixXd& hess) const override {
        hess.setZero(x.size(), x.size());
        Eigen::MatrixXd hk;
        for (size_t k = 0; k < c_hess.size(); ++k) {
            if (!c_hess[k]) continue;
            c_hess[k](x, theta, hk);
            hess += lambda[static_cast<int>(k)] * hk;
        }
    }
};

// Equality constraint x^2 + 1.25*theta - 1 = 0 with x in [-1.5, 2.5] and
// objective -x: the tracked root sqrt(1 - 1.25*theta) folds at theta = 0.8,
// where the constraint gradient vanishes and the KKT matrix turns singular.
std::unique_ptr<CallbackNlp> fold_toy();

// Convex program that ignores theta entirely: min (x-1)^2 + y^2 subject to
// x + y = 2 with x in [0, 3]. Optimum (1.5, 0.5).
std::unique_ptr<CallbackNlp> theta_independent_toy();

// Generation-style residual whose nonlinear term survives at theta = 0 (a
// mis-assembled blend). The nonlinearity lives in redundant coordinates, so
// only the zero-convexity check trips.
std::unique_ptr<CallbackNlp> defective_blend_toy();

// Tiny LP: min -x - y  s.t.  x + y = 1,  x, y in [0, 1].
std::unique_ptr<CallbackNlp> lp_toy();

// Two-reservoir cascade with the bundled parameters and a configurable horizon.
model::CascadeSpec two_reservoir_spec(int step_count);

// Removes bounds from variables whose name starts with the prefix; they stay
// Proper, violating the bound split.
class StripBoundsNlp final : public nlp::ParametricNlp {
  public:
    StripBoundsNlp(const nlp::ParametricNlp& inner, const std::string& prefix);

    const std::vector<nlp::VariableDescriptor>& variables() const override { return vars_; }
    const std::vector<nlp::ConstraintDescriptor>& constraints() const override {
        return inner_.constraints();
    }
    double objective(const Eigen::VectorXd& x, double theta) const override {
        return inner_.objective(x, theta);
    }
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& g) const override {
        inner_.objective_gradient(x, theta, g);
    }
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& h) const override {
        inner_.objective_hessian(x, theta, h);
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
                                        double theta, Eigen::MatrixXd& h) const override {
        inner_.constraint_hessian_combination(x, lambda, theta, h);
    }

  private:
    const nlp::ParametricNlp& inner_;
    std::vector<nlp::VariableDescriptor> vars_;
};

// Appends an exact copy of one constraint row, breaking gradient independence.
class DuplicateConstraintNlp final : public nlp::ParametricNlp {
  public:
    DuplicateConstraintNlp(const nlp::ParametricNlp& inner, int row);

    const std::vector<nlp::VariableDescriptor>& variables() const override {
        return inner_.variables();
    }
    const std::vector<nlp::ConstraintDescriptor>& constraints() const override { return cons_; }
    double objective(const Eigen::VectorXd& x, double theta) const override {
        return inner_.objective(x, theta);
    }
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& g) const override {
        inner_.objective_gradient(x, theta, g);
    }
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& h) const override {
        inner_.objective_hessian(x, theta, h);
    }
    void constraint_residuals(const Eigen::VectorXd& x, double theta,
                              Eigen::VectorXd& out) const override;
    void constraint_jacobian(const Eigen::VectorXd& x, double theta,
                             Eigen::MatrixXd& jac) const override;
    void constraint_hessian_combination(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                        double theta, Eigen::MatrixXd& h) const override;

  private:
    const nlp::ParametricNlp& inner_;
    int row_;
    std::vector<nlp::ConstraintDescriptor> cons_;
};

// Adds theta * coefficient * x_i * x_j to the objective: clean at theta = 0,
// breaks the diagonal proper Hessian block for theta > 0.
class CrossTermNlp final : public nlp::ParametricNlp {
  public:
    CrossTermNlp(const nlp::ParametricNlp& inner, int i, int j, double coefficient = 1.0)
        : inner_(inner), i_(i), j_(j), coefficient_(coefficient) {}

    const std::vector<nlp::VariableDescriptor>& variables() const override {
        return inner_.variables();
    }
    const std::vector<nlp::ConstraintDescriptor>& constraints() const override {
        return inner_.constraints();
    }
    double objective(const Eigen::VectorXd& x, double theta) const override {
        return inner_.objective(x, theta) + theta * coefficient_ * x[i_] * x[j_];
    }
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& g) const override {
        inner_.objective_gradient(x, theta, g);
        g[i_] += theta * coefficient_ * x[j_];
        g[j_] += theta * coefficient_ * x[i_];
    }
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& h) const override {
        inner_.objective_hessian(x, theta, h);
        h(i_, j_) += theta * coefficient_;
        h(j_, i_) += theta * coefficient_;
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
                                        double theta, Eigen::MatrixXd& h) const override {
        inner_.constraint_hessian_combination(x, lambda, theta, h);
    }

  private:
    const nlp::ParametricNlp& inner_;
    int i_;
    int j_;
    double coefficient_;
};

}  // namespace hydro::testing
