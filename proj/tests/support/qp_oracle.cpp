#include "support/qp_oracle.hpp"

#include <Eigen/QR>
#include <cmath>

namespace hydro::testing {

BoxQp random_box_qp(nlp::Rng& rng) {
    BoxQp qp;
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 19.0));  // 2..20
    const int max_ell = std::min(10, n - 1);
    const int ell = static_cast<int>(rng.uniform(0.0, max_ell + 1.0));

    qp.d.resize(n);
    qp.b.resize(n);
    qp.lower.assign(n, std::nullopt);
    qp.upper.assign(n, std::nullopt);
    for (int i = 0; i < n; ++i) {
        qp.d[i] = rng.uniform(0.5, 3.0);
        qp.b[i] = rng.uniform(-2.0, 2.0);
    }
    const int bounded = std::min(8, n);
    for (int i = 0; i < bounded; ++i) {
        const double lo = rng.uniform(-2.0, 0.0);
        const double hi = rng.uniform(0.5, 2.5);
        switch (i % 3) {
            case 0:
                qp.lower[i] = lo;
                qp.upper[i] = hi;
                break;
            case 1:
                qp.lower[i] = lo;
                break;
            default:
                qp.upper[i] = hi;
                break;
        }
    }

    for (;;) {
        qp.a.resize(ell, n);
        for (int r = 0; r < ell; ++r) {
            for (int c = 0; c < n; ++c) {
                qp.a(r, c) = rng.uniform(-1.0, 1.0);
            }
        }
        if (ell == 0 || Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(qp.a).rank() == ell) break;
    }

    // Strictly interior feasible point defines the right-hand side.
    Eigen::VectorXd interior(n);
    for (int i = 0; i < n; ++i) {
        if (qp.lower[i] && qp.upper[i]) {
            interior[i] = *qp.lower[i] + (*qp.upper[i] - *qp.lower[i]) * rng.uniform(0.3, 0.7);
        } else if (qp.lower[i]) {
            interior[i] = *qp.lower[i] + rng.uniform(0.5, 1.5);
        } else if (qp.upper[i]) {
            interior[i] = *qp.upper[i] - rng.uniform(0.5, 1.5);
        } else {
            interior[i] = rng.uniform(-1.0, 1.0);
        }
    }
    qp.rhs = qp.a * interior;
    return qp;
}

std::unique_ptr<CallbackNlp> qp_to_nlp(const BoxQp& qp) {
    auto toy = std::make_unique<CallbackNlp>();
    for (int i = 0; i < qp.n(); ++i) {
        nlp::VariableDescriptor v;
        v.index = i;
        const bool bounded = qp.lower[i].has_value() || qp.upper[i].has_value();
        v.kind = bounded ? nlp::VariableKind::Proper : nlp::VariableKind::Redundant;
        v.lower = qp.lower[i];
        v.upper = qp.upper[i];
        v.name = "x" + std::to_string(i);
        toy->vars.push_back(v);
    }
    for (int r = 0; r < qp.ell(); ++r) {
        nlp::ConstraintDescriptor c;
        c.index = r;
        c.family = nlp::ConstraintFamily::General;
        c.name = "eq" + std::to_string(r);
        toy->cons.push_back(c);
    }
    toy->obj = [qp](const Eigen::VectorXd& x, double) {
        return 0.5 * x.dot(qp.d.cwiseProduct(x)) + qp.b.dot(x);
    };
    toy->obj_grad = [qp](const Eigen::VectorXd& x, double, Eigen::VectorXd& g) {
        g = qp.d.cwiseProduct(x) + qp.b;
    };
    toy->obj_hess = [qp](const Eigen::VectorXd& x, double, Eigen::MatrixXd& h) {
        h.setZero(x.size(), x.size());
        h.diagonal() = qp.d;
    };
    for (int r = 0; r < qp.ell(); ++r) {
        toy->c_val.push_back([qp, r](const Eigen::VectorXd& x, double) {
            return qp.a.row(r).dot(x) - qp.rhs[r];
        });
        toy->c_row.push_back([qp, r](const Eigen::VectorXd&, double, Eigen::VectorXd& row) {
            row = qp.a.row(r).transpose();
        });
        toy->c_hess.push_back(CallbackNlp::Hessian{});
    }
    return toy;
}

std::optional<Eigen::VectorXd> solve_active_set(const BoxQp& qp) {
    const int n = qp.n();
    const int ell = qp.ell();
    constexpr double kTol = 1e-9;

    std::vector<int> bounded;
    for (int i = 0; i < n; ++i) {
        if (qp.lower[i] || qp.upper[i]) bounded.push_back(i);
    }

    // Mixed-radix enumeration: 0 = free, 1 = at lower, 2 = at upper.
    std::vector<int> state(bounded.size(), 0);
    for (;;) {
        bool valid_assignment = true;
        std::vector<double> fixed_value(n, 0.0);
        std::vector<bool> fixed(n, false);
        for (size_t k = 0; k < bounded.size(); ++k) {
            const int i = bounded[k];
            if (state[k] == 1) {
                if (!qp.lower[i]) {
                    valid_assignment = false;
                    break;
                }
                fixed[i] = true;
                fixed_value[i] = *qp.lower[i];
            } else if (state[k] == 2) {
                if (!qp.upper[i]) {
                    valid_assignment = false;
                    break;
                }
                fixed[i] = true;
                fixed_value[i] = *qp.upper[i];
            }
        }

        if (valid_assignment) {
            std::vector<int> free_idx;
            for (int i = 0; i < n; ++i) {
                if (!fixed[i]) free_idx.push_back(i);
            }
            const int nf = static_cast<int>(free_idx.size());

            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nf + ell, nf + ell);
            Eigen::VectorXd rhs(nf + ell);
            for (int a = 0; a < nf; ++a) {
                kkt(a, a) = qp.d[free_idx[a]];
                rhs[a] = -qp.b[free_idx[a]];
            }
            for (int r = 0; r < ell; ++r) {
                double shift = qp.rhs[r];
                for (int i = 0; i < n; ++i) {
                    if (fixed[i]) shift -= qp.a(r, i) * fixed_value[i];
                }
                rhs[nf + r] = shift;
                for (int a = 0; a < nf; ++a) {
                    kkt(nf + r, a) = qp.a(r, free_idx[a]);
                    kkt(a, nf + r) = qp.a(r, free_idx[a]);
                }
            }

            Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
            if (lu.isInvertible()) {
                const Eigen::VectorXd sol = lu.solve(rhs);
                Eigen::VectorXd x(n);
                for (int a = 0; a < nf; ++a) x[free_idx[a]] = sol[a];
                for (int i = 0; i < n; ++i) {
                    if (fixed[i]) x[i] = fixed_value[i];
                }
                const Eigen::VectorXd lambda = sol.tail(ell);

                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    if (fixed[i]) continue;
                    if (qp.lower[i] && x[i] < *qp.lower[i] - kTol) ok = false;
                    if (qp.upper[i] && x[i] > *qp.upper[i] + kTol) ok = false;
                }
                if (ok) {
                    const Eigen::VectorXd stationarity =
                        qp.d.cwiseProduct(x) + qp.b + qp.a.transpose() * lambda;
                    for (size_t k = 0; k < bounded.size() && ok; ++k) {
                        const int i = bounded[k];
                        if (state[k] == 1 && stationarity[i] < -kTol) ok = false;
                        if (state[k] == 2 && stationarity[i] > kTol) ok = false;
                    }
                }
                if (ok) return x;
            }
        }

        size_t digit = 0;
        while (digit < state.size()) {
            if (++state[digit] <= 2) break;
            state[digit] = 0;
            ++digit;
        }
        if (digit == state.size()) break;
    }
    return std::nullopt;
}

}  // namespace hydro::testing
