#include "hydro/solver/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hydro/nlp/barrier.hpp"
#include "hydro/nlp/kkt.hpp"

namespace hydro::solver {

void BandedLu::reset(int n, int bandwidth) {
    n_ = n;
    band_ = bandwidth;
    ab_.assign(static_cast<size_t>(n) * stride(), 0.0);
    pivot_row_.assign(n, 0);
    factored_ = false;
}

void BandedLu::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedLu::add(int i, int j, double value) { ab_[offset(i, j)] += value; }

double& BandedLu::entry(int i, int j) { return ab_[offset(i, j)]; }

Eigen::VectorXd BandedLu::equilibrate(int sweeps) {
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(n_);
    Eigen::VectorXd row_max(n_);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        row_max.setZero();
        for (int j = 0; j < n_; ++j) {
            const int i_lo = std::max(0, j - band_);
            const int i_hi = std::min(n_ - 1, j + band_);
            for (int i = i_lo; i <= i_hi; ++i) {
                row_max[i] = std::max(row_max[i], std::abs(ab_[offset(i, j)]));
            }
        }
        for (int i = 0; i < n_; ++i) {
            row_max[i] = row_max[i] > 0.0 ? 1.0 / std::sqrt(row_max[i]) : 1.0;
            scale[i] *= row_max[i];
        }
        for (int j = 0; j < n_; ++j) {
            const int i_lo = std::max(0, j - band_);
            const int i_hi = std::min(n_ - 1, j + band_);
            for (int i = i_lo; i <= i_hi; ++i) {
                ab_[offset(i, j)] *= row_max[i] * row_max[j];
            }
        }
    }
    return scale;
}

void BandedLu::factor() {
    min_pivot_ = std::numeric_limits<double>::infinity();
    const int fill_band = 2 * band_;
    for (int j = 0; j < n_; ++j) {
        const int last_row = std::min(n_ - 1, j + band_);
        int p = j;
        double best = std::abs(ab_[offset(j, j)]);
        for (int i = j + 1; i <= last_row; ++i) {
            const double a = std::abs(ab_[offset(i, j)]);
            if (a > best) {
                best = a;
                p = i;
            }
        }
        pivot_row_[j] = p;
        min_pivot_ = std::min(min_pivot_, best);

        const int last_col = std::min(n_ - 1, j + fill_band);
        if (p != j) {
            for (int c = j; c <= last_col; ++c) {
                std::swap(ab_[offset(j, c)], ab_[offset(p, c)]);
            }
        }
        const double pivot = ab_[offset(j, j)];
        if (pivot == 0.0) {
            continue;  // structurally singular column; pivot 0 already recorded
        }
        for (int i = j + 1; i <= last_row; ++i) {
            const double l = ab_[offset(i, j)] / pivot;
            ab_[offset(i, j)] = l;
            if (l == 0.0) continue;
            for (int c = j + 1; c <= last_col; ++c) {
                ab_[offset(i, c)] -= l * ab_[offset(j, c)];
            }
        }
    }
    if (n_ == 0) {
        min_pivot_ = 0.0;
    }
    factored_ = true;
}

void BandedLu::solve_in_place(Eigen::VectorXd& b) const {
    if (!factored_) {
        throw std::logic_error("BandedLu::solve_in_place called before factor()");
    }
    const int fill_band = 2 * band_;
    for (int j = 0; j < n_; ++j) {
        if (pivot_row_[j] != j) {
            std::swap(b[j], b[pivot_row_[j]]);
        }
        const int last_row = std::min(n_ - 1, j + band_);
        for (int i = j + 1; i <= last_row; ++i) {
            b[i] -= ab_[j * stride() + 2 * band_ + i - j] * b[j];
        }
    }
    for (int j = n_ - 1; j >= 0; --j) {
        const int last_col = std::min(n_ - 1, j + fill_band);
        double sum = b[j];
        for (int c = j + 1; c <= last_col; ++c) {
            sum -= ab_[offset(j, c)] * b[c];
        }
        b[j] = sum / ab_[offset(j, j)];
    }
}

namespace {

Eigen::VectorXd ruiz_scale_dense(Eigen::MatrixXd& m, int sweeps) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) {
            const double row_max = m.row(i).cwiseAbs().maxCoeff();
            d[i] = row_max > 0.0 ? 1.0 / std::sqrt(row_max) : 1.0;
        }
        m = d.asDiagonal() * m * d.asDiagonal();
        scale = scale.cwiseProduct(d);
    }
    return scale;
}

}  // namespace

Eigen::VectorXd DenseFactorization::solve(const Eigen::VectorXd& rhs) const {
    const Eigen::VectorXd scaled = scale.cwiseProduct(rhs);
    return scale.cwiseProduct(lu.solve(scaled));
}

DenseFactorization dense_factor(const Eigen::MatrixXd& matrix) {
    DenseFactorization f;
    Eigen::MatrixXd scaled = matrix;
    f.scale = ruiz_scale_dense(scaled, 3);
    f.lu.compute(scaled);
    f.min_pivot = scaled.rows() > 0 ? f.lu.matrixLU().diagonal().cwiseAbs().minCoeff() : 0.0;
    return f;
}

double dense_min_pivot(const Eigen::MatrixXd& matrix) { return dense_factor(matrix).min_pivot; }

KktFactorizer::KktFactorizer(const nlp::ParametricNlp& nlp) : nlp_(nlp) {
    const int n = nlp.num_variables();
    const int ell = nlp.num_constraints();
    position_.assign(n + ell, 0);

    bool time_indexed = n > 0;
    for (const auto& v : nlp.variables()) {
        if (v.time_step < 1) time_indexed = false;
    }
    for (const auto& c : nlp.constraints()) {
        if (c.time_step < 1) time_indexed = false;
    }
    if (!time_indexed) {
        for (int u = 0; u < n + ell; ++u) position_[u] = u;
        banded_ = false;
        return;
    }

    // Interleave per timestep: variables of step j, then multipliers of step j.
    std::vector<std::pair<long long, int>> order;
    order.reserve(n + ell);
    for (const auto& v : nlp.variables()) {
        order.emplace_back((static_cast<long long>(v.time_step) << 32) | (0LL << 31) | v.index,
                           v.index);
    }
    for (const auto& c : nlp.constraints()) {
        order.emplace_back((static_cast<long long>(c.time_step) << 32) | (1LL << 31) | c.index,
                           n + c.index);
    }
    std::sort(order.begin(), order.end());
    for (int slot = 0; slot < static_cast<int>(order.size()); ++slot) {
        position_[order[slot].second] = slot;
    }

    // Bandwidth from the structural pattern: within-step coupling plus the
    // mass-balance link to the previous step's volumes.
    int max_step_span = 0;
    std::vector<int> step_count;
    for (const auto& v : nlp.variables()) {
        if (v.time_step >= static_cast<int>(step_count.size())) {
            step_count.resize(v.time_step + 1, 0);
        }
        step_count[v.time_step]++;
    }
    for (const auto& c : nlp.constraints()) {
        if (c.time_step >= static_cast<int>(step_count.size())) {
            step_count.resize(c.time_step + 1, 0);
        }
        step_count[c.time_step]++;
    }
    for (int count : step_count) max_step_span = std::max(max_step_span, count);
    banded_ = true;
    band_.reset(n + ell, 2 * max_step_span);
}

KktFactorizer::Result KktFactorizer::factor(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& lambda, double mu,
                                            double theta) {
    const int n = nlp_.num_variables();
    Result result;
    if (banded_) {
        band_.zero();
        nlp_.hessian_triplets(x, lambda, theta, scratch_);
        for (const auto& t : scratch_) {
            band_.add(position_[t.row], position_[t.col], t.value);
        }
        const nlp::BarrierTerms barrier = nlp::barrier_terms(nlp_.variables(), x);
        for (int i = 0; i < n; ++i) {
            if (barrier.hessian_diagonal[i] != 0.0) {
                band_.add(position_[i], position_[i], mu * barrier.hessian_diagonal[i]);
            }
        }
        nlp_.jacobian_triplets(x, theta, scratch_);
        for (const auto& t : scratch_) {
            band_.add(position_[n + t.row], position_[t.col], t.value);
            band_.add(position_[t.col], position_[n + t.row], t.value);
        }
        band_scale_ = band_.equilibrate();
        band_.factor();
        result.min_pivot = band_.min_pivot();
        return result;
    }

    const int ell = nlp_.num_constraints();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + ell, n + ell);
    kkt.topLeftCorner(n, n) = nlp::lagrangian_hessian(nlp_, x, lambda, mu, theta);
    if (ell > 0) {
        Eigen::MatrixXd jac;
        nlp_.constraint_jacobian(x, theta, jac);
        kkt.bottomLeftCorner(ell, n) = jac;
        kkt.topRightCorner(n, ell) = jac.transpose();
    }
    dense_ = dense_factor(kkt);
    result.min_pivot = dense_.min_pivot;
    return result;
}

Eigen::VectorXd KktFactorizer::solve(const Eigen::VectorXd& rhs) const {
    if (!banded_) {
        return dense_.solve(rhs);
    }
    const int m = static_cast<int>(rhs.size());
    Eigen::VectorXd permuted(m);
    for (int u = 0; u < m; ++u) {
        permuted[position_[u]] = rhs[u];
    }
    permuted = permuted.cwiseProduct(band_scale_);
    band_.solve_in_place(permuted);
    permuted = permuted.cwiseProduct(band_scale_);
    Eigen::VectorXd out(m);
    for (int u = 0; u < m; ++u) {
        out[u] = permuted[position_[u]];
    }
    return out;
}

}  // namespace hydro::solver
