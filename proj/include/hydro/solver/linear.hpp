#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::solver {

/**
 * LU factorization with partial pivoting of a band matrix, LAPACK-style
 * storage (kl extra superdiagonals for pivoting fill). Deterministic: pivot
 * choice depends only on the matrix values.
 */
class BandedLu {
  public:
    void reset(int n, int bandwidth);  // kl = ku = bandwidth
    void zero();
    void add(int i, int j, double value);
    double& entry(int i, int j);

    // Scales rows/columns toward unit max-norm; returns the symmetric scale
    // factors. Fixed sweep count keeps the result deterministic.
    Eigen::VectorXd equilibrate(int sweeps = 3);

    void factor();
    double min_pivot() const { return min_pivot_; }
    void solve_in_place(Eigen::VectorXd& b) const;

    int size() const { return n_; }
    int bandwidth() const { return band_; }

  private:
    int stride() const { return 3 * band_ + 1; }
    int offset(int i, int j) const { return j * stride() + 2 * band_ + i - j; }

    int n_ = 0;
    int band_ = 0;
    std::vector<double> ab_;
    std::vector<int> pivot_row_;
    double min_pivot_ = 0.0;
    bool factored_ = false;
};

struct DenseFactorization {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd scale;
    double min_pivot = 0.0;

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
};

// Equilibrates (symmetric Ruiz) and factors a dense symmetric matrix.
DenseFactorization dense_factor(const Eigen::MatrixXd& matrix);

/**
 * Session-scoped KKT factorizer. For time-indexed problems the unknowns are
 * interleaved per timestep (variables then multipliers), which keeps the
 * system banded; static problems fall back to the dense path. Both paths
 * report the smallest absolute pivot of the equilibrated factorization, the
 * singularity monitor used for critical-point detection.
 */
class KktFactorizer {
  public:
    explicit KktFactorizer(const nlp::ParametricNlp& nlp);

    struct Result {
        double min_pivot = 0.0;
    };

    // Assembles hess(L_mu) and jac(c) at the iterate and factors the KKT matrix.
    Result factor(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda, double mu,
                  double theta);

    // Solves for the Newton step; rhs and result use the (x, lambda) ordering.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

    bool banded() const { return banded_; }
    int bandwidth() const { return band_.bandwidth(); }

  private:
    const nlp::ParametricNlp& nlp_;
    std::vector<int> position_;  // original unknown -> permuted slot
    bool banded_ = false;

    BandedLu band_;
    Eigen::VectorXd band_scale_;
    DenseFactorization dense_;
    mutable std::vector<nlp::Triplet> scratch_;
};

// Smallest equilibrated pivot of an externally assembled dense KKT matrix.
double dense_min_pivot(const Eigen::MatrixXd& matrix);

}  // namespace hydro::solver
