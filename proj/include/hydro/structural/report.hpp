#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::structural {

struct CheckDetail {
    std::string check;  // "bnd", "lin", "objective_form", "lemma1", "lemma2"
    bool pass = true;
    std::string info;
    std::map<std::string, double> data;  // sampled theta, ranks, pivots, deviations
};

struct BndResult {
    bool pass = true;
    std::vector<CheckDetail> details;
};

// BND: every proper variable carries at least one bound, no redundant
// variable carries any.
BndResult check_bnd(const nlp::ParametricNlp& nlp);

struct LinResult {
    bool lin_ok = true;             // constraints affine at theta = 0
    bool objective_form_ok = true;  // separable objective, convex at theta = 0
    std::vector<CheckDetail> details;

    bool pass() const { return lin_ok && objective_form_ok; }
};

// Samples the theta = 0 constraint Jacobian at interior points (affinity up to
// 1e-8 entrywise) and checks the objective Hessian structure at theta = 0.
LinResult check_lin_and_zero_convexity(const nlp::ParametricNlp& nlp);

struct Lemma1Result {
    bool independence = false;  // all constraint gradients linearly independent
    bool span = false;          // defining rows cover the redundant coordinates
    int rank = 0;
    int expected_rank = 0;
    int span_rank = 0;
    int span_expected = 0;
    double tolerance = 0.0;
};

Lemma1Result check_lemma1(const nlp::ParametricNlp& nlp, const Eigen::VectorXd& x, double theta);

struct Lemma2Result {
    bool pass = false;
    bool cross_block_zero = false;    // proper-redundant coupling absent
    bool proper_block_diagonal = false;
    bool proper_diagonal_nonzero = false;
    std::string info;
};

// Verifies the Lagrangian-Hessian block structure: zero cross blocks and a
// diagonal, nonsingular proper block. Accepts mu = 0 (drops the barrier, which
// is exactly what makes the proper block singular for a linear objective).
Lemma2Result check_lemma2(const nlp::ParametricNlp& nlp, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& lambda, double mu, double theta);

struct StructuralReport {
    bool bnd_ok = false;
    bool lin_ok = false;
    bool ind_ok = false;
    bool zero_convex_ok = false;
    bool lemma1_independence_ok = false;
    bool lemma1_span_ok = false;
    bool lemma2_block_ok = false;
    std::vector<CheckDetail> details;

    bool all_ok() const {
        return bnd_ok && lin_ok && ind_ok && zero_convex_ok && lemma1_independence_ok &&
               lemma1_span_ok && lemma2_block_ok;
    }
};

// Runs every check over `samples` interior points and theta in {0, 0.5, 1}.
StructuralReport full_report(const nlp::ParametricNlp& nlp, int samples);

}  // namespace hydro::structural
