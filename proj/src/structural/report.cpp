#include "hydro/structural/report.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hydro/nlp/kkt.hpp"
#include "hydro/nlp/sampling.hpp"

namespace hydro::structural {

namespace {

constexpr std::uint64_t kSamplerSeed = 0x5eed5eedULL;

int numerical_rank(const Eigen::MatrixXd& m, double tolerance) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
    int rank = 0;
    const int limit = static_cast<int>(std::min(m.rows(), m.cols()));
    for (int i = 0; i < limit; ++i) {
        if (diag[i] > tolerance) ++rank;
    }
    return rank;
}

}  // namespace

BndResult check_bnd(const nlp::ParametricNlp& nlp) {
    BndResult result;
    for (const auto& var : nlp.variables()) {
        if (var.kind == nlp::VariableKind::Proper && !var.bounded()) {
            result.pass = false;
            result.details.push_back(
                {"bnd", false, "proper variable " + var.name + " has no bounds", {}});
        }
        if (var.kind == nlp::VariableKind::Redundant && var.bounded()) {
            result.pass = false;
            result.details.push_back(
                {"bnd", false, "redundant variable " + var.name + " carries bounds", {}});
        }
    }
    if (result.pass) {
        result.details.push_back({"bnd", true, "proper/redundant bound split holds", {}});
    }
    return result;
}

LinResult check_lin_and_zero_convexity(const nlp::ParametricNlp& nlp) {
    LinResult result;
    constexpr int kPoints = 10;
    constexpr double kAffinityTol = 1e-8;
    nlp::Rng rng(kSamplerSeed);

    const int n = nlp.num_variables();
    const int ell = nlp.num_constraints();
    Eigen::MatrixXd low = Eigen::MatrixXd::Constant(ell, n,
                                                    std::numeric_limits<double>::infinity());
    Eigen::MatrixXd high = Eigen::MatrixXd::Constant(ell, n,
                                                     -std::numeric_limits<double>::infinity());
    bool objective_form_ok = true;
    std::string objective_info;
    double worst_eigenvalue = 0.0;

    for (int s = 0; s < kPoints; ++s) {
        const Eigen::VectorXd x = nlp::sample_interior_point(nlp, rng);
        Eigen::MatrixXd jac;
        nlp.constraint_jacobian(x, 0.0, jac);
        low = low.cwiseMin(jac);
        high = high.cwiseMax(jac);

        Eigen::MatrixXd hess;
        nlp.objective_hessian(x, 0.0, hess);
        for (const auto& var : nlp.variables()) {
            if (var.kind != nlp::VariableKind::Proper) continue;
            const int i = var.index;
            if (hess(i, i) < 0.0) {
                objective_form_ok = false;
                objective_info = "negative curvature on proper variable " + var.name;
            }
            for (int j = 0; j < n; ++j) {
                if (j != i && hess(i, j) != 0.0) {
                    objective_form_ok = false;
                    objective_info = "off-diagonal objective coupling on " + var.name;
                }
            }
        }
        // Convexity evidence for the redundant part at theta = 0.
        std::vector<int> redundant;
        for (const auto& var : nlp.variables()) {
            if (var.kind == nlp::VariableKind::Redundant) redundant.push_back(var.index);
        }
        if (!redundant.empty()) {
            Eigen::MatrixXd rr(redundant.size(), redundant.size());
            for (size_t a = 0; a < redundant.size(); ++a) {
                for (size_t b = 0; b < redundant.size(); ++b) {
                    rr(a, b) = hess(redundant[a], redundant[b]);
                }
            }
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rr);
            const double min_eig = eig.eigenvalues().minCoeff();
            worst_eigenvalue = std::min(worst_eigenvalue, min_eig);
            if (min_eig < -1e-8) {
                objective_form_ok = false;
                objective_info = "redundant objective block not convex at theta = 0";
            }
        }
    }

    const double deviation = ell > 0 ? (high - low).maxCoeff() : 0.0;
    result.lin_ok = deviation <= kAffinityTol;
    {
        CheckDetail d;
        d.check = "lin";
        d.pass = result.lin_ok;
        d.info = result.lin_ok ? "constraint Jacobian constant at theta = 0"
                               : "constraint Jacobian varies at theta = 0";
        d.data["max_jacobian_deviation"] = deviation;
        d.data["points"] = kPoints;
        result.details.push_back(std::move(d));
    }
    result.objective_form_ok = objective_form_ok;
    {
        CheckDetail d;
        d.check = "objective_form";
        d.pass = objective_form_ok;
        d.info = objective_form_ok ? "objective separable and convex at theta = 0"
                                   : objective_info;
        d.data["min_redundant_eigenvalue"] = worst_eigenvalue;
        result.details.push_back(std::move(d));
    }
    return result;
}

Lemma1Result check_lemma1(const nlp::ParametricNlp& nlp, const Eigen::VectorXd& x,
                          double theta) {
    Lemma1Result result;
    Eigen::MatrixXd jac;
    nlp.constraint_jacobian(x, theta, jac);
    result.tolerance = 1e-10 * std::max(1.0, jac.norm());
    result.expected_rank = nlp.num_constraints();
    result.rank = numerical_rank(jac, result.tolerance);
    result.independence = result.rank == result.expected_rank;

    std::vector<int> defining_rows;
    for (const auto& c : nlp.constraints()) {
        if (c.family == nlp::ConstraintFamily::LevelVolume ||
            c.family == nlp::ConstraintFamily::HeadDifference ||
            c.family == nlp::ConstraintFamily::FlowAlias) {
            defining_rows.push_back(c.index);
        }
    }
    std::vector<int> redundant_cols;
    for (const auto& var : nlp.variables()) {
        if (var.kind == nlp::VariableKind::Redundant) redundant_cols.push_back(var.index);
    }
    result.span_expected = static_cast<int>(redundant_cols.size());
    if (redundant_cols.empty()) {
        result.span = true;
        return result;
    }
    if (defining_rows.empty()) {
        result.span = false;
        return result;
    }
    Eigen::MatrixXd sub(defining_rows.size(), redundant_cols.size());
    for (size_t r = 0; r < defining_rows.size(); ++r) {
        for (size_t c = 0; c < redundant_cols.size(); ++c) {
            sub(r, c) = jac(defining_rows[r], redundant_cols[c]);
        }
    }
    result.span_rank = numerical_rank(sub, result.tolerance);
    result.span = result.span_rank == result.span_expected;
    return result;
}

Lemma2Result check_lemma2(const nlp::ParametricNlp& nlp, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& lambda, double mu, double theta) {
    Lemma2Result result;
    const Eigen::MatrixXd hess = nlp::lagrangian_hessian(nlp, x, lambda, mu, theta);
    result.cross_block_zero = true;
    result.proper_block_diagonal = true;
    result.proper_diagonal_nonzero = true;
    std::ostringstream info;
    const auto& vars = nlp.variables();
    for (const auto& a : vars) {
        for (const auto& b : vars) {
            const double entry = hess(a.index, b.index);
            const bool a_proper = a.kind == nlp::VariableKind::Proper;
            const bool b_proper = b.kind == nlp::VariableKind::Proper;
            if (a_proper != b_proper && entry != 0.0 && result.cross_block_zero) {
                result.cross_block_zero = false;
                info << "nonzero cross entry (" << a.name << ", " << b.name << ") = " << entry
                     << "; ";
            }
            if (a_proper && b_proper && a.index != b.index && entry != 0.0 &&
                result.proper_block_diagonal) {
                result.proper_block_diagonal = false;
                info << "nonzero proper off-diagonal (" << a.name << ", " << b.name
                     << ") = " << entry << "; ";
            }
        }
        if (a.kind == nlp::VariableKind::Proper && hess(a.index, a.index) == 0.0 &&
            result.proper_diagonal_nonzero) {
            result.proper_diagonal_nonzero = false;
            info << "zero proper diagonal at " << a.name << "; ";
        }
    }
    result.pass = result.cross_block_zero && result.proper_block_diagonal &&
                  result.proper_diagonal_nonzero;
    result.info = info.str();
    return result;
}

StructuralReport full_report(const nlp::ParametricNlp& nlp, int samples) {
    if (samples < 1) {
        throw std::invalid_argument("full_report requires at least one sample");
    }
    StructuralReport report;

    const BndResult bnd = check_bnd(nlp);
    report.bnd_ok = bnd.pass;
    report.details.insert(report.details.end(), bnd.details.begin(), bnd.details.end());

    const LinResult lin = check_lin_and_zero_convexity(nlp);
    report.lin_ok = lin.lin_ok;
    report.zero_convex_ok = lin.pass();
    report.details.insert(report.details.end(), lin.details.begin(), lin.details.end());

    const double thetas[] = {0.0, 0.5, 1.0};
    nlp::Rng rng(kSamplerSeed + 1);
    report.lemma1_independence_ok = true;
    report.lemma1_span_ok = true;
    report.lemma2_block_ok = true;
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXd x = nlp::sample_interior_point(nlp, rng);
        Eigen::VectorXd lambda(nlp.num_constraints());
        for (int k = 0; k < lambda.size(); ++k) {
            lambda[k] = rng.uniform(-1.0, 1.0);
        }
        for (double theta : thetas) {
            const Lemma1Result l1 = check_lemma1(nlp, x, theta);
            report.lemma1_independence_ok &= l1.independence;
            report.lemma1_span_ok &= l1.span;
            {
                CheckDetail d;
                d.check = "lemma1";
                d.pass = l1.independence && l1.span;
                d.info = "constraint gradient independence and redundant span";
                d.data["sample"] = s;
                d.data["theta"] = theta;
                d.data["rank"] = l1.rank;
                d.data["expected_rank"] = l1.expected_rank;
                d.data["span_rank"] = l1.span_rank;
                d.data["span_expected"] = l1.span_expected;
                d.data["tolerance"] = l1.tolerance;
                report.details.push_back(std::move(d));
            }
            const Lemma2Result l2 = check_lemma2(nlp, x, lambda, 1.0, theta);
            report.lemma2_block_ok &= l2.pass;
            {
                CheckDetail d;
                d.check = "lemma2";
                d.pass = l2.pass;
                d.info = l2.pass ? "Hessian block structure holds" : l2.info;
                d.data["sample"] = s;
                d.data["theta"] = theta;
                report.details.push_back(std::move(d));
            }
        }
    }
    report.ind_ok = report.lemma1_independence_ok;
    return report;
}

}  // namespace hydro::structural
