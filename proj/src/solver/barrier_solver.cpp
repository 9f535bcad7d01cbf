#include "hydro/solver/barrier_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hydro/nlp/barrier.hpp"
#include "hydro/nlp/kkt.hpp"

namespace hydro::solver {

namespace {

void validate_problem(const nlp::ParametricNlp& nlp, const SolverOptions& options) {
    if (!(options.mu_min > 0.0) || !(options.mu_initial >= options.mu_min) ||
        !(options.mu_factor > 0.0 && options.mu_factor < 1.0) ||
        !(options.fraction_to_boundary > 0.0 && options.fraction_to_boundary < 1.0)) {
        throw std::invalid_argument("inconsistent solver options");
    }
    for (const auto& var : nlp.variables()) {
        if (var.lower && var.upper && !(*var.lower < *var.upper)) {
            std::ostringstream oss;
            oss << "variable " << var.name << " has infeasible bounds [" << *var.lower << ", "
                << *var.upper << "]";
            throw SolverError(SolverErrorKind::InvalidBounds, 0.0,
                              std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(), oss.str());
        }
    }
}

double fraction_to_boundary_step(const std::vector<nlp::VariableDescriptor>& variables,
                                 const Eigen::VectorXd& x, const Eigen::VectorXd& dx,
                                 double tau) {
    double alpha = 1.0;
    for (const auto& var : variables) {
        const double step = dx[var.index];
        if (var.lower && step < 0.0) {
            alpha = std::min(alpha, tau * (x[var.index] - *var.lower) / (-step));
        }
        if (var.upper && step > 0.0) {
            alpha = std::min(alpha, tau * (*var.upper - x[var.index]) / step);
        }
    }
    return alpha;
}

struct StageState {
    Eigen::VectorXd x;
    Eigen::VectorXd lambda;
    double kkt_norm = 0.0;
    int iterations = 0;
    double min_pivot_seen = std::numeric_limits<double>::infinity();
    double last_pivot = std::numeric_limits<double>::infinity();
    bool stalled_at_floor = false;
    double floor_bound = 0.0;
    std::vector<double> residual_history;
};

// Largest one-ulp sensitivity of a barrier stationarity row: the residual
// change caused by moving a bounded variable to its neighbouring double.
double representability_floor(const std::vector<nlp::VariableDescriptor>& variables,
                              const Eigen::VectorXd& x, double mu) {
    double floor = 0.0;
    for (const auto& var : variables) {
        if (!var.bounded()) continue;
        const double xi = x[var.index];
        double curvature = 0.0;
        if (var.lower) {
            const double d = xi - *var.lower;
            curvature += 1.0 / (d * d);
        }
        if (var.upper) {
            const double d = *var.upper - xi;
            curvature += 1.0 / (d * d);
        }
        const double ulp = std::nextafter(std::abs(xi), std::numeric_limits<double>::infinity()) -
                           std::abs(xi);
        floor = std::max(floor, mu * curvature * ulp);
    }
    return floor;
}

bool floor_stall_acceptable(const nlp::ParametricNlp& nlp, const Eigen::VectorXd& x,
                            double residual_norm, double mu, double theta,
                            const SolverOptions& options, double& floor_out) {
    floor_out = representability_floor(nlp.variables(), x, mu);
    if (residual_norm > 8.0 * floor_out) return false;
    if (nlp.num_constraints() > 0) {
        Eigen::VectorXd c(nlp.num_constraints());
        nlp.constraint_residuals(x, theta, c);
        if (c.lpNorm<Eigen::Infinity>() > options.kkt_tolerance) return false;
    }
    return true;
}

void run_stage(const nlp::ParametricNlp& nlp, double theta, double mu, StageState& state,
               const SolverOptions& options, KktFactorizer& factorizer) {
    const int n = nlp.num_variables();
    state.stalled_at_floor = false;
    state.floor_bound = 0.0;
    Eigen::VectorXd residual = nlp::kkt_residual(nlp, state.x, state.lambda, mu, theta);
    double norm = residual.lpNorm<Eigen::Infinity>();
    int iters = 0;
    while (norm > options.kkt_tolerance) {
        if (iters >= options.max_newton_iters) {
            double floor = 0.0;
            if (floor_stall_acceptable(nlp, state.x, norm, mu, theta, options, floor)) {
                state.stalled_at_floor = true;
                state.floor_bound = floor;
                break;
            }
            std::ostringstream oss;
            oss << "no convergence after " << iters << " Newton steps at mu=" << mu
                << " (||F||=" << norm << ", floor=" << floor << ")";
            throw SolverError(SolverErrorKind::MaxIterations, mu, state.min_pivot_seen,
                              state.last_pivot, oss.str());
        }
        const auto factored = factorizer.factor(state.x, state.lambda, mu, theta);
        state.min_pivot_seen = std::min(state.min_pivot_seen, factored.min_pivot);
        state.last_pivot = factored.min_pivot;
        if (factored.min_pivot < options.singularity_pivot_threshold) {
            std::ostringstream oss;
            oss << "KKT factorization pivot " << factored.min_pivot << " below threshold "
                << options.singularity_pivot_threshold << " at mu=" << mu;
            throw SolverError(SolverErrorKind::SingularKkt, mu, state.min_pivot_seen,
                              factored.min_pivot, oss.str());
        }
        const Eigen::VectorXd step = factorizer.solve(-residual);
        const Eigen::VectorXd dx = step.head(n);
        const Eigen::VectorXd dl = step.tail(step.size() - n);

        double alpha = std::min(
            1.0, fraction_to_boundary_step(nlp.variables(), state.x, dx,
                                           options.fraction_to_boundary));
        Eigen::VectorXd x_trial;
        Eigen::VectorXd lambda_trial;
        Eigen::VectorXd residual_trial;
        double norm_trial = std::numeric_limits<double>::infinity();
        for (;;) {
            x_trial = state.x + alpha * dx;
            lambda_trial = state.lambda + alpha * dl;
            bool usable = true;
            try {
                residual_trial = nlp::kkt_residual(nlp, x_trial, lambda_trial, mu, theta);
                norm_trial = residual_trial.lpNorm<Eigen::Infinity>();
                if (!std::isfinite(norm_trial)) usable = false;
            } catch (const nlp::BarrierDomainError&) {
                usable = false;
            } catch (const std::runtime_error&) {
                // Out-of-range model evaluation: treat like a rejected trial.
                usable = false;
            }
            if (usable && norm_trial < norm) break;
            alpha *= 0.5;
            if (alpha < options.min_step) {
                double floor = 0.0;
                if (floor_stall_acceptable(nlp, state.x, norm, mu, theta, options, floor)) {
                    state.stalled_at_floor = true;
                    state.floor_bound = floor;
                    state.kkt_norm = norm;
                    state.iterations = iters;
                    return;
                }
                std::ostringstream oss;
                oss << "line search step fell below " << options.min_step << " at mu=" << mu
                    << " (||F||=" << norm << ", floor=" << floor << ")";
                throw SolverError(SolverErrorKind::StepTooSmall, mu, state.min_pivot_seen,
                                  state.last_pivot, oss.str());
            }
        }
        state.x = x_trial;
        state.lambda = lambda_trial;
        residual = residual_trial;
        norm = norm_trial;
        ++iters;
        state.residual_history.push_back(norm);
    }
    state.kkt_norm = norm;
    state.iterations = iters;
}

}  // namespace

const char* to_string(SolverErrorKind kind) {
    switch (kind) {
        case SolverErrorKind::MaxIterations: return "MaxIterations";
        case SolverErrorKind::StepTooSmall: return "StepTooSmall";
        case SolverErrorKind::SingularKkt: return "SingularKKT";
        case SolverErrorKind::InvalidBounds: return "InvalidBounds";
    }
    return "unknown";
}

Eigen::VectorXd interior_initializer(const nlp::ParametricNlp& nlp) {
    Eigen::VectorXd x(nlp.num_variables());
    for (const auto& var : nlp.variables()) {
        if (var.lower && var.upper) {
            x[var.index] = 0.5 * (*var.lower + *var.upper);
        } else if (var.lower) {
            x[var.index] = *var.lower + 1.0;
        } else if (var.upper) {
            x[var.index] = *var.upper - 1.0;
        } else {
            x[var.index] = var.initial_hint.value_or(0.0);
        }
    }
    return x;
}

BarrierSolution solve_barrier(const nlp::ParametricNlp& nlp, double theta, double mu,
                              const Eigen::VectorXd& x0, const Eigen::VectorXd& lambda0,
                              const SolverOptions& options) {
    validate_problem(nlp, options);
    KktFactorizer factorizer(nlp);
    StageState state;
    state.x = x0;
    state.lambda = lambda0;
    run_stage(nlp, theta, mu, state, options, factorizer);

    BarrierSolution solution;
    solution.x = state.x;
    solution.lambda = state.lambda;
    solution.mu_final = mu;
    solution.kkt_norm = state.kkt_norm;
    solution.iterations = state.iterations;
    solution.max_iters_per_stage = state.iterations;
    solution.stalled_at_floor = state.stalled_at_floor;
    solution.floor_bound = state.floor_bound;
    solution.residual_history = std::move(state.residual_history);
    solution.solution_min_pivot = factorizer.factor(state.x, state.lambda, mu, theta).min_pivot;
    solution.min_pivot_seen = std::min(state.min_pivot_seen, solution.solution_min_pivot);
    return solution;
}

std::vector<double> mu_schedule(const SolverOptions& options) {
    std::vector<double> values;
    double mu = options.mu_initial;
    for (;;) {
        values.push_back(mu);
        if (mu <= options.mu_min) break;
        mu = std::max(mu * options.mu_factor, options.mu_min);
    }
    return values;
}

BarrierSolution solve_with_ladder(const nlp::ParametricNlp& nlp, double theta,
                                  const Eigen::VectorXd& x0, const Eigen::VectorXd& lambda0,
                                  MuLadder& ladder, const SolverOptions& options) {
    validate_problem(nlp, options);
    const std::vector<double> stages = mu_schedule(options);
    const bool warm = !ladder.empty() && ladder.mu_values == stages;

    KktFactorizer factorizer(nlp);
    StageState state;
    state.x = x0;
    state.lambda = lambda0;

    BarrierSolution solution;
    solution.min_pivot_seen = std::numeric_limits<double>::infinity();
    MuLadder next;
    next.mu_values = stages;
    next.x.reserve(stages.size());
    next.lambda.reserve(stages.size());

    for (size_t j = 0; j < stages.size(); ++j) {
        if (warm) {
            state.x = ladder.x[j];
            state.lambda = ladder.lambda[j];
        }
        state.residual_history.clear();
        run_stage(nlp, theta, stages[j], state, options, factorizer);
        next.x.push_back(state.x);
        next.lambda.push_back(state.lambda);
        solution.iterations += state.iterations;
        solution.max_iters_per_stage = std::max(solution.max_iters_per_stage, state.iterations);
        solution.min_pivot_seen = std::min(solution.min_pivot_seen, state.min_pivot_seen);
        solution.stalled_at_floor |= state.stalled_at_floor;
        solution.floor_bound = std::max(solution.floor_bound, state.floor_bound);
        solution.residual_history.insert(solution.residual_history.end(),
                                         state.residual_history.begin(),
                                         state.residual_history.end());
    }

    const double mu_final = stages.back();
    solution.x = state.x;
    solution.lambda = state.lambda;
    solution.mu_final = mu_final;
    solution.kkt_norm = state.kkt_norm;
    solution.solution_min_pivot =
        factorizer.factor(state.x, state.lambda, mu_final, theta).min_pivot;
    solution.min_pivot_seen = std::min(solution.min_pivot_seen, solution.solution_min_pivot);
    ladder = std::move(next);
    return solution;
}

BarrierSolution solve(const nlp::ParametricNlp& nlp, double theta, const Eigen::VectorXd& x0,
                      const Eigen::VectorXd& lambda0, const SolverOptions& options) {
    MuLadder scratch;
    return solve_with_ladder(nlp, theta, x0, lambda0, scratch, options);
}

}  // namespace hydro::solver
