#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydro/nlp/parametric_nlp.hpp"
#include "hydro/solver/linear.hpp"

namespace hydro::solver {

struct SolverOptions {
    double mu_initial = 1.0;
    double mu_factor = 0.2;   // geometric decrease per barrier stage
    double mu_min = 1e-9;
    double kkt_tolerance = 1e-8;
    int max_newton_iters = 50;  // per barrier stage
    double fraction_to_boundary = 0.995;
    double min_step = 1e-12;
    double singularity_pivot_threshold = 1e-12;
};

enum class SolverErrorKind { MaxIterations, StepTooSmall, SingularKkt, InvalidBounds };

class SolverError : public std::runtime_error {
  public:
    SolverError(SolverErrorKind kind, double mu, double min_pivot_seen, double last_pivot,
                const std::string& what)
        : std::runtime_error(what),
          kind(kind),
          mu(mu),
          min_pivot_seen(min_pivot_seen),
          last_pivot(last_pivot) {}

    SolverErrorKind kind;
    double mu;
    double min_pivot_seen;  // smallest pivot over the whole attempt
    double last_pivot;      // pivot of the factorization nearest the failure
};

const char* to_string(SolverErrorKind kind);

struct BarrierSolution {
    Eigen::VectorXd x;
    Eigen::VectorXd lambda;
    double mu_final = 0.0;
    double kkt_norm = 0.0;           // final ||F_mu||_inf
    int iterations = 0;              // accepted Newton steps, all stages
    double min_pivot_seen = 0.0;     // smallest pivot across every factorization
    double solution_min_pivot = 0.0; // pivot of the factorization at the solution
    int max_iters_per_stage = 0;
    // A stage may stop above kkt_tolerance when the residual reaches the
    // representability floor: near an active bound at distance d = mu/z, one
    // ulp of x already moves the stationarity row by mu/d^2 * ulp(x), so no
    // representable iterate can do better. Constraint rows must still meet the
    // tolerance for the stall to be accepted. x remains accurate to roundoff.
    bool stalled_at_floor = false;
    double floor_bound = 0.0;        // one-ulp sensitivity bound at the solution
    // ||F||_inf after every accepted step, in order; bitwise-reproducible.
    std::vector<double> residual_history;
};

/**
 * Strictly interior starting point: box-bounded variables at their midpoint
 * (or one unit inside a single bound); unbounded variables at the assembler's
 * forward-propagated hint (volumes from initial levels, head differences from
 * initial levels, flow aliases mirroring the flow midpoint), zero without one.
 */
Eigen::VectorXd interior_initializer(const nlp::ParametricNlp& nlp);

/**
 * Damped Newton iteration on F_mu = 0 for a single barrier stage. Steps are
 * capped by the fraction-to-boundary rule and halved until the residual
 * max-norm decreases. Fails with MaxIterations, StepTooSmall, or SingularKkt
 * (pivot below the threshold, the critical-point symptom).
 */
BarrierSolution solve_barrier(const nlp::ParametricNlp& nlp, double theta, double mu,
                              const Eigen::VectorXd& x0, const Eigen::VectorXd& lambda0,
                              const SolverOptions& options = {});

/**
 * Full interior-point solve: runs solve_barrier over the geometric mu
 * schedule down to mu_min, warm-starting every stage from the previous one.
 */
BarrierSolution solve(const nlp::ParametricNlp& nlp, double theta, const Eigen::VectorXd& x0,
                      const Eigen::VectorXd& lambda0, const SolverOptions& options = {});

// The geometric stage values mu_initial, mu_initial*mu_factor, ..., mu_min.
std::vector<double> mu_schedule(const SolverOptions& options);

/**
 * Per-stage warm starts for continuation: the stage at mu_j keeps the
 * (x, lambda) it converged to, so the next theta step can warm-start every
 * stage at its own barrier scale instead of re-climbing out of mu_min-hugging
 * iterates. Updated only when a whole ladder succeeds, which keeps retries
 * after a failed theta step intact.
 */
struct MuLadder {
    std::vector<double> mu_values;
    std::vector<Eigen::VectorXd> x;
    std::vector<Eigen::VectorXd> lambda;

    bool empty() const { return mu_values.empty(); }
};

// As solve(), but reading and refreshing per-stage warm starts. A cold ladder
// falls back to chaining stages downward exactly like solve().
BarrierSolution solve_with_ladder(const nlp::ParametricNlp& nlp, double theta,
                                  const Eigen::VectorXd& x0, const Eigen::VectorXd& lambda0,
                                  MuLadder& ladder, const SolverOptions& options = {});

}  // namespace hydro::solver
