#pragma once

#include <string>
#include <vector>

#include "hydro/nlp/kkt.hpp"
#include "hydro/solver/barrier_solver.hpp"

namespace hydro::continuation {

struct ContinuationSchedule {
    double theta_step = 0.05;
    bool adaptive = true;          // halve the step on failure
    double theta_step_min = 1e-4;
    // Converged entries whose KKT pivot falls below this are treated as
    // critical-point evidence (reported, then the step is halved).
    double suspect_pivot_threshold = 1e-8;
};

enum class PathStatus { Complete, PathFailure, CriticalPointSuspected };

const char* to_string(PathStatus status);

struct PathEntry {
    double theta = 0.0;
    solver::BarrierSolution solution;
    double min_pivot = 0.0;  // pivot of the KKT factorization at the solution
    double objective = 0.0;
    double wall_ms = 0.0;    // diagnostic only; never serialized
};

struct SolutionPath {
    std::vector<PathEntry> entries;
    PathStatus status = PathStatus::Complete;
    double failure_theta = 0.0;    // set unless Complete
    std::string failure_cause;
    int critical_events = 0;       // singular/suspect observations en route

    bool complete() const { return status == PathStatus::Complete; }
};

/**
 * Homotopy loop: cold solve at theta = 0 from the interior initializer, then
 * march theta to exactly 1, warm-starting every solve from the last stored
 * solution. On solver failure (or a suspect pivot at a converged entry) the
 * step is halved and retried from the last stored solution; once the step
 * falls below theta_step_min the path stops with PathFailure, or with
 * CriticalPointSuspected when singularity evidence was observed.
 */
SolutionPath continue_path(const nlp::ParametricNlp& nlp, const ContinuationSchedule& schedule,
                           const solver::SolverOptions& options = {});

struct MonitorResult {
    bool suspect = false;
    double min_pivot = 0.0;
};

// Smallest equilibrated pivot of the KKT matrix; suspect iff below threshold.
MonitorResult critical_point_monitor(const nlp::KktSystem& kkt, double threshold);

struct PathReportRow {
    double theta = 0.0;
    double objective = 0.0;
    double min_pivot = 0.0;
    int iterations = 0;
};

struct PathReport {
    std::vector<PathReportRow> rows;
    bool complete = false;
    double objective_at_zero = 0.0;
    double objective_at_one = 0.0;
    double objective_change = 0.0;  // meaningful only when complete
};

PathReport path_report(const SolutionPath& path);

}  // namespace hydro::continuation
