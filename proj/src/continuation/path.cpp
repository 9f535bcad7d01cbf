#include "hydro/continuation/path.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace hydro::continuation {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr double kEndpointSnap = 1e-9;

}  // namespace

const char* to_string(PathStatus status) {
    switch (status) {
        case PathStatus::Complete: return "Complete";
        case PathStatus::PathFailure: return "PathFailure";
        case PathStatus::CriticalPointSuspected: return "CriticalPointSuspected";
    }
    return "unknown";
}

MonitorResult critical_point_monitor(const nlp::KktSystem& kkt, double threshold) {
    MonitorResult result;
    result.min_pivot = solver::dense_min_pivot(kkt.matrix);
    result.suspect = result.min_pivot < threshold;
    return result;
}

SolutionPath continue_path(const nlp::ParametricNlp& nlp, const ContinuationSchedule& schedule,
                           const solver::SolverOptions& options) {
    if (!(schedule.theta_step > 0.0 && schedule.theta_step <= 1.0) ||
        !(schedule.theta_step_min > 0.0)) {
        throw std::invalid_argument("inconsistent continuation schedule");
    }

    SolutionPath path;
    const Eigen::VectorXd x0 = solver::interior_initializer(nlp);
    const Eigen::VectorXd lambda0 = Eigen::VectorXd::Zero(nlp.num_constraints());
    solver::MuLadder ladder;

    auto store = [&path, &nlp](double theta, solver::BarrierSolution&& solution, double wall_ms) {
        PathEntry entry;
        entry.theta = theta;
        entry.min_pivot = solution.solution_min_pivot;
        entry.objective = nlp.objective(solution.x, theta);
        entry.wall_ms = wall_ms;
        entry.solution = std::move(solution);
        path.entries.push_back(std::move(entry));
    };

    {
        const auto start = Clock::now();
        try {
            auto solution = solver::solve_with_ladder(nlp, 0.0, x0, lambda0, ladder, options);
            store(0.0, std::move(solution), elapsed_ms(start));
        } catch (const solver::SolverError& e) {
            path.status = e.kind == solver::SolverErrorKind::SingularKkt
                              ? PathStatus::CriticalPointSuspected
                              : PathStatus::PathFailure;
            if (e.kind == solver::SolverErrorKind::SingularKkt) ++path.critical_events;
            path.failure_theta = 0.0;
            path.failure_cause = std::string(to_string(e.kind)) + ": " + e.what();
            return path;
        }
    }

    // Entries land on the configured grid; a failed step is retried through
    // halved stepping-stone solves that carry (x, lambda) and the ladder
    // forward without being stored.
    while (path.entries.back().theta < 1.0) {
        double target = path.entries.back().theta + schedule.theta_step;
        if (target >= 1.0 - kEndpointSnap) target = 1.0;

        double cursor_theta = path.entries.back().theta;
        Eigen::VectorXd cursor_x = path.entries.back().solution.x;
        Eigen::VectorXd cursor_lambda = path.entries.back().solution.lambda;
        double substep = schedule.theta_step;
        const auto start = Clock::now();

        while (cursor_theta < target) {
            double theta_try = cursor_theta + substep;
            if (theta_try >= target - kEndpointSnap) theta_try = target;

            bool failed = false;
            bool singular_evidence = false;
            std::string cause;
            try {
                auto solution = solver::solve_with_ladder(nlp, theta_try, cursor_x,
                                                          cursor_lambda, ladder, options);
                if (solution.solution_min_pivot < schedule.suspect_pivot_threshold) {
                    ++path.critical_events;
                    singular_evidence = true;
                    failed = true;
                    std::ostringstream oss;
                    oss << "converged with suspect pivot " << solution.solution_min_pivot
                        << " below " << schedule.suspect_pivot_threshold;
                    cause = oss.str();
                } else {
                    cursor_theta = theta_try;
                    cursor_x = solution.x;
                    cursor_lambda = solution.lambda;
                    if (theta_try == target) {
                        store(target, std::move(solution), elapsed_ms(start));
                    }
                }
            } catch (const solver::SolverError& e) {
                failed = true;
                cause = std::string(solver::to_string(e.kind)) + ": " + e.what();
                if (e.kind == solver::SolverErrorKind::SingularKkt) {
                    ++path.critical_events;
                    singular_evidence = true;
                }
            }

            if (failed) {
                if (!schedule.adaptive || 0.5 * substep < schedule.theta_step_min) {
                    path.status = singular_evidence ? PathStatus::CriticalPointSuspected
                                                    : PathStatus::PathFailure;
                    path.failure_theta = theta_try;
                    path.failure_cause = cause;
                    return path;
                }
                substep *= 0.5;
            }
        }
    }

    path.status = PathStatus::Complete;
    return path;
}

PathReport path_report(const SolutionPath& path) {
    if (path.entries.empty()) {
        throw std::invalid_argument("path_report requires a non-empty path");
    }
    PathReport report;
    report.rows.reserve(path.entries.size());
    for (const auto& entry : path.entries) {
        report.rows.push_back(
            {entry.theta, entry.objective, entry.min_pivot, entry.solution.iterations});
    }
    report.complete = path.complete() && path.entries.back().theta == 1.0;
    report.objective_at_zero = path.entries.front().objective;
    report.objective_at_one = path.entries.back().objective;
    report.objective_change = report.objective_at_one - report.objective_at_zero;
    return report;
}

}  // namespace hydro::continuation
