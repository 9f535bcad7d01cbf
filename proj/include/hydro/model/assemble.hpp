#pragma once

#include <memory>
#include <stdexcept>

#include "hydro/model/types.hpp"
#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::model {

class SpecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Parametric NLP assembled from a cascade description.
 *
 * Per timestep t_j the variable block is, in order:
 *   per reservoir:  H (level, proper), V (volume, redundant)
 *   per turbine:    P (power, proper), Q (release, proper),
 *                   Qt (release alias, redundant), dH (head difference, redundant)
 * and the constraint block:
 *   per reservoir:  level-volume blend, mass balance
 *   per turbine:    generation blend, head difference, flow alias.
 *
 * The generation residual is expressed in flow-times-head units (i.e. divided
 * by g*rho) and the objective counts megawatts; both keep residuals and
 * multipliers at magnitudes a double can resolve against absolute tolerances.
 */
class CascadeNlp final : public nlp::ParametricNlp {
  public:
    explicit CascadeNlp(CascadeSpec spec);

    const std::vector<nlp::VariableDescriptor>& variables() const override { return variables_; }
    const std::vector<nlp::ConstraintDescriptor>& constraints() const override {
        return constraints_;
    }

    double objective(const Eigen::VectorXd& x, double theta) const override;
    void objective_gradient(const Eigen::VectorXd& x, double theta,
                            Eigen::VectorXd& grad) const override;
    void objective_hessian(const Eigen::VectorXd& x, double theta,
                           Eigen::MatrixXd& hess) const override;
    void constraint_residuals(const Eigen::VectorXd& x, double theta,
                              Eigen::VectorXd& out) const override;
    void constraint_jacobian(const Eigen::VectorXd& x, double theta,
                             Eigen::MatrixXd& jac) const override;
    void constraint_hessian_combination(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                                        double theta, Eigen::MatrixXd& hess) const override;
    void jacobian_triplets(const Eigen::VectorXd& x, double theta,
                           std::vector<nlp::Triplet>& out) const override;
    void hessian_triplets(const Eigen::VectorXd& x, const Eigen::VectorXd& lambda, double theta,
                          std::vector<nlp::Triplet>& out) const override;

    const CascadeSpec& spec() const { return spec_; }
    int num_reservoirs() const { return static_cast<int>(spec_.reservoirs.size()); }
    int num_turbines() const { return static_cast<int>(spec_.turbines.size()); }

    // Variable indices; r/t are spec-order entity indices, j is 1-based.
    int level_index(int r, int j) const { return var_block(j) + 2 * r; }
    int volume_index(int r, int j) const { return var_block(j) + 2 * r + 1; }
    int power_index(int t, int j) const { return var_block(j) + 2 * num_reservoirs() + 4 * t; }
    int flow_index(int t, int j) const { return power_index(t, j) + 1; }
    int flow_alias_index(int t, int j) const { return power_index(t, j) + 2; }
    int head_index(int t, int j) const { return power_index(t, j) + 3; }

    int constraint_power_index(int t, int j) const {
        return con_block(j) + 2 * num_reservoirs() + 3 * t;
    }
    int constraint_level_volume_index(int r, int j) const { return con_block(j) + 2 * r; }
    int constraint_mass_balance_index(int r, int j) const { return con_block(j) + 2 * r + 1; }

    // Release schedules [turbine][step] stored in x.
    std::vector<std::vector<double>> extract_releases(const Eigen::VectorXd& x) const;

    double initial_volume_of(int r) const { return reservoirs_[r].v0; }

  private:
    struct ReservoirData {
        LevelVolumeRelation relation = LevelVolumeRelation::linear(1.0, 0.0);
        LevelVolumeRelation::Tangent tangent;
        double v0 = 0.0;
        int inflow_turbine = -1;          // -1 when driven by a boundary series
        std::vector<double> series;       // valid when inflow_turbine < 0
        std::vector<int> outflow_turbines;
    };
    struct TurbineData {
        int upstream = 0;
        int downstream = -1;      // reservoir index, -1 for fixed tailwater
        double tailwater = 0.0;   // valid when downstream < 0
        EfficiencyModel efficiency = EfficiencyModel::constant(1.0);
        double eta0 = 0.0;
        double dh0 = 0.0;
    };

    int var_block(int j) const { return (j - 1) * vars_per_step_; }
    int con_block(int j) const { return (j - 1) * cons_per_step_; }

    CascadeSpec spec_;
    std::vector<ReservoirData> reservoirs_;
    std::vector<TurbineData> turbines_;
    std::vector<nlp::VariableDescriptor> variables_;
    std::vector<nlp::ConstraintDescriptor> constraints_;
    int vars_per_step_ = 0;
    int cons_per_step_ = 0;
};

// Validates and assembles; throws SpecError on validation diagnostics or on a
// boundary series whose length differs from the grid's step count.
std::unique_ptr<CascadeNlp> assemble_nlp(const CascadeSpec& spec);

}  // namespace hydro::model
