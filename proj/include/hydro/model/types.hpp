#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydro::model {

struct TimeGrid {
    int step_count = 0;        // N; timestamps are t_j = j * step_seconds, j in 1..N
    double step_seconds = 0.0; // dt
};

/**
 * Strictly increasing, twice differentiable volume-level map H = Gamma(V).
 *
 * Linear:       H = H_b + V / A
 * ConcavePower: H = H_b + c * V^p,  p in (0, 1]
 */
class LevelVolumeRelation {
  public:
    enum class Kind { Linear, ConcavePower };

    static LevelVolumeRelation linear(double area, double bottom_level);
    static LevelVolumeRelation concave_power(double coefficient, double exponent,
                                             double bottom_level);

    Kind kind() const { return kind_; }
    double bottom_level() const { return bottom_level_; }
    double area() const { return area_; }
    double coefficient() const { return coefficient_; }
    double exponent() const { return exponent_; }

    double level(double volume) const;             // Gamma
    double level_derivative(double volume) const;  // dGamma/dV
    double level_second_derivative(double volume) const;
    double volume(double level) const;             // Gamma^-1

    // Affine surrogate H ~ alpha * V + beta. For the linear kind this is the
    // relation itself (alpha = 1/A, beta = H_b); for the concave power kind it
    // is the tangent at the given volume.
    struct Tangent {
        double alpha = 0.0;
        double beta = 0.0;
    };
    Tangent tangent_at(double volume) const;

  private:
    Kind kind_ = Kind::Linear;
    double bottom_level_ = 0.0;
    double area_ = 0.0;         // Linear
    double coefficient_ = 0.0;  // ConcavePower
    double exponent_ = 1.0;     // ConcavePower
};

class EfficiencyRangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Turbine efficiency over the reformulated coordinates (Q~, V_u, dH).
 * Evaluations outside (0, 1.2] raise EfficiencyRangeError; no clamping.
 */
class EfficiencyModel {
  public:
    enum class Kind { Constant, SmoothPolynomial };

    // Monomial order for the degree-2 polynomial over (q, v, h):
    // 1, q, v, h, q^2, qv, qh, v^2, vh, h^2.
    static constexpr int kNumCoefficients = 10;

    static EfficiencyModel constant(double eta0);
    static EfficiencyModel smooth_polynomial(const std::array<double, kNumCoefficients>& coeffs);

    Kind kind() const { return kind_; }
    double constant_value() const { return coeffs_[0]; }
    const std::array<double, kNumCoefficients>& coefficients() const { return coeffs_; }

    double value(double q, double v, double h) const;

    struct Derivatives {
        double value = 0.0;
        std::array<double, 3> grad{};               // d/d(q, v, h)
        std::array<std::array<double, 3>, 3> hess{};
    };
    Derivatives derivatives(double q, double v, double h) const;

  private:
    double raw_value(double q, double v, double h) const;
    void check_range(double eta, double q, double v, double h) const;

    Kind kind_ = Kind::Constant;
    std::array<double, kNumCoefficients> coeffs_{};
};

struct BoundarySeries {
    std::vector<double> values;  // m^3/s, one entry per timestep t_1..t_N
};

struct Inflow {
    enum class Kind { Series, UpstreamTurbine };
    Kind kind = Kind::Series;
    BoundarySeries series;
    std::string turbine;  // name, when kind == UpstreamTurbine
};

struct ReservoirSpec {
    std::string name;
    LevelVolumeRelation level_volume = LevelVolumeRelation::linear(1.0, 0.0);
    double initial_level = 0.0;               // m
    std::array<double, 2> level_bounds{};     // [min, max], m
    Inflow inflow;
};

struct Downstream {
    enum class Kind { Reservoir, FixedTailwater };
    Kind kind = Kind::FixedTailwater;
    std::string reservoir;  // name, when kind == Reservoir
    double level = 0.0;     // tailwater level, m, when kind == FixedTailwater
};

struct Linearization {
    // Either component may be left unset (NaN) to request the default:
    // eta0 from the efficiency model at the initial operating point,
    // delta_h0 from the initial levels.
    double eta0 = kUnset;
    double delta_h0 = kUnset;  // m
    static constexpr double kUnset = -1.0;

    bool has_eta0() const { return eta0 > 0.0; }
    bool has_delta_h0() const { return delta_h0 > 0.0; }
};

struct TurbineSpec {
    std::string name;
    std::string upstream_reservoir;
    Downstream downstream;
    EfficiencyModel efficiency = EfficiencyModel::constant(1.0);
    std::array<double, 2> flow_bounds{};   // [0, Q_max], m^3/s
    std::array<double, 2> power_bounds{};  // [0, P_max], W
    Linearization linearization;
};

enum class Objective { MaximizeTotalGeneration };

struct CascadeSpec {
    TimeGrid grid;
    std::vector<ReservoirSpec> reservoirs;  // ordered upstream to downstream
    std::vector<TurbineSpec> turbines;
    Objective objective = Objective::MaximizeTotalGeneration;
};

// Inverts the level-volume relation at the reservoir's initial level.
double initial_volume(const ReservoirSpec& reservoir);

}  // namespace hydro::model
