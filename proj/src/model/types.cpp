#include "hydro/model/types.hpp"

#include <cmath>
#include <sstream>

namespace hydro::model {

LevelVolumeRelation LevelVolumeRelation::linear(double area, double bottom_level) {
    LevelVolumeRelation r;
    r.kind_ = Kind::Linear;
    r.area_ = area;
    r.bottom_level_ = bottom_level;
    return r;
}

LevelVolumeRelation LevelVolumeRelation::concave_power(double coefficient, double exponent,
                                                       double bottom_level) {
    LevelVolumeRelation r;
    r.kind_ = Kind::ConcavePower;
    r.coefficient_ = coefficient;
    r.exponent_ = exponent;
    r.bottom_level_ = bottom_level;
    return r;
}

double LevelVolumeRelation::level(double volume) const {
    if (kind_ == Kind::Linear) {
        return bottom_level_ + volume / area_;
    }
    return bottom_level_ + coefficient_ * std::pow(volume, exponent_);
}

double LevelVolumeRelation::level_derivative(double volume) const {
    if (kind_ == Kind::Linear) {
        return 1.0 / area_;
    }
    return coefficient_ * exponent_ * std::pow(volume, exponent_ - 1.0);
}

double LevelVolumeRelation::level_second_derivative(double volume) const {
    if (kind_ == Kind::Linear) {
        return 0.0;
    }
    return coefficient_ * exponent_ * (exponent_ - 1.0) * std::pow(volume, exponent_ - 2.0);
}

double LevelVolumeRelation::volume(double level) const {
    if (kind_ == Kind::Linear) {
        return area_ * (level - bottom_level_);
    }
    const double h = level - bottom_level_;
    if (h <= 0.0) {
        return 0.0;
    }
    return std::pow(h / coefficient_, 1.0 / exponent_);
}

LevelVolumeRelation::Tangent LevelVolumeRelation::tangent_at(double volume) const {
    Tangent t;
    if (kind_ == Kind::Linear) {
        t.alpha = 1.0 / area_;
        t.beta = bottom_level_;
        return t;
    }
    t.alpha = level_derivative(volume);
    t.beta = level(volume) - t.alpha * volume;
    return t;
}

EfficiencyModel EfficiencyModel::constant(double eta0) {
    EfficiencyModel m;
    m.kind_ = Kind::Constant;
    m.coeffs_[0] = eta0;
    return m;
}

EfficiencyModel EfficiencyModel::smooth_polynomial(
    const std::array<double, kNumCoefficients>& coeffs) {
    EfficiencyModel m;
    m.kind_ = Kind::SmoothPolynomial;
    m.coeffs_ = coeffs;
    return m;
}

double EfficiencyModel::raw_value(double q, double v, double h) const {
    if (kind_ == Kind::Constant) {
        return coeffs_[0];
    }
    const auto& c = coeffs_;
    return c[0] + c[1] * q + c[2] * v + c[3] * h + c[4] * q * q + c[5] * q * v + c[6] * q * h +
           c[7] * v * v + c[8] * v * h + c[9] * h * h;
}

void EfficiencyModel::check_range(double eta, double q, double v, double h) const {
    if (!(eta > 0.0 && eta <= 1.2)) {
        std::ostringstream oss;
        oss << "efficiency " << eta << " outside (0, 1.2] at (q=" << q << ", v=" << v
            << ", dh=" << h << ")";
        throw EfficiencyRangeError(oss.str());
    }
}

double EfficiencyModel::value(double q, double v, double h) const {
    const double eta = raw_value(q, v, h);
    check_range(eta, q, v, h);
    return eta;
}

EfficiencyModel::Derivatives EfficiencyModel::derivatives(double q, double v, double h) const {
    Derivatives d;
    d.value = raw_value(q, v, h);
    check_range(d.value, q, v, h);
    if (kind_ == Kind::Constant) {
        return d;
    }
    const auto& c = coeffs_;
    d.grad = {c[1] + 2.0 * c[4] * q + c[5] * v + c[6] * h,
              c[2] + c[5] * q + 2.0 * c[7] * v + c[8] * h,
              c[3] + c[6] * q + c[8] * v + 2.0 * c[9] * h};
    d.hess[0] = {2.0 * c[4], c[5], c[6]};
    d.hess[1] = {c[5], 2.0 * c[7], c[8]};
    d.hess[2] = {c[6], c[8], 2.0 * c[9]};
    return d;
}

double initial_volume(const ReservoirSpec& reservoir) {
    return reservoir.level_volume.volume(reservoir.initial_level);
}

}  // namespace hydro::model
