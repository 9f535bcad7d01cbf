#include "hydro/nlp/sampling.hpp"

#include <cmath>

namespace hydro::nlp {

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Eigen::VectorXd sample_interior_point(const ParametricNlp& nlp, Rng& rng) {
    const auto& vars = nlp.variables();
    Eigen::VectorXd x(nlp.num_variables());
    for (const auto& var : vars) {
        if (var.lower && var.upper) {
            const double width = *var.upper - *var.lower;
            x[var.index] = *var.lower + width * rng.uniform(0.2, 0.8);
        } else if (var.lower) {
            x[var.index] = *var.lower + 0.5 + rng.uniform();
        } else if (var.upper) {
            x[var.index] = *var.upper - 0.5 - rng.uniform();
        } else {
            const double center = var.initial_hint.value_or(0.0);
            const double spread = 0.25 * std::max(1.0, std::abs(center));
            x[var.index] = center + spread * rng.uniform(-1.0, 1.0);
        }
    }
    return x;
}

}  // namespace hydro::nlp
