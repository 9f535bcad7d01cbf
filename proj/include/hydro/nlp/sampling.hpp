#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "hydro/nlp/parametric_nlp.hpp"

namespace hydro::nlp {

// Deterministic uniform generator; identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t state_;
};

// A strictly interior point: bounded variables land in the middle 60% of
// their box; unbounded variables are drawn around their initial hint.
Eigen::VectorXd sample_interior_point(const ParametricNlp& nlp, Rng& rng);

}  // namespace hydro::nlp
