#pragma once

namespace hydro::units {

inline constexpr double gravity = 9.81;          // m/s^2
inline constexpr double water_density = 1000.0;  // kg/m^3
inline constexpr double g_rho = gravity * water_density;

// The only place this conversion constant may appear.
inline constexpr double joules_per_mwh = 3.6e9;

inline constexpr double seconds_per_hour = 3600.0;

// Objective counts generation in MW so that bound multipliers stay O(1).
inline constexpr double watts_per_objective_unit = 1e6;

}  // namespace hydro::units
