#pragma once

#include "sri/analysis.hpp"
#include "sri/dynamics.hpp"
#include "sri/engine.hpp"

#include <ostream>
#include <string>

namespace sri {

/// %.17g: round-trips every double, '.' decimal point.
std::string fmt(double x);

/// n, t, x_1..x_d, xp_1..xp_d, chi, norm_M; row n carries |M_n| (0 for the first row).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// path, t, x_1..x_d.
void write_funnel_csv(std::ostream& os, const Funnel& f);

/// n0, empirical, ci_lo, ci_hi, bound.
void write_lockin_csv(std::ostream& os, const LockInReport& rep);

}  // namespace sri
