#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pipeclimber/design_core.hpp"
#include "pipeclimber/pipe_geometry.hpp"

namespace pipeclimber {

/// Bounds on the robot's minimum diameter d for a bend of centerline radius R
/// in a pipe of inner diameter D:
///   d_lower = (R + D/2) sin(theta/2) - (R - D/2),   d_upper = D.
/// theta is the bend angle; theta = 90 deg reproduces the sin 45 form.
struct DiameterBounds {
  double d_lower_mm = 0.0;  // clamped to 0 when the raw bound is negative
  double d_upper_mm = 0.0;
  double d_lower_raw_mm = 0.0;
  bool lower_clamped = false;  // raw bound was negative (unconstrained below)
};

/// Throws ValidationError unless R > 0, D > 0 and angle in (0, 90].
DiameterBounds min_diameter_bounds(double bend_radius_mm,
                                   double pipe_diameter_mm, double angle_deg);

/// Chord-length bound on the robot body:
///   L_max = sqrt((R + D/2)^2 - (R - D/2 + d)^2).
/// Throws InfeasibleError when the radicand is negative (d too large for the
/// geometry) and ValidationError on non-positive R or D.
double max_length(double bend_radius_mm, double pipe_diameter_mm,
                  double robot_min_diameter_mm);

struct BendFeasibility {
  double d_lower_mm = 0.0;
  double d_upper_mm = 0.0;
  double max_length_mm = 0.0;
  bool feasible = false;
  std::vector<std::string> notes;
};

/// Combines both bounds: feasible iff d_lower < d < d_upper and the robot
/// length fits under L_max. A robot diameter at or beyond the pipe diameter
/// yields L_max = 0 rather than an error.
BendFeasibility check_bend(double bend_radius_mm, double pipe_diameter_mm,
                           double angle_deg, double robot_min_diameter_mm,
                           double robot_length_mm);

/// Path radii of the three modules in a bend: radius_k = R + rho_k cos(a_k)
/// with azimuths a_k = roll + {0, 120, 240} degrees measured from the bend's
/// outer direction. Modules on the outer half (cos >= 0) use rho_outer, the
/// rest rho_inner. Radii are floored at a tiny positive value.
std::array<double, 3> module_path_radii(double bend_radius_mm,
                                        double contact_radius_outer_mm,
                                        double contact_radius_inner_mm,
                                        double roll_deg);

/// Differential track-speed plan for one bend. Scales are path radii
/// normalized so the largest is 1; all modules then traverse the bend in
/// equal time without slip.
struct SpeedPlan {
  std::array<double, 3> path_radius_mm{1.0, 1.0, 1.0};
  std::array<double, 3> speed_scale{1.0, 1.0, 1.0};
  double ratio_outer_to_inner = 1.0;
  /// Contact offset used (mm); back-solved in calibration mode.
  double contact_offset_mm = 0.0;
  bool calibrated = false;
};

/// Plan for `segment`. Straight segments yield the trivial all-ones plan.
/// Geometric mode uses rho = d_min/2 (full compression in a tight bend);
/// passing calibrate_ratio back-solves rho from the target outer:inner ratio
///   rho = R (ratio - 1) / (1 + ratio/2)
/// and records it. Throws ValidationError on a non-positive ratio.
SpeedPlan speed_plan(const PipeSegment& segment, const RobotDesign& design,
                     double roll_deg,
                     std::optional<double> calibrate_ratio = std::nullopt);

/// Plan from explicit radii (used by the simulator with transported-frame
/// azimuth cosines).
SpeedPlan speed_plan_from_radii(const std::array<double, 3>& radii_mm);

}  // namespace pipeclimber
