#include "pipeclimber/bend_traversal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pipeclimber {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinPathRadius = 1e-9;  // mm

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

DiameterBounds min_diameter_bounds(double bend_radius_mm,
                                   double pipe_diameter_mm, double angle_deg) {
  if (!(bend_radius_mm > 0.0)) {
    throw ValidationError("bend radius must be positive");
  }
  if (!(pipe_diameter_mm > 0.0)) {
    throw ValidationError("pipe diameter must be positive");
  }
  if (!(angle_deg > 0.0 && angle_deg <= 90.0)) {
    throw ValidationError("bend angle must be in (0, 90] degrees");
  }
  const double outer = bend_radius_mm + pipe_diameter_mm / 2.0;
  const double inner = bend_radius_mm - pipe_diameter_mm / 2.0;
  DiameterBounds bounds;
  bounds.d_lower_raw_mm = outer * std::sin(deg_to_rad(angle_deg / 2.0)) - inner;
  bounds.lower_clamped = bounds.d_lower_raw_mm < 0.0;
  bounds.d_lower_mm = std::max(0.0, bounds.d_lower_raw_mm);
  bounds.d_upper_mm = pipe_diameter_mm;
  return bounds;
}

double max_length(double bend_radius_mm, double pipe_diameter_mm,
                  double robot_min_diameter_mm) {
  if (!(bend_radius_mm > 0.0) || !(pipe_diameter_mm > 0.0)) {
    throw ValidationError("bend radius and pipe diameter must be positive");
  }
  const double outer = bend_radius_mm + pipe_diameter_mm / 2.0;
  const double reach =
      bend_radius_mm - pipe_diameter_mm / 2.0 + robot_min_diameter_mm;
  const double radicand = outer * outer - reach * reach;
  if (radicand < 0.0) {
    throw InfeasibleError("no chord fits: robot diameter " +
                          fmt2(robot_min_diameter_mm) +
                          " mm exceeds the pipe diameter " +
                          fmt2(pipe_diameter_mm) + " mm in this bend");
  }
  return std::sqrt(radicand);
}

BendFeasibility check_bend(double bend_radius_mm, double pipe_diameter_mm,
                           double angle_deg, double robot_min_diameter_mm,
                           double robot_length_mm) {
  const DiameterBounds bounds =
      min_diameter_bounds(bend_radius_mm, pipe_diameter_mm, angle_deg);
  BendFeasibility result;
  result.d_lower_mm = bounds.d_lower_mm;
  result.d_upper_mm = bounds.d_upper_mm;
  if (bounds.lower_clamped) {
    result.notes.push_back("lower diameter bound is unconstrained (raw value " +
                           fmt2(bounds.d_lower_raw_mm) + " mm, clamped to 0)");
  }
  if (angle_deg != 90.0) {
    result.notes.push_back(
        "extension: the published bound covers 90 degree bends only; the "
        "half-angle form is used for " + fmt2(angle_deg) + " degrees");
  }

  const bool diameter_ok = robot_min_diameter_mm > bounds.d_lower_mm &&
                           robot_min_diameter_mm < bounds.d_upper_mm;
  if (robot_min_diameter_mm >= pipe_diameter_mm) {
    result.max_length_mm = 0.0;
  } else {
    result.max_length_mm =
        max_length(bend_radius_mm, pipe_diameter_mm, robot_min_diameter_mm);
  }
  // The published prototype pairs R=90, D=160, d=129.54 with a 150 mm body;
  // flag how far the chord bound sits from that length on those inputs.
  const auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b));
  };
  if (near(bend_radius_mm, 90.0) && near(pipe_diameter_mm, 160.0) &&
      near(robot_min_diameter_mm, 129.54) &&
      std::abs(result.max_length_mm - 150.0) > 0.05 * 150.0) {
    result.notes.push_back(
        "computed length bound " + fmt2(result.max_length_mm) +
        " mm differs from the published 150 mm body length by " +
        fmt2(100.0 * std::abs(result.max_length_mm - 150.0) / 150.0) + "%");
  }

  const bool length_ok = robot_length_mm <= result.max_length_mm;
  result.feasible = diameter_ok && length_ok;
  if (!diameter_ok) {
    result.notes.push_back("robot minimum diameter " +
                           fmt2(robot_min_diameter_mm) +
                           " mm is outside (" + fmt2(bounds.d_lower_mm) + ", " +
                           fmt2(bounds.d_upper_mm) + ") mm");
  }
  if (!length_ok) {
    result.notes.push_back("robot length " + fmt2(robot_length_mm) +
                           " mm exceeds the chord bound " +
                           fmt2(result.max_length_mm) + " mm");
  }
  return result;
}

std::array<double, 3> module_path_radii(double bend_radius_mm,
                                        double contact_radius_outer_mm,
                                        double contact_radius_inner_mm,
                                        double roll_deg) {
  if (!(bend_radius_mm > 0.0)) {
    throw ValidationError("bend radius must be positive");
  }
  if (contact_radius_outer_mm < 0.0 || contact_radius_inner_mm < 0.0) {
    throw ValidationError("contact radii cannot be negative");
  }
  std::array<double, 3> radii{};
  for (int k = 0; k < 3; ++k) {
    const double azimuth = deg_to_rad(roll_deg + 120.0 * k);
    const double c = std::cos(azimuth);
    const double rho =
        c >= 0.0 ? contact_radius_outer_mm : contact_radius_inner_mm;
    radii[k] = std::max(kMinPathRadius, bend_radius_mm + rho * c);
  }
  return radii;
}

SpeedPlan speed_plan_from_radii(const std::array<double, 3>& radii_mm) {
  SpeedPlan plan;
  plan.path_radius_mm = radii_mm;
  const double r_max = *std::max_element(radii_mm.begin(), radii_mm.end());
  const double r_min = *std::min_element(radii_mm.begin(), radii_mm.end());
  if (!(r_min > 0.0)) throw ValidationError("path radii must be positive");
  for (int k = 0; k < 3; ++k) plan.speed_scale[k] = radii_mm[k] / r_max;
  plan.ratio_outer_to_inner = r_max / r_min;
  return plan;
}

SpeedPlan speed_plan(const PipeSegment& segment, const RobotDesign& design,
                     double roll_deg, std::optional<double> calibrate_ratio) {
  design.validate();
  if (!segment.is_bend()) {
    return SpeedPlan{};  // equal speeds on straights
  }
  const double bend_radius = segment.bend().radius_mm;
  double rho = design.d_min_mm / 2.0;
  bool calibrated = false;
  if (calibrate_ratio) {
    if (!(*calibrate_ratio >= 1.0)) {
      throw ValidationError("calibration ratio must be at least 1");
    }
    // Back-solve (R + rho) / (R - rho/2) = ratio for the dead-outer roll.
    rho = bend_radius * (*calibrate_ratio - 1.0) / (1.0 + *calibrate_ratio / 2.0);
    calibrated = true;
  }
  SpeedPlan plan =
      speed_plan_from_radii(module_path_radii(bend_radius, rho, rho, roll_deg));
  plan.contact_offset_mm = rho;
  plan.calibrated = calibrated;
  return plan;
}

}  // namespace pipeclimber
