#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pipeclimber/errors.hpp"

namespace pipeclimber {

constexpr double kDefaultGravity = 9.81;  // m/s^2

/// Track contact pads. At least min_contact_count of lug_count touch the
/// wall during a vertical climb.
struct LugSpec {
  int lug_count = 22;
  int min_contact_count = 9;
  double lug_radius_mm = 80.0;

  bool operator==(const LugSpec&) const = default;
};

struct MotorSpec {
  double stall_torque_nm = 0.0;
  double rated_speed_rpm = 35.0;
  double gear_ratio = 1000.0;
};

/// Full robot parameter set. Lengths in mm except the spring preload and
/// wheel radius, which follow the force equations and stay in metres.
struct RobotDesign {
  double mass_kg = 0.0;
  double length_mm = 0.0;
  double d_max_mm = 0.0;  // expanded diameter, L-bracket stop
  double d_min_mm = 0.0;  // fully compressed diameter, shaft stop
  int n_modules = 3;
  int springs_per_module = 4;
  double spring_stiffness_n_per_m = 0.0;
  double preload_compression_m = 0.0;  // spring compression x during vertical climb
  double spring_spacing_mm = 30.0;     // axial distance between front and rear stations
  double mu_static = 0.7;
  double mu_kinetic = 0.7;
  std::optional<double> wheel_radius_m;  // half the track height; no default
  LugSpec lug;

  /// Radial travel of one module between the two diameter stops.
  double max_travel_mm() const { return (d_max_mm - d_min_mm) / 2.0; }
  int total_springs() const { return n_modules * springs_per_module; }

  /// Throws ValidationError on any violated invariant.
  void validate() const;

  bool operator==(const RobotDesign&) const = default;
};

/// Sign applied to sliding friction in the tractive-effort sum. `paper`
/// subtracts it, matching the published analysis; `physical` adds it, the
/// usual sense for preload friction opposing motion.
enum class FrictionSign { paper, physical };

double friction_sign_value(FrictionSign s);
std::string_view friction_sign_name(FrictionSign s);

// ---------------------------------------------------------------------------
// Static and quasi-static force balance
// ---------------------------------------------------------------------------

/// Minimum spring stiffness holding the robot statically in a vertical pipe:
/// K_s = m g / (n_modules * springs_per_module * mu_s * x).
/// Throws InfeasibleError when x == 0 or mu_s == 0 (nothing can hold).
double required_stiffness(double mass_kg, double preload_m, double mu_static,
                          double gravity = kDefaultGravity, int n_modules = 3,
                          int springs_per_module = 4);

/// Total wall normal force N = n_modules * springs_per_module * K_s * x.
double normal_force(double stiffness_n_per_m, double preload_m,
                    int n_modules = 3, int springs_per_module = 4);

/// RR = N * C_R (C_R ~ 0 for incompressible lugs).
double rolling_resistance(double normal_force_n, double c_r);

/// Sliding friction f = mu_k * N.
double sliding_friction(double mu_kinetic, double stiffness_n_per_m,
                        double preload_m, int n_modules = 3,
                        int springs_per_module = 4);

/// Total tractive effort TTE = RR + m a + sign * f + m g, with sign = -1 in
/// the published form and +1 in the physical alternate.
double tractive_effort(double mass_kg, double accel, double gravity,
                       double friction_n, double rolling_n,
                       FrictionSign sign = FrictionSign::paper);

/// tau = TTE * r_wheel. Throws ValidationError when r_wheel <= 0.
double motor_torque(double tractive_effort_n, double wheel_radius_m);

// ---------------------------------------------------------------------------
// Design report
// ---------------------------------------------------------------------------

struct DesignReport {
  double normal_force_n = 0.0;
  double rolling_resistance_n = 0.0;
  double sliding_friction_n = 0.0;
  double inertial_force_n = 0.0;
  double tractive_effort_n = 0.0;
  double torque_total_nm = 0.0;
  double torque_per_motor_nm = 0.0;
  double required_stiffness_n_per_m = 0.0;
  double safety_factor = 0.0;
  bool torque_ok = false;
  double gravity = kDefaultGravity;
  double acceleration = 0.0;
  FrictionSign friction_sign = FrictionSign::paper;
  std::vector<std::string> notes;
};

/// Chains the force balance end to end and checks the motor margin:
/// torque_ok = motor stall torque >= safety_factor * per-motor torque.
/// Appends notes when computed values stray >5% from the published constants
/// (18.06 N/m, 0.23 N m) on the published inputs, and always records the
/// alternate friction-sign result.
/// Requires design.wheel_radius_m; throws ValidationError otherwise and on
/// safety_factor <= 0.
DesignReport design_report(const RobotDesign& design, double gravity,
                           double accel, double c_r, double safety_factor,
                           const MotorSpec& motor,
                           FrictionSign sign = FrictionSign::paper);

}  // namespace pipeclimber
