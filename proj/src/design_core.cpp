#include "pipeclimber/design_core.hpp"

#include <cmath>
#include <cstdio>

namespace pipeclimber {

namespace {

// Constants published for the prototype, used only to flag discrepancies.
constexpr double kPublishedStiffness = 18.06;  // N/m
constexpr double kPublishedTorque = 0.23;      // N m
constexpr double kPublishedMass = 0.470;       // kg
constexpr double kPublishedPreload = 0.026;    // m
constexpr double kPublishedMu = 0.7;

bool near_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void check_counts(int n_modules, int springs_per_module) {
  if (n_modules < 1 || springs_per_module < 1) {
    throw ValidationError("module and spring counts must be at least 1");
  }
}

}  // namespace

void RobotDesign::validate() const {
  if (!(mass_kg > 0.0)) throw ValidationError("mass must be positive");
  if (!(length_mm > 0.0)) throw ValidationError("length must be positive");
  if (!(d_min_mm > 0.0)) throw ValidationError("d_min must be positive");
  if (!(d_min_mm < d_max_mm)) {
    throw ValidationError("d_min must be less than d_max (got d_min=" +
                          fmt3(d_min_mm) + ", d_max=" + fmt3(d_max_mm) + ")");
  }
  check_counts(n_modules, springs_per_module);
  if (!(spring_stiffness_n_per_m > 0.0)) {
    throw ValidationError("spring stiffness must be positive");
  }
  if (!(preload_compression_m >= 0.0)) {
    throw ValidationError("preload compression cannot be negative");
  }
  if (!(spring_spacing_mm > 0.0 && spring_spacing_mm < length_mm)) {
    throw ValidationError("spring spacing must be positive and less than the robot length");
  }
  if (!(mu_kinetic > 0.0 && mu_kinetic <= mu_static && mu_static <= 2.0)) {
    throw ValidationError("need 0 < mu_kinetic <= mu_static <= 2");
  }
  if (wheel_radius_m && !(*wheel_radius_m > 0.0)) {
    throw ValidationError("wheel radius must be positive");
  }
  if (lug.min_contact_count > lug.lug_count || lug.lug_count < 1) {
    throw ValidationError("lug contact count cannot exceed lug count");
  }
  if (!(lug.lug_radius_mm > 0.0)) {
    throw ValidationError("lug radius must be positive");
  }
}

double friction_sign_value(FrictionSign s) {
  return s == FrictionSign::paper ? -1.0 : 1.0;
}

std::string_view friction_sign_name(FrictionSign s) {
  return s == FrictionSign::paper ? "paper" : "physical";
}

double required_stiffness(double mass_kg, double preload_m, double mu_static,
                          double gravity, int n_modules,
                          int springs_per_module) {
  check_counts(n_modules, springs_per_module);
  if (!(mass_kg >= 0.0)) throw ValidationError("mass cannot be negative");
  if (preload_m <= 0.0 || mu_static <= 0.0) {
    throw InfeasibleError(
        "static hold impossible: preload compression and static friction "
        "must both be positive");
  }
  return mass_kg * gravity /
         (n_modules * springs_per_module * mu_static * preload_m);
}

double normal_force(double stiffness_n_per_m, double preload_m, int n_modules,
                    int springs_per_module) {
  check_counts(n_modules, springs_per_module);
  if (stiffness_n_per_m < 0.0 || preload_m < 0.0) {
    throw ValidationError("stiffness and preload cannot be negative");
  }
  return n_modules * springs_per_module * stiffness_n_per_m * preload_m;
}

double rolling_resistance(double normal_force_n, double c_r) {
  if (normal_force_n < 0.0 || c_r < 0.0) {
    throw ValidationError("normal force and C_R cannot be negative");
  }
  return normal_force_n * c_r;
}

double sliding_friction(double mu_kinetic, double stiffness_n_per_m,
                        double preload_m, int n_modules,
                        int springs_per_module) {
  if (mu_kinetic < 0.0) throw ValidationError("mu_kinetic cannot be negative");
  return mu_kinetic *
         normal_force(stiffness_n_per_m, preload_m, n_modules,
                      springs_per_module);
}

double tractive_effort(double mass_kg, double accel, double gravity,
                       double friction_n, double rolling_n,
                       FrictionSign sign) {
  if (!std::isfinite(mass_kg) || !std::isfinite(accel) ||
      !std::isfinite(gravity) || !std::isfinite(friction_n) ||
      !std::isfinite(rolling_n)) {
    throw ValidationError("tractive effort inputs must be finite");
  }
  return rolling_n + mass_kg * accel + friction_sign_value(sign) * friction_n +
         mass_kg * gravity;
}

double motor_torque(double tractive_effort_n, double wheel_radius_m) {
  if (!(wheel_radius_m > 0.0)) {
    throw ValidationError("wheel radius must be positive");
  }
  return tractive_effort_n * wheel_radius_m;
}

DesignReport design_report(const RobotDesign& design, double gravity,
                           double accel, double c_r, double safety_factor,
                           const MotorSpec& motor, FrictionSign sign) {
  design.validate();
  if (!(safety_factor > 0.0)) {
    throw ValidationError("safety factor must be positive");
  }
  if (!(gravity > 0.0)) throw ValidationError("gravity must be positive");
  if (!design.wheel_radius_m) {
    throw ValidationError(
        "wheel radius (r_wheel_m) is required for the torque chain and has "
        "no default");
  }
  if (!(motor.stall_torque_nm > 0.0) || !(motor.rated_speed_rpm > 0.0)) {
    throw ValidationError("motor stall torque and rated speed must be positive");
  }

  DesignReport report;
  report.gravity = gravity;
  report.acceleration = accel;
  report.safety_factor = safety_factor;
  report.friction_sign = sign;

  const double n = normal_force(design.spring_stiffness_n_per_m,
                                design.preload_compression_m, design.n_modules,
                                design.springs_per_module);
  report.normal_force_n = n;
  report.rolling_resistance_n = rolling_resistance(n, c_r);
  report.sliding_friction_n =
      sliding_friction(design.mu_kinetic, design.spring_stiffness_n_per_m,
                       design.preload_compression_m, design.n_modules,
                       design.springs_per_module);
  report.inertial_force_n = design.mass_kg * accel;
  report.tractive_effort_n =
      tractive_effort(design.mass_kg, accel, gravity,
                      report.sliding_friction_n, report.rolling_resistance_n,
                      sign);
  report.torque_total_nm =
      motor_torque(report.tractive_effort_n, *design.wheel_radius_m);
  report.torque_per_motor_nm = report.torque_total_nm / design.n_modules;
  report.required_stiffness_n_per_m = required_stiffness(
      design.mass_kg, design.preload_compression_m, design.mu_static, gravity,
      design.n_modules, design.springs_per_module);
  report.torque_ok =
      motor.stall_torque_nm >= safety_factor * report.torque_per_motor_nm;

  // Flag computed values that stray from the published constants when the
  // published inputs are in play.
  const bool published_inputs =
      near_rel(design.mass_kg, kPublishedMass, 1e-6) &&
      near_rel(design.preload_compression_m, kPublishedPreload, 1e-6) &&
      near_rel(design.mu_static, kPublishedMu, 1e-6);
  if (published_inputs) {
    if (!near_rel(report.required_stiffness_n_per_m, kPublishedStiffness,
                  0.05)) {
      const double pct = 100.0 *
                         std::abs(report.required_stiffness_n_per_m -
                                  kPublishedStiffness) /
                         kPublishedStiffness;
      report.notes.push_back(
          "computed required stiffness " +
          fmt3(report.required_stiffness_n_per_m) +
          " N/m differs from the published 18.06 N/m by " + fmt1(pct) + "%");
    }
    if (!near_rel(report.torque_total_nm, kPublishedTorque, 0.05)) {
      const double pct =
          100.0 * std::abs(report.torque_total_nm - kPublishedTorque) /
          kPublishedTorque;
      report.notes.push_back("computed total torque " +
                             fmt3(report.torque_total_nm) +
                             " N m differs from the published 0.23 N m by " +
                             fmt1(pct) + "% (wheel radius and friction sign "
                             "are unpublished)");
    }
  }

  // Record the alternate friction-sign result next to the selected one.
  const FrictionSign alt =
      sign == FrictionSign::paper ? FrictionSign::physical : FrictionSign::paper;
  const double tte_alt =
      tractive_effort(design.mass_kg, accel, gravity,
                      report.sliding_friction_n, report.rolling_resistance_n,
                      alt);
  report.notes.push_back(
      "friction_sign=" + std::string(friction_sign_name(alt)) +
      " would give TTE " + fmt3(tte_alt) + " N, total torque " +
      fmt3(motor_torque(tte_alt, *design.wheel_radius_m)) + " N m");

  return report;
}

}  // namespace pipeclimber
