#include <doctest.h>

#include <cmath>
#include <random>

#include "pipeclimber/design_core.hpp"

using namespace pipeclimber;

namespace {

RobotDesign paper_design() {
  RobotDesign d;
  d.mass_kg = 0.470;
  d.length_mm = 150.0;
  d.d_max_mm = 163.33;
  d.d_min_mm = 129.54;
  d.spring_stiffness_n_per_m = 18.06;
  d.preload_compression_m = 0.026;
  d.spring_spacing_mm = 30.0;
  d.mu_static = 0.7;
  d.mu_kinetic = 0.7;
  d.wheel_radius_m = 0.02;
  return d;
}

}  // namespace

TEST_SUITE("design_core") {

TEST_CASE("required stiffness matches the hand evaluation") {
  const double k = required_stiffness(0.470, 0.026, 0.7, 9.81, 3, 4);
  CHECK(k == doctest::Approx(21.111263736263737).epsilon(1e-12));
  CHECK(std::abs(k - 21.11) < 0.01);
  CHECK(required_stiffness(0.0, 0.026, 0.7, 9.81, 3, 4) == 0.0);
  CHECK_THROWS_AS(required_stiffness(0.470, 0.0, 0.7), InfeasibleError);
  CHECK_THROWS_AS(required_stiffness(0.470, 0.026, 0.0), InfeasibleError);
  CHECK_THROWS_AS(required_stiffness(0.470, 0.026, 0.7, 9.81, 0, 4),
                  ValidationError);
}

TEST_CASE("doubling static friction halves the stiffness") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mass(0.05, 20.0);
  std::uniform_real_distribution<double> preload(0.001, 0.1);
  std::uniform_real_distribution<double> mu(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double m = mass(rng);
    const double x = preload(rng);
    const double u = mu(rng);
    const double k1 = required_stiffness(m, x, u);
    const double k2 = required_stiffness(m, x, 2.0 * u);
    CHECK(k1 == doctest::Approx(2.0 * k2).epsilon(1e-12));
    // Homogeneity in mass and preload.
    CHECK(required_stiffness(3.0 * m, x, u) ==
          doctest::Approx(3.0 * k1).epsilon(1e-12));
    CHECK(required_stiffness(m, 2.0 * x, u) ==
          doctest::Approx(k1 / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("force balance closure: sliding friction at the solved stiffness "
          "carries the weight") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> mass(0.01, 50.0);
  std::uniform_real_distribution<double> preload(0.0005, 0.2);
  std::uniform_real_distribution<double> mu(0.02, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double m = mass(rng);
    const double x = preload(rng);
    const double u = mu(rng);
    const double k = required_stiffness(m, x, u, 9.81, 3, 4);
    const double f = sliding_friction(u, k, x, 3, 4);
    CHECK(std::abs(f - m * 9.81) <= 1e-9 * std::abs(m * 9.81));
  }
}

TEST_CASE("normal force") {
  CHECK(normal_force(18.06, 0.026, 3, 4) ==
        doctest::Approx(5.63472).epsilon(1e-12));
  CHECK(normal_force(42.0, 0.0, 3, 4) == 0.0);
  const double n = normal_force(21.111263736263737, 0.026, 3, 4);
  CHECK(0.7 * n == doctest::Approx(0.470 * 9.81).epsilon(1e-12));
}

TEST_CASE("rolling resistance") {
  CHECK(rolling_resistance(5.635, 0.0) == 0.0);
  CHECK(rolling_resistance(5.635, 0.01) == doctest::Approx(0.05635));
  CHECK(rolling_resistance(0.0, 0.3) == 0.0);
  CHECK_THROWS_AS(rolling_resistance(-1.0, 0.0), ValidationError);
}

TEST_CASE("sliding friction") {
  CHECK(sliding_friction(0.7, 18.06, 0.026, 3, 4) ==
        doctest::Approx(3.944304).epsilon(1e-12));
  CHECK(sliding_friction(0.0, 18.06, 0.026, 3, 4) == 0.0);
}

TEST_CASE("tractive effort in both friction modes") {
  const double f = sliding_friction(0.7, 18.06, 0.026, 3, 4);
  CHECK(tractive_effort(0.470, 0.0, 9.81, f, 0.0, FrictionSign::paper) ==
        doctest::Approx(0.666396).epsilon(1e-9));
  CHECK(tractive_effort(0.470, 0.0, 9.81, 0.0, 0.0) ==
        doctest::Approx(0.470 * 9.81).epsilon(1e-15));
  CHECK(tractive_effort(0.470, 0.0, 9.81, f, 0.0, FrictionSign::physical) ==
        doctest::Approx(8.555004).epsilon(1e-9));
}

TEST_CASE("motor torque is linear in both arguments") {
  CHECK(motor_torque(0.666396, 0.020) ==
        doctest::Approx(0.01332792).epsilon(1e-12));
  CHECK(motor_torque(0.0, 0.5) == 0.0);
  CHECK(motor_torque(8.555004, 0.027) ==
        doctest::Approx(0.231).epsilon(1e-3));
  CHECK_THROWS_AS(motor_torque(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(motor_torque(1.0, -0.1), ValidationError);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> tte(-20.0, 20.0);
  std::uniform_real_distribution<double> radius(0.001, 0.2);
  std::uniform_real_distribution<double> scale(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double e = tte(rng);
    const double r = radius(rng);
    const double c = scale(rng);
    CHECK(motor_torque(c * e, r) ==
          doctest::Approx(c * motor_torque(e, r)).epsilon(1e-12));
    CHECK(motor_torque(e, c * r) ==
          doctest::Approx(c * motor_torque(e, r)).epsilon(1e-12));
  }
}

TEST_CASE("design report on the published inputs") {
  MotorSpec motor;
  motor.stall_torque_nm = 0.88;
  const DesignReport report =
      design_report(paper_design(), 9.81, 0.0, 0.0, 2.0, motor);

  CHECK(report.required_stiffness_n_per_m ==
        doctest::Approx(21.111263736263737).epsilon(1e-12));
  CHECK(report.normal_force_n == doctest::Approx(5.63472));
  CHECK(report.sliding_friction_n == doctest::Approx(3.944304));
  CHECK(report.tractive_effort_n == doctest::Approx(0.666396));
  CHECK(report.torque_total_nm == doctest::Approx(0.666396 * 0.02));
  CHECK(report.torque_per_motor_nm ==
        doctest::Approx(0.666396 * 0.02 / 3.0));
  CHECK(report.torque_ok);

  bool stiffness_note = false;
  bool alt_sign_note = false;
  for (const auto& note : report.notes) {
    if (note.find("18.06") != std::string::npos) stiffness_note = true;
    if (note.find("8.555") != std::string::npos) alt_sign_note = true;
  }
  CHECK(stiffness_note);
  CHECK(alt_sign_note);
}

TEST_CASE("design report validation") {
  MotorSpec motor;
  motor.stall_torque_nm = 0.88;
  CHECK_THROWS_AS(design_report(paper_design(), 9.81, 0.0, 0.0, 0.0, motor),
                  ValidationError);
  RobotDesign no_wheel = paper_design();
  no_wheel.wheel_radius_m.reset();
  CHECK_THROWS_AS(design_report(no_wheel, 9.81, 0.0, 0.0, 2.0, motor),
                  ValidationError);
  RobotDesign bad = paper_design();
  bad.d_min_mm = 170.0;
  CHECK_THROWS_AS(design_report(bad, 9.81, 0.0, 0.0, 2.0, motor),
                  ValidationError);
}

TEST_CASE("torque margin uses the per-motor share") {
  // 0.88 N m motor vs 0.08 N m per-motor demand at safety factor 2.
  RobotDesign d = paper_design();
  d.mu_kinetic = 0.7;
  d.wheel_radius_m = 0.08 * 3.0 / 8.555004;  // per-motor torque 0.08 (physical)
  MotorSpec motor;
  motor.stall_torque_nm = 0.88;
  const DesignReport report =
      design_report(d, 9.81, 0.0, 0.0, 2.0, motor, FrictionSign::physical);
  CHECK(report.torque_per_motor_nm == doctest::Approx(0.08).epsilon(1e-9));
  CHECK(report.torque_ok);  // 0.88 >= 2 * 0.08
  const DesignReport tight =
      design_report(d, 9.81, 0.0, 0.0, 12.0, motor, FrictionSign::physical);
  CHECK_FALSE(tight.torque_ok);  // 0.88 < 12 * 0.08
}

TEST_CASE("report fields stay finite over random designs") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> mass(0.01, 80.0);
  std::uniform_real_distribution<double> preload(0.0005, 0.15);
  std::uniform_real_distribution<double> mu(0.05, 1.9);
  std::uniform_real_distribution<double> stiffness(1.0, 5000.0);
  std::uniform_real_distribution<double> radius(0.001, 0.3);
  MotorSpec motor;
  motor.stall_torque_nm = 0.88;
  for (int i = 0; i < 300; ++i) {
    RobotDesign d = paper_design();
    d.mass_kg = mass(rng);
    d.preload_compression_m = preload(rng);
    d.mu_kinetic = mu(rng);
    d.mu_static = d.mu_kinetic;
    d.spring_stiffness_n_per_m = stiffness(rng);
    d.wheel_radius_m = radius(rng);
    const DesignReport r = design_report(d, 9.81, 0.0, 0.0, 2.0, motor);
    for (const double v :
         {r.normal_force_n, r.rolling_resistance_n, r.sliding_friction_n,
          r.inertial_force_n, r.tractive_effort_n, r.torque_total_nm,
          r.torque_per_motor_nm, r.required_stiffness_n_per_m}) {
      CHECK(std::isfinite(v));
    }
  }
}

}  // TEST_SUITE
