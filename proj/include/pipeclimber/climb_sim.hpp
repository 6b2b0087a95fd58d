#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pipeclimber/bend_traversal.hpp"
#include "pipeclimber/design_core.hpp"
#include "pipeclimber/pipe_geometry.hpp"

namespace pipeclimber {

struct SimConfig {
  double velocity_mm_s = 100.0;  // centroid speed along the centerline
  double dt_s = 0.001;
  double roll_deg = 0.0;
  FrictionSign friction_sign = FrictionSign::paper;
  double gravity = kDefaultGravity;

  /// velocity > 0, dt > 0 and dt * velocity <= 5 mm (trace fidelity bound).
  void validate() const;
};

enum class Station { front, rear };

struct SpringState {
  int module_id = 0;  // 0..2
  Station station = Station::front;
  /// Relative to the vertical-climb preload; positive = further compressed,
  /// negative = expanded.
  double compression_delta_mm = 0.0;
  double normal_force_n = 0.0;
};

struct TraceRow {
  double t_s = 0.0;
  double s_mm = 0.0;  // centroid arc position, exactly velocity * t
  std::size_t segment_index = 0;
  /// [module][0 = front, 1 = rear] station compression deltas, mm.
  std::array<std::array<double, 2>, 3> delta_mm{};
  /// [module][0 = front, 1 = rear] station normal forces, N.
  std::array<std::array<double, 2>, 3> station_normal_n{};
  std::array<double, 3> module_normal_n{};
  std::array<double, 3> slip_margin_n{};
  std::array<double, 3> speed_scale{1.0, 1.0, 1.0};
  double gravity_axial = 0.0;
  double tractive_effort_n = 0.0;

  SpringState spring(int module, Station st) const {
    const int col = st == Station::front ? 0 : 1;
    return {module, st, delta_mm[module][col], station_normal_n[module][col]};
  }
};

struct TraversalTrace {
  std::vector<TraceRow> rows;
  int saturation_events = 0;  // station-steps clamped at a travel stop
  bool wall_contact = true;   // false when the pipe is wider than d_max
};

struct SimSummary {
  std::size_t rows = 0;
  double min_slip_margin_n = 0.0;
  double min_slip_time_s = 0.0;
  int min_slip_module = 0;
  bool slip_warning = false;  // some margin went negative
  std::array<double, 3> peak_compression_mm{};
  std::array<double, 3> final_compression_mm{};
  int saturation_events = 0;
  /// First time front stations reach 90% of their peak response versus the
  /// same for rear stations; absent when nothing responds (no bend).
  std::optional<double> rear_front_delay_s;
  bool expansion_present = false;
  std::optional<std::pair<double, double>> expansion_interval_s;
  double peak_tractive_effort_n = 0.0;
  std::optional<double> peak_torque_nm;  // needs the design's wheel radius
};

/// Local diameter the robot body can occupy at `station_s`. D on straights;
/// inside a bend the chord relation
///   d = sqrt((R + D/2)^2 - L_in^2) - (R - D/2)
/// applies, with L_in the extent of the trailing body span inside the bend,
/// clamped to [0, span]. Result clamped to [0, D].
/// Throws RangeError when the station lies outside the network.
double available_diameter(const PipeNetwork& network, double station_s_mm,
                          double span_mm);

/// Extra per-module spring compression (mm) from the radial weight
/// component: modules whose outward direction has a positive projection on
/// radial gravity share m*g_radial proportionally; each share divides by
/// springs_per_module * K_s. Vertical pipes give all zeros. Unclamped here;
/// the simulator applies the travel stops.
std::array<double, 3> gravity_load_distribution(const PathPose& pose,
                                                const RobotDesign& design,
                                                double roll_deg,
                                                double gravity = kDefaultGravity);

/// Quasi-static traversal simulation. Station positions are s +- spacing/2;
/// per station the compression delta combines the bend chord deficit, the
/// exit-tilt expansion allowance (capped by the d_max bracket) and the
/// gravity extra, clamped to the travel stops.
/// Throws InfeasibleError (with segment index) when a bend fails the
/// feasibility check or the pipe is narrower than d_min.
TraversalTrace simulate(const PipeNetwork& network, const RobotDesign& design,
                        const SimConfig& config);

SimSummary summarize(const TraversalTrace& trace, const RobotDesign& design);

struct SweepRow {
  double stiffness_n_per_m = 0.0;
  double min_slip_margin_n = 0.0;
  double max_compression_mm = 0.0;
  int saturation_events = 0;
  bool feasible = false;  // min slip margin >= 0
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<std::size_t> first_feasible_index;
};

/// One simulation per stiffness grid point lo, lo+step, ..., <= hi.
/// Throws ValidationError on an empty or inverted range.
SweepResult sweep_stiffness(const PipeNetwork& network,
                            const RobotDesign& design, const SimConfig& config,
                            double stiffness_lo, double stiffness_hi,
                            double stiffness_step);

}  // namespace pipeclimber
