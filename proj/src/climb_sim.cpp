#include "pipeclimber/climb_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pipeclimber {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kResponseEps = 1e-9;  // mm threshold for "a spring responded"

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

struct BendWindow {
  std::size_t segment_index = 0;
  double s_start = 0.0;
  double s_end = 0.0;
  double radius = 0.0;
  double arc_length = 0.0;
  std::array<double, 3> speed_scale{1.0, 1.0, 1.0};
};

/// Chord-relation diameter for a body extent L_in inside the bend,
/// clamped to [0, pipe_d].
double chord_diameter(double bend_radius, double pipe_d, double l_in) {
  const double outer = bend_radius + pipe_d / 2.0;
  const double radicand = outer * outer - l_in * l_in;
  if (radicand <= 0.0) return 0.0;
  const double d = std::sqrt(radicand) - (bend_radius - pipe_d / 2.0);
  return std::clamp(d, 0.0, pipe_d);
}

/// Geometric station compression delta (mm, positive = compression beyond
/// the straight-pipe reference, negative = exit-tilt expansion).
///
/// The body is treated as a rigid span of length `span` trailing the
/// station. Inside a bend the chord relation compresses the station; in the
/// straight past a bend exit the body pivots about its in-bend tail; the
/// station then sits in an oblique pipe section of diameter D / cos(beta),
/// capped by the d_max bracket.
double geometric_delta(const std::vector<BendWindow>& bends, double pipe_d,
                       double span, double d_ref, double d_max, double p) {
  for (const auto& bend : bends) {
    if (p >= bend.s_start && p < bend.s_end) {
      const double l_in = std::min(p - bend.s_start, span);
      const double d_avail = chord_diameter(bend.radius, pipe_d, l_in);
      return (d_ref - std::min(d_avail, d_ref)) / 2.0;
    }
  }
  // Station in a straight: look for the bend immediately behind it.
  const BendWindow* behind = nullptr;
  for (const auto& bend : bends) {
    if (bend.s_end <= p && (behind == nullptr || bend.s_end > behind->s_end)) {
      behind = &bend;
    }
  }
  if (behind != nullptr) {
    const double u = p - behind->s_end;  // distance past the exit
    const double tail_in_bend = std::min(span - u, behind->arc_length);
    if (u < span && tail_in_bend > 0.0) {
      const double alpha = tail_in_bend / behind->radius;
      const double beta =
          std::atan2(behind->radius * (1.0 - std::cos(alpha)),
                     u + behind->radius * std::sin(alpha));
      const double oblique = pipe_d / std::cos(beta);
      const double allowance =
          std::max(0.0, (std::min(oblique, d_max) - d_ref) / 2.0);
      return -allowance;
    }
  }
  return 0.0;
}

}  // namespace

void SimConfig::validate() const {
  if (!(velocity_mm_s > 0.0)) {
    throw ValidationError("simulation velocity must be positive");
  }
  if (!(dt_s > 0.0)) throw ValidationError("simulation dt must be positive");
  if (!(dt_s * velocity_mm_s <= 5.0)) {
    throw ValidationError("dt * velocity must not exceed 5 mm per step");
  }
  if (!(gravity > 0.0)) throw ValidationError("gravity must be positive");
}

double available_diameter(const PipeNetwork& network, double station_s_mm,
                          double span_mm) {
  if (!(span_mm >= 0.0)) throw ValidationError("span cannot be negative");
  const double total = network.total_arc_length_mm();
  if (!(station_s_mm >= 0.0 && station_s_mm <= total)) {
    throw RangeError("station at " + std::to_string(station_s_mm) +
                     " mm outside network [0, " + std::to_string(total) + "]");
  }
  const double pipe_d = network.pipe().inner_diameter_mm;
  for (std::size_t i = 0; i < network.segments().size(); ++i) {
    const auto& seg = network.segments()[i];
    if (!seg.is_bend()) continue;
    const auto [b0, b1] = network.arc_bounds(i);
    if (station_s_mm >= b0 && station_s_mm < b1) {
      const double l_in = std::min(station_s_mm - b0, span_mm);
      return chord_diameter(seg.bend().radius_mm, pipe_d, l_in);
    }
  }
  return pipe_d;
}

std::array<double, 3> gravity_load_distribution(const PathPose& pose,
                                                const RobotDesign& design,
                                                double roll_deg,
                                                double gravity) {
  design.validate();
  std::array<double, 3> extra{0.0, 0.0, 0.0};
  const Vec3 down{0.0, 0.0, -1.0};
  const Vec3& t = pose.axis_direction;
  const Vec3 radial = down - t * down.dot(t);
  const double radial_norm = radial.norm();
  if (radial_norm < 1e-12) return extra;  // vertical pipe, gravity is axial
  const Vec3 g_rad = radial * (1.0 / radial_norm);

  std::array<double, 3> weight{};
  double weight_sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3 outward = rotate_about_axis(
        pose.reference_outward, t, deg_to_rad(roll_deg + 120.0 * k));
    weight[k] = std::max(0.0, g_rad.dot(outward));
    weight_sum += weight[k];
  }
  if (weight_sum <= 0.0) return extra;

  const double radial_load = design.mass_kg * gravity * radial_norm;  // N
  const double module_stiffness =
      design.springs_per_module * design.spring_stiffness_n_per_m;
  for (int k = 0; k < 3; ++k) {
    const double load = radial_load * weight[k] / weight_sum;
    extra[k] = load / module_stiffness * 1000.0;  // m -> mm
  }
  return extra;
}

TraversalTrace simulate(const PipeNetwork& network, const RobotDesign& design,
                        const SimConfig& config) {
  config.validate();
  design.validate();

  const double pipe_d = network.pipe().inner_diameter_mm;
  if (pipe_d <= design.d_min_mm) {
    throw InfeasibleError(
        "pipe inner diameter " + std::to_string(pipe_d) +
        " mm is at or below the robot's compressed diameter " +
        std::to_string(design.d_min_mm) + " mm");
  }

  // Per-bend feasibility and differential speed scales.
  std::vector<BendWindow> bends;
  for (std::size_t i = 0; i < network.segments().size(); ++i) {
    const auto& seg = network.segments()[i];
    if (!seg.is_bend()) continue;
    const auto& b = seg.bend();
    const BendFeasibility feas = check_bend(b.radius_mm, pipe_d, b.angle_deg,
                                            design.d_min_mm, design.length_mm);
    if (!feas.feasible) {
      std::string why;
      for (const auto& note : feas.notes) {
        if (!why.empty()) why += "; ";
        why += note;
      }
      throw InfeasibleError("segment " + std::to_string(i) +
                                ": bend not traversable: " + why,
                            static_cast<int>(i));
    }

    BendWindow window;
    window.segment_index = i;
    const auto [b0, b1] = network.arc_bounds(i);
    window.s_start = b0;
    window.s_end = b1;
    window.radius = b.radius_mm;
    window.arc_length = b1 - b0;

    // Module path radii with azimuths measured against this bend's outer
    // direction through the transported anchor frame.
    const PathPose entry = network.pose_at(b0);
    const Vec3 outer =
        turn_vector(entry.frame, b.direction) * -1.0;
    const double rho = design.d_min_mm / 2.0;
    std::array<double, 3> radii{};
    for (int k = 0; k < 3; ++k) {
      const Vec3 outward = rotate_about_axis(
          entry.reference_outward, entry.axis_direction,
          deg_to_rad(config.roll_deg + 120.0 * k));
      radii[k] = std::max(1e-9, b.radius_mm + rho * outer.dot(outward));
    }
    window.speed_scale = speed_plan_from_radii(radii).speed_scale;
    bends.push_back(window);
  }

  const double d_ref = std::min(pipe_d, design.d_max_mm);
  const double preload_travel = (design.d_max_mm - d_ref) / 2.0;
  const double max_travel = design.max_travel_mm();
  const bool contact = pipe_d < design.d_max_mm;
  const double span = design.length_mm;
  const double half_spacing = design.spring_spacing_mm / 2.0;
  const double station_springs = design.springs_per_module / 2.0;
  const double total = network.total_arc_length_mm();
  const double v = config.velocity_mm_s;
  const double dt = config.dt_s;

  TraversalTrace trace;
  trace.wall_contact = contact;
  const std::size_t steps =
      static_cast<std::size_t>(std::ceil(total / (v * dt)));
  trace.rows.reserve(steps + 1);

  for (std::size_t k = 0; k <= steps; ++k) {
    TraceRow row;
    row.t_s = k * dt;
    row.s_mm = v * row.t_s;
    const double s_center = std::clamp(row.s_mm, 0.0, total);
    const PathPose center = network.pose_at(s_center);
    row.segment_index = center.segment_index;
    row.gravity_axial = center.gravity_axial_component;
    for (const auto& bend : bends) {
      if (bend.segment_index == center.segment_index) {
        row.speed_scale = bend.speed_scale;
        break;
      }
    }

    for (int st = 0; st < 2; ++st) {
      const double offset = st == 0 ? half_spacing : -half_spacing;
      const double p = std::clamp(row.s_mm + offset, 0.0, total);
      const double geo =
          geometric_delta(bends, pipe_d, span, d_ref, design.d_max_mm, p);
      const std::array<double, 3> extra = gravity_load_distribution(
          network.pose_at(p), design, config.roll_deg, config.gravity);
      for (int m = 0; m < 3; ++m) {
        const double travel_raw = preload_travel + geo + extra[m];
        const double travel = std::clamp(travel_raw, 0.0, max_travel);
        if (travel_raw > max_travel + 1e-12 || travel_raw < -1e-12) {
          ++trace.saturation_events;
        }
        const double delta = travel - preload_travel;
        row.delta_mm[m][st] = delta;
        const double spring_compression_m =
            design.preload_compression_m + delta / 1000.0;
        row.station_normal_n[m][st] =
            contact ? std::max(0.0, station_springs *
                                        design.spring_stiffness_n_per_m *
                                        spring_compression_m)
                    : 0.0;
      }
    }

    double normal_total = 0.0;
    for (int m = 0; m < 3; ++m) {
      row.module_normal_n[m] =
          row.station_normal_n[m][0] + row.station_normal_n[m][1];
      normal_total += row.module_normal_n[m];
    }

    const double axial_load =
        design.mass_kg * config.gravity * row.gravity_axial;
    const double friction = design.mu_kinetic * normal_total;
    row.tractive_effort_n =
        axial_load + friction_sign_value(config.friction_sign) * friction;

    const double scale_sum =
        row.speed_scale[0] + row.speed_scale[1] + row.speed_scale[2];
    for (int m = 0; m < 3; ++m) {
      const double share = std::abs(axial_load) * row.speed_scale[m] / scale_sum;
      row.slip_margin_n[m] = design.mu_static * row.module_normal_n[m] - share;
    }

    trace.rows.push_back(row);
  }

  return trace;
}

SimSummary summarize(const TraversalTrace& trace, const RobotDesign& design) {
  SimSummary summary;
  summary.rows = trace.rows.size();
  summary.saturation_events = trace.saturation_events;
  if (trace.rows.empty()) return summary;

  summary.min_slip_margin_n = trace.rows.front().slip_margin_n[0];
  double front_peak = 0.0;
  double rear_peak = 0.0;
  for (const auto& row : trace.rows) {
    for (int m = 0; m < 3; ++m) {
      if (row.slip_margin_n[m] < summary.min_slip_margin_n) {
        summary.min_slip_margin_n = row.slip_margin_n[m];
        summary.min_slip_time_s = row.t_s;
        summary.min_slip_module = m;
      }
      summary.peak_compression_mm[m] =
          std::max({summary.peak_compression_mm[m], row.delta_mm[m][0],
                    row.delta_mm[m][1]});
      front_peak = std::max(front_peak, std::abs(row.delta_mm[m][0]));
      rear_peak = std::max(rear_peak, std::abs(row.delta_mm[m][1]));
    }
    summary.peak_tractive_effort_n = std::max(
        summary.peak_tractive_effort_n, std::abs(row.tractive_effort_n));
  }
  summary.slip_warning = summary.min_slip_margin_n < 0.0;

  for (int m = 0; m < 3; ++m) {
    const auto& last = trace.rows.back();
    summary.final_compression_mm[m] =
        (last.delta_mm[m][0] + last.delta_mm[m][1]) / 2.0;
  }

  // Rear response replays the front response; measure the lag at the first
  // crossing of 90% of each group's peak.
  if (front_peak > kResponseEps && rear_peak > kResponseEps) {
    std::optional<double> t_front;
    std::optional<double> t_rear;
    for (const auto& row : trace.rows) {
      double f = 0.0;
      double r = 0.0;
      for (int m = 0; m < 3; ++m) {
        f = std::max(f, std::abs(row.delta_mm[m][0]));
        r = std::max(r, std::abs(row.delta_mm[m][1]));
      }
      if (!t_front && f >= 0.9 * front_peak) t_front = row.t_s;
      if (!t_rear && r >= 0.9 * rear_peak) t_rear = row.t_s;
      if (t_front && t_rear) break;
    }
    if (t_front && t_rear) summary.rear_front_delay_s = *t_rear - *t_front;
  }

  // First contiguous interval where a front spring expands past preload.
  bool in_run = false;
  for (const auto& row : trace.rows) {
    const bool negative = row.delta_mm[0][0] < -kResponseEps ||
                          row.delta_mm[1][0] < -kResponseEps ||
                          row.delta_mm[2][0] < -kResponseEps;
    if (negative && !summary.expansion_interval_s) {
      summary.expansion_present = true;
      summary.expansion_interval_s = {row.t_s, row.t_s};
      in_run = true;
    } else if (negative && in_run) {
      summary.expansion_interval_s->second = row.t_s;
    } else if (!negative && in_run) {
      break;
    }
  }

  if (design.wheel_radius_m) {
    summary.peak_torque_nm =
        summary.peak_tractive_effort_n * *design.wheel_radius_m;
  }
  return summary;
}

SweepResult sweep_stiffness(const PipeNetwork& network,
                            const RobotDesign& design, const SimConfig& config,
                            double stiffness_lo, double stiffness_hi,
                            double stiffness_step) {
  if (!(stiffness_lo > 0.0) || !(stiffness_hi >= stiffness_lo) ||
      !(stiffness_step > 0.0)) {
    throw ValidationError(
        "stiffness sweep needs 0 < lo <= hi and a positive step");
  }
  SweepResult result;
  const int count = static_cast<int>(
      std::floor((stiffness_hi - stiffness_lo) / stiffness_step + 1e-9));
  for (int i = 0; i <= count; ++i) {
    RobotDesign variant = design;
    variant.spring_stiffness_n_per_m = stiffness_lo + i * stiffness_step;
    const TraversalTrace trace = simulate(network, variant, config);
    const SimSummary summary = summarize(trace, variant);

    SweepRow row;
    row.stiffness_n_per_m = variant.spring_stiffness_n_per_m;
    row.min_slip_margin_n = summary.min_slip_margin_n;
    row.max_compression_mm =
        *std::max_element(summary.peak_compression_mm.begin(),
                          summary.peak_compression_mm.end());
    row.saturation_events = summary.saturation_events;
    row.feasible = row.min_slip_margin_n >= 0.0;
    if (row.feasible && !result.first_feasible_index) {
      result.first_feasible_index = result.rows.size();
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace pipeclimber
