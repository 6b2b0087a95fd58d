#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pipeclimber/errors.hpp"

namespace pipeclimber {

// ---------------------------------------------------------------------------
// Small 3-vector. World frame: +z is up, gravity acts along -z.
// ---------------------------------------------------------------------------

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// ---------------------------------------------------------------------------
// Pipe cross-sections and the ingested dimension table
// ---------------------------------------------------------------------------

enum class Schedule { sch40, sch80, sch120 };

int schedule_number(Schedule s);
std::optional<Schedule> schedule_from_number(int n);

struct ScheduleRow {
  std::string nps;     // nominal pipe size label, e.g. "6"
  Schedule schedule = Schedule::sch40;
  double od_mm = 0.0;
  double wall_mm = 0.0;

  double inner_diameter_mm() const { return od_mm - 2.0 * wall_mm; }
};

/// Pipe dimension table, one row per (nps, schedule).
///
/// File format: `nps schedule od_mm wall_mm` whitespace-separated rows,
/// `#` comments. The default table ships in data/astm_d1785_nps.txt and is
/// also compiled in; PIPECLIMBER_SCHEDULE_TABLE points at an override file.
class ScheduleTable {
 public:
  static const ScheduleTable& builtin();
  /// Builtin table unless PIPECLIMBER_SCHEDULE_TABLE names a readable file.
  static const ScheduleTable& resolve_default();
  static ScheduleTable parse(std::string_view text);
  static ScheduleTable load_file(const std::string& path);

  const ScheduleRow* find(std::string_view nps, Schedule schedule) const;
  const std::vector<ScheduleRow>& rows() const { return rows_; }

 private:
  std::vector<ScheduleRow> rows_;
};

struct PipeSpec {
  struct Standard {
    std::string nps;
    Schedule schedule = Schedule::sch40;
    bool operator==(const Standard&) const = default;
  };

  /// Set when resolved from the dimension table.
  std::optional<Standard> standard;
  double inner_diameter_mm = 0.0;
  std::optional<double> outer_diameter_mm;

  bool operator==(const PipeSpec&) const = default;
};

/// Explicit inner diameter. Throws ValidationError when non-positive.
PipeSpec resolve_pipe_spec(double explicit_inner_mm);

/// Table lookup. Throws LookupError naming the (nps, schedule) pair when the
/// table has no such row.
PipeSpec resolve_pipe_spec(std::string_view nps, Schedule schedule,
                           const ScheduleTable& table = ScheduleTable::resolve_default());

// ---------------------------------------------------------------------------
// Network segments
// ---------------------------------------------------------------------------

enum class TurnDirection { up, down, left, right };

std::string_view turn_direction_name(TurnDirection d);
std::optional<TurnDirection> turn_direction_from_name(std::string_view name);

struct StraightSegment {
  double length_mm = 0.0;
  /// Degrees from horizontal; only meaningful (and only legal in the text
  /// format) on the first segment. Later orientation follows from bends.
  std::optional<double> incline_deg;

  bool operator==(const StraightSegment&) const = default;
};

struct BendSegment {
  double angle_deg = 0.0;       // in (0, 90]
  double radius_mm = 0.0;       // centerline radius of curvature R
  TurnDirection direction = TurnDirection::up;

  bool operator==(const BendSegment&) const = default;
};

struct PipeSegment {
  std::variant<StraightSegment, BendSegment> shape;

  bool is_bend() const { return std::holds_alternative<BendSegment>(shape); }
  const BendSegment& bend() const { return std::get<BendSegment>(shape); }
  const StraightSegment& straight() const {
    return std::get<StraightSegment>(shape);
  }
  /// Centerline arc length; R * angle for bends.
  double arc_length_mm() const;

  bool operator==(const PipeSegment&) const = default;
};

// ---------------------------------------------------------------------------
// Arc-length parametrized path
// ---------------------------------------------------------------------------

/// Orthonormal frame transported along the centerline. `up` starts as the
/// in-plane perpendicular of the initial incline and rotates rigidly through
/// bends; `left` = up x tangent.
struct PathFrame {
  Vec3 tangent;
  Vec3 up;
  Vec3 left;
};

struct PathPose {
  double s_mm = 0.0;
  std::size_t segment_index = 0;
  Vec3 axis_direction;
  /// Cosine between the travel direction and world up, in [-1, 1].
  /// +1 climbing straight up, 0 horizontal.
  double gravity_axial_component = 0.0;
  PathFrame frame;
  /// Azimuth-zero direction for module placement: the first bend's outer
  /// direction transported along the path (local up when there is no bend).
  Vec3 reference_outward;
};

/// Ordered, junction-free sequence of straights and circular-arc bends,
/// parametrized by centerline arc length from the network start.
class PipeNetwork {
 public:
  /// Validates segment invariants; throws ValidationError.
  PipeNetwork(PipeSpec pipe, std::vector<PipeSegment> segments);

  const PipeSpec& pipe() const { return pipe_; }
  const std::vector<PipeSegment>& segments() const { return segments_; }
  double total_arc_length_mm() const { return cumulative_.back(); }
  double initial_incline_deg() const { return initial_incline_deg_; }

  /// (s_start, s_end) of a segment. Throws RangeError on a bad index.
  std::pair<double, double> arc_bounds(std::size_t segment_index) const;

  /// Pose of the centerline point at arc length s in [0, total].
  /// Throws RangeError when s is outside the network.
  PathPose pose_at(double s_mm) const;

  /// Index of the segment containing s (last point belongs to the last
  /// segment). Throws RangeError when s is outside the network.
  std::size_t segment_index_at(double s_mm) const;

  bool operator==(const PipeNetwork& o) const {
    return pipe_ == o.pipe_ && segments_ == o.segments_;
  }

 private:
  PipeSpec pipe_;
  std::vector<PipeSegment> segments_;
  std::vector<double> cumulative_;    // size() == segments + 1
  std::vector<PathFrame> start_frames_;
  double initial_incline_deg_ = 0.0;
  // Constant coordinates of the module azimuth anchor in the transported
  // (up, left) basis.
  double anchor_up_ = 1.0;
  double anchor_left_ = 0.0;
};

/// Direction from the centerline toward the bend center, expressed through
/// the local frame (the vector the tangent rotates toward).
Vec3 turn_vector(const PathFrame& frame, TurnDirection direction);

/// Rodrigues rotation of v about the unit axis by angle (radians).
Vec3 rotate_about_axis(const Vec3& v, const Vec3& unit_axis, double angle_rad);

}  // namespace pipeclimber
