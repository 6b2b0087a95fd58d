#include "pipeclimber/pipe_geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pipeclimber {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

PathFrame rotate_frame(const PathFrame& f, const Vec3& axis, double angle) {
  PathFrame out;
  out.tangent = rotate_about_axis(f.tangent, axis, angle).normalized();
  out.up = rotate_about_axis(f.up, axis, angle);
  // Re-orthonormalize to keep drift out of long networks.
  out.up = (out.up - out.tangent * out.tangent.dot(out.up)).normalized();
  out.left = out.up.cross(out.tangent);
  return out;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n <= 0.0) throw ValidationError("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

Vec3 rotate_about_axis(const Vec3& v, const Vec3& unit_axis, double angle_rad) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  const Vec3 ncv = unit_axis.cross(v);
  const double nd = unit_axis.dot(v);
  return v * c + ncv * s + unit_axis * (nd * (1.0 - c));
}

// ---------------------------------------------------------------------------
// Schedule table
// ---------------------------------------------------------------------------

int schedule_number(Schedule s) {
  switch (s) {
    case Schedule::sch40: return 40;
    case Schedule::sch80: return 80;
    case Schedule::sch120: return 120;
  }
  return 0;
}

std::optional<Schedule> schedule_from_number(int n) {
  switch (n) {
    case 40: return Schedule::sch40;
    case 80: return Schedule::sch80;
    case 120: return Schedule::sch120;
    default: return std::nullopt;
  }
}

namespace {

// Mirror of data/astm_d1785_nps.txt.
constexpr std::string_view kBuiltinScheduleTable = R"(# ASTM D1785 PVC pipe dimensions, millimetres.
# Columns: nps schedule od_mm wall_mm
# Inner diameter is derived as od_mm - 2*wall_mm.
4 40  114.3    6.0198
4 80  114.3    8.5598
4 120 114.3    11.1252
5 40  141.3002 6.5532
5 80  141.3002 9.525
5 120 141.3002 12.7
6 40  168.275  7.112
6 80  168.275  10.9728
6 120 168.275  14.2748
8 40  219.075  8.1788
8 80  219.075  12.7
8 120 219.075  18.2626
)";

double parse_table_number(const std::string& token, int line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("schedule table line " + std::to_string(line_no) +
                          ": bad number '" + token + "'");
  }
  return value;
}

}  // namespace

ScheduleTable ScheduleTable::parse(std::string_view text) {
  ScheduleTable table;
  std::string line;
  std::istringstream stream{std::string(text)};
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string nps, sched, od, wall;
    if (!(fields >> nps)) continue;  // blank line
    if (!(fields >> sched >> od >> wall)) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": expected 'nps schedule od_mm wall_mm'");
    }
    std::string extra;
    if (fields >> extra) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": trailing field '" + extra + "'");
    }
    const double sched_num = parse_table_number(sched, line_no);
    const auto schedule = schedule_from_number(static_cast<int>(sched_num));
    if (!schedule) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": schedule must be 40, 80 or 120");
    }
    ScheduleRow row;
    row.nps = nps;
    row.schedule = *schedule;
    row.od_mm = parse_table_number(od, line_no);
    row.wall_mm = parse_table_number(wall, line_no);
    if (row.od_mm <= 0.0 || row.wall_mm <= 0.0 ||
        row.inner_diameter_mm() <= 0.0) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": dimensions must give a positive inner diameter");
    }
    table.rows_.push_back(std::move(row));
  }
  return table;
}

ScheduleTable ScheduleTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open schedule table file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const ScheduleTable& ScheduleTable::builtin() {
  static const ScheduleTable table = parse(kBuiltinScheduleTable);
  return table;
}

const ScheduleTable& ScheduleTable::resolve_default() {
  static const ScheduleTable* resolved = []() -> const ScheduleTable* {
    const char* path = std::getenv("PIPECLIMBER_SCHEDULE_TABLE");
    if (path != nullptr && *path != '\0') {
      static const ScheduleTable from_env = load_file(path);
      return &from_env;
    }
    return &builtin();
  }();
  return *resolved;
}

const ScheduleRow* ScheduleTable::find(std::string_view nps,
                                       Schedule schedule) const {
  for (const auto& row : rows_) {
    if (row.nps == nps && row.schedule == schedule) return &row;
  }
  return nullptr;
}

PipeSpec resolve_pipe_spec(double explicit_inner_mm) {
  if (!(explicit_inner_mm > 0.0)) {
    throw ValidationError("pipe inner diameter must be positive, got " +
                          std::to_string(explicit_inner_mm) + " mm");
  }
  PipeSpec spec;
  spec.inner_diameter_mm = explicit_inner_mm;
  return spec;
}

PipeSpec resolve_pipe_spec(std::string_view nps, Schedule schedule,
                           const ScheduleTable& table) {
  const ScheduleRow* row = table.find(nps, schedule);
  if (row == nullptr) {
    throw LookupError("no schedule table row for (nps " + std::string(nps) +
                      ", schedule " + std::to_string(schedule_number(schedule)) +
                      ")");
  }
  PipeSpec spec;
  spec.standard = PipeSpec::Standard{std::string(nps), schedule};
  spec.inner_diameter_mm = row->inner_diameter_mm();
  spec.outer_diameter_mm = row->od_mm;
  return spec;
}

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

std::string_view turn_direction_name(TurnDirection d) {
  switch (d) {
    case TurnDirection::up: return "up";
    case TurnDirection::down: return "down";
    case TurnDirection::left: return "left";
    case TurnDirection::right: return "right";
  }
  return "up";
}

std::optional<TurnDirection> turn_direction_from_name(std::string_view name) {
  if (name == "up") return TurnDirection::up;
  if (name == "down") return TurnDirection::down;
  if (name == "left") return TurnDirection::left;
  if (name == "right") return TurnDirection::right;
  return std::nullopt;
}

double PipeSegment::arc_length_mm() const {
  if (is_bend()) {
    const auto& b = bend();
    return b.radius_mm * deg_to_rad(b.angle_deg);
  }
  return straight().length_mm;
}

Vec3 turn_vector(const PathFrame& frame, TurnDirection direction) {
  switch (direction) {
    case TurnDirection::up: return frame.up;
    case TurnDirection::down: return frame.up * -1.0;
    case TurnDirection::left: return frame.left;
    case TurnDirection::right: return frame.left * -1.0;
  }
  return frame.up;
}

// ---------------------------------------------------------------------------
// PipeNetwork
// ---------------------------------------------------------------------------

PipeNetwork::PipeNetwork(PipeSpec pipe, std::vector<PipeSegment> segments)
    : pipe_(std::move(pipe)), segments_(std::move(segments)) {
  if (!(pipe_.inner_diameter_mm > 0.0)) {
    throw ValidationError("network pipe must have a positive inner diameter");
  }
  if (segments_.empty()) {
    throw ValidationError("a pipe network needs at least one segment");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (seg.is_bend()) {
      const auto& b = seg.bend();
      if (!(b.angle_deg > 0.0 && b.angle_deg <= 90.0)) {
        throw ValidationError("segment " + std::to_string(i) +
                              ": bend angle must be in (0, 90] degrees");
      }
      if (!(b.radius_mm > 0.0)) {
        throw ValidationError("segment " + std::to_string(i) +
                              ": bend radius must be positive");
      }
    } else {
      const auto& st = seg.straight();
      if (!(st.length_mm > 0.0)) {
        throw ValidationError("segment " + std::to_string(i) +
                              ": straight length must be positive");
      }
      if (st.incline_deg) {
        if (i != 0) {
          throw ValidationError("segment " + std::to_string(i) +
                                ": incline is only legal on the first segment");
        }
        if (!(*st.incline_deg >= -90.0 && *st.incline_deg <= 90.0)) {
          throw ValidationError("incline must be in [-90, 90] degrees");
        }
      }
    }
  }

  if (!segments_.front().is_bend() &&
      segments_.front().straight().incline_deg) {
    initial_incline_deg_ = *segments_.front().straight().incline_deg;
  }

  // Cumulative arc lengths and per-segment start frames.
  cumulative_.reserve(segments_.size() + 1);
  cumulative_.push_back(0.0);
  start_frames_.reserve(segments_.size());

  const double incline = deg_to_rad(initial_incline_deg_);
  PathFrame frame;
  frame.tangent = {std::cos(incline), 0.0, std::sin(incline)};
  frame.up = {-std::sin(incline), 0.0, std::cos(incline)};
  frame.left = frame.up.cross(frame.tangent);

  bool anchor_set = false;
  for (const auto& seg : segments_) {
    start_frames_.push_back(frame);
    cumulative_.push_back(cumulative_.back() + seg.arc_length_mm());
    if (seg.is_bend()) {
      const auto& b = seg.bend();
      if (!anchor_set) {
        // Azimuth zero = outer direction of the first bend, i.e. -turn vector,
        // expressed as constant coordinates in the transported (up, left) basis.
        switch (b.direction) {
          case TurnDirection::up: anchor_up_ = -1.0; anchor_left_ = 0.0; break;
          case TurnDirection::down: anchor_up_ = 1.0; anchor_left_ = 0.0; break;
          case TurnDirection::left: anchor_up_ = 0.0; anchor_left_ = -1.0; break;
          case TurnDirection::right: anchor_up_ = 0.0; anchor_left_ = 1.0; break;
        }
        anchor_set = true;
      }
      const Vec3 w = turn_vector(frame, b.direction);
      const Vec3 axis = frame.tangent.cross(w);
      frame = rotate_frame(frame, axis, deg_to_rad(b.angle_deg));
    }
  }
}

std::pair<double, double> PipeNetwork::arc_bounds(
    std::size_t segment_index) const {
  if (segment_index >= segments_.size()) {
    throw RangeError("segment index " + std::to_string(segment_index) +
                     " out of range (network has " +
                     std::to_string(segments_.size()) + " segments)");
  }
  return {cumulative_[segment_index], cumulative_[segment_index + 1]};
}

std::size_t PipeNetwork::segment_index_at(double s_mm) const {
  const double total = total_arc_length_mm();
  if (!(s_mm >= 0.0 && s_mm <= total)) {
    throw RangeError("arc length " + std::to_string(s_mm) +
                     " mm outside network [0, " + std::to_string(total) + "]");
  }
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), s_mm);
  std::size_t index = static_cast<std::size_t>(it - cumulative_.begin());
  if (index > 0) --index;
  return std::min(index, segments_.size() - 1);
}

PathPose PipeNetwork::pose_at(double s_mm) const {
  const std::size_t index = segment_index_at(s_mm);
  const auto& seg = segments_[index];
  PathFrame frame = start_frames_[index];
  if (seg.is_bend()) {
    const auto& b = seg.bend();
    const double local = s_mm - cumulative_[index];
    const double angle = local / b.radius_mm;  // radians along the arc
    const Vec3 w = turn_vector(frame, b.direction);
    const Vec3 axis = frame.tangent.cross(w);
    frame = rotate_frame(frame, axis, angle);
  }
  PathPose pose;
  pose.s_mm = s_mm;
  pose.segment_index = index;
  pose.frame = frame;
  pose.axis_direction = frame.tangent;
  pose.gravity_axial_component = std::clamp(frame.tangent.z, -1.0, 1.0);
  pose.reference_outward = frame.up * anchor_up_ + frame.left * anchor_left_;
  return pose;
}

}  // namespace pipeclimber
