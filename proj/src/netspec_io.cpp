#include "pipeclimber/netspec_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace pipeclimber {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

struct Token {
  std::string text;
  int line = 1;
  int col = 1;  // 1-based, first character of the token
};

struct SourceLine {
  int number = 1;
  std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::vector<SourceLine> scan(std::string_view text) {
  std::vector<SourceLine> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && line_no > 0) break;
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = eol == std::string_view::npos
                               ? text.substr(pos)
                               : text.substr(pos, eol - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++line_no;

    SourceLine line;
    line.number = line_no;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (is_space(raw[i])) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;  // comment to end of line
      const std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i]) && raw[i] != '#') ++i;
      line.tokens.push_back(Token{std::string(raw.substr(start, i - start)),
                                  line_no, static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

struct KeyValue {
  std::string key;
  std::string value;
  int line = 1;
  int key_col = 1;
  int value_col = 1;
};

KeyValue split_key_value(const Token& token) {
  const auto eq = token.text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= token.text.size()) {
    throw SourceError(token.line, token.col, "a key=value pair",
                      "`" + token.text + "`");
  }
  KeyValue kv;
  kv.key = token.text.substr(0, eq);
  kv.value = token.text.substr(eq + 1);
  kv.line = token.line;
  kv.key_col = token.col;
  kv.value_col = token.col + static_cast<int>(eq) + 1;
  return kv;
}

double parse_double_value(const KeyValue& kv, std::string_view expected) {
  double value = 0.0;
  const char* begin = kv.value.data();
  const char* end = begin + kv.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw SourceError(kv.line, kv.value_col, std::string(expected),
                      "`" + kv.value + "`");
  }
  return value;
}

int parse_int_value(const KeyValue& kv, std::string_view expected) {
  int value = 0;
  const char* begin = kv.value.data();
  const char* end = begin + kv.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw SourceError(kv.line, kv.value_col, std::string(expected),
                      "`" + kv.value + "`");
  }
  return value;
}

/// Collects key=value pairs after a directive keyword, rejecting duplicates
/// and keys outside `allowed`.
std::map<std::string, KeyValue> collect_keys(
    const SourceLine& line, std::size_t first_token,
    const std::vector<std::string>& allowed, std::string_view directive) {
  std::map<std::string, KeyValue> keys;
  for (std::size_t i = first_token; i < line.tokens.size(); ++i) {
    KeyValue kv = split_key_value(line.tokens[i]);
    if (std::find(allowed.begin(), allowed.end(), kv.key) == allowed.end()) {
      std::string expected = "a `" + std::string(directive) + "` key (";
      for (std::size_t a = 0; a < allowed.size(); ++a) {
        if (a > 0) expected += ", ";
        expected += allowed[a];
      }
      expected += ")";
      throw SourceError(kv.line, kv.key_col, expected, "`" + kv.key + "`");
    }
    if (keys.count(kv.key) != 0) {
      throw SourceError(kv.line, kv.key_col, "a single `" + kv.key + "` key",
                        "duplicate `" + kv.key + "`");
    }
    keys.emplace(kv.key, std::move(kv));
  }
  return keys;
}

const KeyValue& require_key(const std::map<std::string, KeyValue>& keys,
                            const std::string& name, const Token& directive) {
  const auto it = keys.find(name);
  if (it == keys.end()) {
    throw SourceError(directive.line, directive.col, "key `" + name + "=...`",
                      "directive without it");
  }
  return it->second;
}

void check_format_directive(const KeyValue& kv) {
  if (kv.value != "1") {
    throw SourceError(kv.line, kv.value_col, "format=1", "`" + kv.value + "`");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Network parsing
// ---------------------------------------------------------------------------

PipeNetwork parse_network(std::string_view text) {
  const std::vector<SourceLine> lines = scan(text);

  std::optional<PipeSpec> pipe;
  int pipe_line = 1;
  bool format_seen = false;
  std::vector<PipeSegment> segments;

  for (const auto& line : lines) {
    const Token& head = line.tokens.front();
    if (head.text.rfind("format=", 0) == 0) {
      const KeyValue kv = split_key_value(head);
      if (format_seen || pipe || !segments.empty()) {
        throw SourceError(head.line, head.col,
                          "format=1 before any other directive",
                          "`" + head.text + "`");
      }
      check_format_directive(kv);
      format_seen = true;
      continue;
    }

    if (head.text == "pipe") {
      if (pipe) {
        throw SourceError(head.line, head.col, "a single `pipe` directive",
                          "duplicate `pipe`");
      }
      const auto keys = collect_keys(
          line, 1, {"inner_diameter", "nps", "schedule"}, "pipe");
      const bool has_explicit = keys.count("inner_diameter") != 0;
      const bool has_standard = keys.count("nps") != 0 || keys.count("schedule") != 0;
      if (has_explicit && has_standard) {
        const KeyValue& clash = keys.count("nps") != 0 ? keys.at("nps")
                                                       : keys.at("schedule");
        throw SourceError(clash.line, clash.key_col,
                          "either inner_diameter or nps+schedule, not both",
                          "`" + clash.key + "`");
      }
      if (has_explicit) {
        const KeyValue& kv = keys.at("inner_diameter");
        const double d = parse_double_value(kv, "an inner diameter in mm");
        if (!(d > 0.0)) {
          throw SourceError(kv.line, kv.value_col,
                            "a positive inner diameter in mm",
                            "`" + kv.value + "`");
        }
        pipe = resolve_pipe_spec(d);
      } else {
        const KeyValue& nps = require_key(keys, "nps", head);
        const KeyValue& sched = require_key(keys, "schedule", head);
        const int number = parse_int_value(sched, "schedule 40, 80 or 120");
        const auto schedule = schedule_from_number(number);
        if (!schedule) {
          throw SourceError(sched.line, sched.value_col,
                            "schedule 40, 80 or 120", "`" + sched.value + "`");
        }
        try {
          pipe = resolve_pipe_spec(nps.value, *schedule);
        } catch (const LookupError&) {
          throw SourceError(nps.line, nps.value_col,
                            "a known (nps, schedule) pair in the dimension "
                            "table",
                            "(nps " + nps.value + ", schedule " + sched.value +
                                ")");
        }
      }
      pipe_line = head.line;
      continue;
    }

    if (head.text == "segment") {
      if (!pipe) {
        throw SourceError(head.line, head.col,
                          "`pipe` directive before any segment", "`segment`");
      }
      if (line.tokens.size() < 2) {
        throw SourceError(head.line, head.col,
                          "segment kind `straight` or `bend`", "end of line");
      }
      const Token& kind = line.tokens[1];
      if (kind.text == "straight") {
        const auto keys =
            collect_keys(line, 2, {"length", "incline"}, "segment straight");
        const KeyValue& length_kv = require_key(keys, "length", head);
        const double length = parse_double_value(length_kv, "a length in mm");
        if (!(length > 0.0)) {
          throw SourceError(length_kv.line, length_kv.value_col,
                            "a positive length in mm", "`" + length_kv.value + "`");
        }
        StraightSegment straight;
        straight.length_mm = length;
        if (const auto it = keys.find("incline"); it != keys.end()) {
          if (!segments.empty()) {
            throw SourceError(it->second.line, it->second.key_col,
                              "incline only on the first segment",
                              "`incline` on segment " +
                                  std::to_string(segments.size()));
          }
          const double incline =
              parse_double_value(it->second, "an incline in degrees");
          if (!(incline >= -90.0 && incline <= 90.0)) {
            throw SourceError(it->second.line, it->second.value_col,
                              "an incline in [-90, 90] degrees",
                              "`" + it->second.value + "`");
          }
          straight.incline_deg = incline;
        } else if (segments.empty()) {
          throw SourceError(head.line, head.col,
                            "key `incline=<deg>` on the first segment",
                            "directive without it");
        }
        segments.push_back(PipeSegment{straight});
      } else if (kind.text == "bend") {
        const auto keys = collect_keys(
            line, 2, {"angle", "radius", "direction"}, "segment bend");
        const KeyValue& angle_kv = require_key(keys, "angle", head);
        const double angle = parse_double_value(angle_kv, "an angle in degrees");
        if (!(angle > 0.0 && angle <= 90.0)) {
          throw SourceError(angle_kv.line, angle_kv.value_col,
                            "an angle in (0, 90] degrees",
                            "`" + angle_kv.value + "`");
        }
        const KeyValue& radius_kv = require_key(keys, "radius", head);
        const double radius = parse_double_value(radius_kv, "a radius in mm");
        if (!(radius > 0.0)) {
          throw SourceError(radius_kv.line, radius_kv.value_col,
                            "a positive radius in mm",
                            "`" + radius_kv.value + "`");
        }
        const KeyValue& dir_kv = require_key(keys, "direction", head);
        const auto direction = turn_direction_from_name(dir_kv.value);
        if (!direction) {
          throw SourceError(dir_kv.line, dir_kv.value_col,
                            "direction up, down, left or right",
                            "`" + dir_kv.value + "`");
        }
        segments.push_back(
            PipeSegment{BendSegment{angle, radius, *direction}});
      } else {
        throw SourceError(kind.line, kind.col,
                          "segment kind `straight` or `bend`",
                          "`" + kind.text + "`");
      }
      continue;
    }

    throw SourceError(head.line, head.col, "`pipe` or `segment` directive",
                      "`" + head.text + "`");
  }

  if (!pipe) throw SourceError(1, 1, "`pipe` directive", "end of input");
  if (segments.empty()) {
    throw SourceError(pipe_line, 1, "at least one `segment` directive",
                      "end of input");
  }
  try {
    return PipeNetwork(*pipe, std::move(segments));
  } catch (const ValidationError& e) {
    throw SourceError(pipe_line, 1, "a valid network", e.what());
  }
}

// ---------------------------------------------------------------------------
// Robot design parsing
// ---------------------------------------------------------------------------

RobotDesign parse_design(std::string_view text) {
  const std::vector<SourceLine> lines = scan(text);

  std::optional<RobotDesign> design;
  bool format_seen = false;

  for (const auto& line : lines) {
    const Token& head = line.tokens.front();
    if (head.text.rfind("format=", 0) == 0) {
      const KeyValue kv = split_key_value(head);
      if (format_seen || design) {
        throw SourceError(head.line, head.col,
                          "format=1 before any other directive",
                          "`" + head.text + "`");
      }
      check_format_directive(kv);
      format_seen = true;
      continue;
    }
    if (head.text != "robot") {
      throw SourceError(head.line, head.col, "`robot` directive",
                        "`" + head.text + "`");
    }
    if (design) {
      throw SourceError(head.line, head.col, "a single `robot` directive",
                        "duplicate `robot`");
    }

    const auto keys = collect_keys(
        line, 1,
        {"mass_kg", "length_mm", "dmax_mm", "dmin_mm", "stiffness_n_per_m",
         "preload_m", "spacing_mm", "mu_s", "mu_k", "r_wheel_m", "lugs",
         "lugs_contact", "lug_radius_mm"},
        "robot");

    RobotDesign d;
    const auto positive = [](const KeyValue& kv, double value,
                             std::string_view what) {
      if (!(value > 0.0)) {
        throw SourceError(kv.line, kv.value_col,
                          "a positive " + std::string(what),
                          "`" + kv.value + "`");
      }
      return value;
    };

    const KeyValue& mass = require_key(keys, "mass_kg", head);
    d.mass_kg = positive(mass, parse_double_value(mass, "a mass in kg"), "mass in kg");
    const KeyValue& length = require_key(keys, "length_mm", head);
    d.length_mm = positive(length, parse_double_value(length, "a length in mm"),
                           "length in mm");
    const KeyValue& dmax = require_key(keys, "dmax_mm", head);
    d.d_max_mm = positive(dmax, parse_double_value(dmax, "a diameter in mm"),
                          "diameter in mm");
    const KeyValue& dmin = require_key(keys, "dmin_mm", head);
    d.d_min_mm = positive(dmin, parse_double_value(dmin, "a diameter in mm"),
                          "diameter in mm");
    if (!(d.d_min_mm < d.d_max_mm)) {
      throw SourceError(dmin.line, dmin.value_col,
                        "dmin_mm less than dmax_mm (" + dmax.value + ")",
                        "`" + dmin.value + "`");
    }
    const KeyValue& stiffness = require_key(keys, "stiffness_n_per_m", head);
    d.spring_stiffness_n_per_m =
        positive(stiffness, parse_double_value(stiffness, "a stiffness in N/m"),
                 "stiffness in N/m");
    const KeyValue& preload = require_key(keys, "preload_m", head);
    d.preload_compression_m = parse_double_value(preload, "a preload in m");
    if (d.preload_compression_m < 0.0) {
      throw SourceError(preload.line, preload.value_col,
                        "a non-negative preload in m", "`" + preload.value + "`");
    }
    const KeyValue& mu_k = require_key(keys, "mu_k", head);
    d.mu_kinetic = parse_double_value(mu_k, "a kinetic friction coefficient");
    if (!(d.mu_kinetic > 0.0 && d.mu_kinetic <= 2.0)) {
      throw SourceError(mu_k.line, mu_k.value_col,
                        "mu_k in (0, 2]", "`" + mu_k.value + "`");
    }

    if (const auto it = keys.find("mu_s"); it != keys.end()) {
      d.mu_static = parse_double_value(it->second,
                                       "a static friction coefficient");
      if (!(d.mu_static >= d.mu_kinetic && d.mu_static <= 2.0)) {
        throw SourceError(it->second.line, it->second.value_col,
                          "mu_s in [mu_k, 2]", "`" + it->second.value + "`");
      }
    } else {
      d.mu_static = d.mu_kinetic;
    }

    if (const auto it = keys.find("spacing_mm"); it != keys.end()) {
      d.spring_spacing_mm =
          positive(it->second, parse_double_value(it->second, "a spacing in mm"),
                   "spacing in mm");
    }
    if (!(d.spring_spacing_mm < d.length_mm)) {
      const KeyValue& blame =
          keys.count("spacing_mm") != 0 ? keys.at("spacing_mm") : length;
      throw SourceError(blame.line, blame.value_col,
                        "spring spacing smaller than the robot length",
                        "spacing " + format_double(d.spring_spacing_mm) +
                            " mm vs length " + format_double(d.length_mm) +
                            " mm");
    }

    if (const auto it = keys.find("r_wheel_m"); it != keys.end()) {
      d.wheel_radius_m =
          positive(it->second, parse_double_value(it->second, "a radius in m"),
                   "wheel radius in m");
    }
    if (const auto it = keys.find("lugs"); it != keys.end()) {
      d.lug.lug_count = parse_int_value(it->second, "a lug count");
      if (d.lug.lug_count < 1) {
        throw SourceError(it->second.line, it->second.value_col,
                          "a positive lug count", "`" + it->second.value + "`");
      }
    }
    if (const auto it = keys.find("lugs_contact"); it != keys.end()) {
      d.lug.min_contact_count = parse_int_value(it->second, "a contact count");
      if (d.lug.min_contact_count < 0) {
        throw SourceError(it->second.line, it->second.value_col,
                          "a non-negative contact count",
                          "`" + it->second.value + "`");
      }
    }
    if (d.lug.min_contact_count > d.lug.lug_count) {
      const KeyValue& blame = keys.count("lugs_contact") != 0
                                  ? keys.at("lugs_contact")
                                  : keys.at("lugs");
      throw SourceError(blame.line, blame.value_col,
                        "contact count no larger than the lug count",
                        std::to_string(d.lug.min_contact_count) + " of " +
                            std::to_string(d.lug.lug_count));
    }
    if (const auto it = keys.find("lug_radius_mm"); it != keys.end()) {
      d.lug.lug_radius_mm =
          positive(it->second, parse_double_value(it->second, "a radius in mm"),
                   "lug radius in mm");
    }

    try {
      d.validate();
    } catch (const ValidationError& e) {
      throw SourceError(head.line, head.col, "a valid robot design", e.what());
    }
    design = std::move(d);
  }

  if (!design) throw SourceError(1, 1, "`robot` directive", "end of input");
  return *design;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[512];
  const auto result = std::to_chars(buf, buf + sizeof buf, value,
                                    std::chars_format::fixed, decimals);
  if (result.ec != std::errc()) return "0";
  return std::string(buf, result.ptr);
}

std::string emit_network(const PipeNetwork& network) {
  std::string out;
  const PipeSpec& pipe = network.pipe();
  if (pipe.standard) {
    out += "pipe nps=" + pipe.standard->nps + " schedule=" +
           std::to_string(schedule_number(pipe.standard->schedule)) + "\n";
  } else {
    out += "pipe inner_diameter=" + format_double(pipe.inner_diameter_mm) + "\n";
  }
  for (const auto& segment : network.segments()) {
    if (segment.is_bend()) {
      const auto& b = segment.bend();
      out += "segment bend angle=" + format_double(b.angle_deg) +
             " radius=" + format_double(b.radius_mm) + " direction=" +
             std::string(turn_direction_name(b.direction)) + "\n";
    } else {
      const auto& s = segment.straight();
      out += "segment straight length=" + format_double(s.length_mm);
      if (s.incline_deg) out += " incline=" + format_double(*s.incline_deg);
      out += "\n";
    }
  }
  return out;
}

std::string emit_design(const RobotDesign& design) {
  std::string out = "robot";
  out += " mass_kg=" + format_double(design.mass_kg);
  out += " length_mm=" + format_double(design.length_mm);
  out += " dmax_mm=" + format_double(design.d_max_mm);
  out += " dmin_mm=" + format_double(design.d_min_mm);
  out += " stiffness_n_per_m=" + format_double(design.spring_stiffness_n_per_m);
  out += " preload_m=" + format_double(design.preload_compression_m);
  out += " spacing_mm=" + format_double(design.spring_spacing_mm);
  out += " mu_s=" + format_double(design.mu_static);
  out += " mu_k=" + format_double(design.mu_kinetic);
  if (design.wheel_radius_m) {
    out += " r_wheel_m=" + format_double(*design.wheel_radius_m);
  }
  out += " lugs=" + std::to_string(design.lug.lug_count);
  out += " lugs_contact=" + std::to_string(design.lug.min_contact_count);
  out += " lug_radius_mm=" + format_double(design.lug.lug_radius_mm);
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// CSV and reports
// ---------------------------------------------------------------------------

std::string trace_csv(const TraversalTrace& trace) {
  std::string out =
      "t,s,seg,m0_front_mm,m0_rear_mm,m1_front_mm,m1_rear_mm,m2_front_mm,"
      "m2_rear_mm,m0_N,m1_N,m2_N,m0_slip_N,m1_slip_N,m2_slip_N,g_axial\n";
  for (const auto& row : trace.rows) {
    out += format_fixed(row.t_s, 6);
    out += ',';
    out += format_fixed(row.s_mm, 6);
    out += ',';
    out += std::to_string(row.segment_index);
    for (int m = 0; m < 3; ++m) {
      out += ',';
      out += format_fixed(row.delta_mm[m][0], 6);
      out += ',';
      out += format_fixed(row.delta_mm[m][1], 6);
    }
    for (int m = 0; m < 3; ++m) {
      out += ',';
      out += format_fixed(row.module_normal_n[m], 6);
    }
    for (int m = 0; m < 3; ++m) {
      out += ',';
      out += format_fixed(row.slip_margin_n[m], 6);
    }
    out += ',';
    out += format_fixed(row.gravity_axial, 6);
    out += '\n';
  }
  return out;
}

std::string design_report_text(const DesignReport& report) {
  std::string out;
  out += "N=" + format_fixed(report.normal_force_n, 6) + "\n";
  out += "RR=" + format_fixed(report.rolling_resistance_n, 6) + "\n";
  out += "f=" + format_fixed(report.sliding_friction_n, 6) + "\n";
  out += "F_a=" + format_fixed(report.inertial_force_n, 6) + "\n";
  out += "TTE=" + format_fixed(report.tractive_effort_n, 6) + "\n";
  out += "tau_total=" + format_fixed(report.torque_total_nm, 6) + "\n";
  out += "tau_per_motor=" + format_fixed(report.torque_per_motor_nm, 6) + "\n";
  out += "K_s_required=" + format_fixed(report.required_stiffness_n_per_m, 6) +
         "\n";
  out += "safety_factor=" + format_fixed(report.safety_factor, 6) + "\n";
  out += "friction_sign=" + std::string(friction_sign_name(report.friction_sign)) +
         "\n";
  out += "g=" + format_fixed(report.gravity, 6) + "\n";
  out += "a=" + format_fixed(report.acceleration, 6) + "\n";
  out += std::string("torque_ok=") + (report.torque_ok ? "true" : "false") + "\n";
  for (const auto& note : report.notes) out += "note=" + note + "\n";
  return out;
}

std::string design_report_json(const DesignReport& report) {
  json j;
  j["N"] = report.normal_force_n;
  j["RR"] = report.rolling_resistance_n;
  j["f"] = report.sliding_friction_n;
  j["F_a"] = report.inertial_force_n;
  j["TTE"] = report.tractive_effort_n;
  j["tau_total"] = report.torque_total_nm;
  j["tau_per_motor"] = report.torque_per_motor_nm;
  j["K_s_required"] = report.required_stiffness_n_per_m;
  j["torque_ok"] = report.torque_ok;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string summary_text(const SimSummary& summary) {
  std::string out;
  out += "rows=" + std::to_string(summary.rows) + "\n";
  out += "min_slip_margin_n=" + format_fixed(summary.min_slip_margin_n, 6) + "\n";
  out += "min_slip_time_s=" + format_fixed(summary.min_slip_time_s, 6) + "\n";
  out += "min_slip_module=" + std::to_string(summary.min_slip_module) + "\n";
  out += std::string("slip_warning=") + (summary.slip_warning ? "true" : "false") +
         "\n";
  for (int m = 0; m < 3; ++m) {
    out += "peak_compression_m" + std::to_string(m) + "_mm=" +
           format_fixed(summary.peak_compression_mm[m], 6) + "\n";
  }
  for (int m = 0; m < 3; ++m) {
    out += "final_compression_m" + std::to_string(m) + "_mm=" +
           format_fixed(summary.final_compression_mm[m], 6) + "\n";
  }
  out += "saturation_events=" + std::to_string(summary.saturation_events) + "\n";
  out += "rear_front_delay_s=";
  out += summary.rear_front_delay_s ? format_fixed(*summary.rear_front_delay_s, 6)
                                    : std::string("n/a");
  out += "\n";
  out += "expansion_interval=";
  if (summary.expansion_interval_s) {
    out += format_fixed(summary.expansion_interval_s->first, 6) + ".." +
           format_fixed(summary.expansion_interval_s->second, 6);
  } else {
    out += "none";
  }
  out += "\n";
  out += "peak_tte_n=" + format_fixed(summary.peak_tractive_effort_n, 6) + "\n";
  out += "peak_torque_nm=";
  out += summary.peak_torque_nm ? format_fixed(*summary.peak_torque_nm, 6)
                                : std::string("n/a");
  out += "\n";
  return out;
}

std::string summary_json(const SimSummary& summary) {
  json j;
  j["rows"] = summary.rows;
  j["min_slip_margin_n"] = summary.min_slip_margin_n;
  j["min_slip_time_s"] = summary.min_slip_time_s;
  j["min_slip_module"] = summary.min_slip_module;
  j["slip_warning"] = summary.slip_warning;
  j["peak_compression_mm"] = summary.peak_compression_mm;
  j["final_compression_mm"] = summary.final_compression_mm;
  j["saturation_events"] = summary.saturation_events;
  if (summary.rear_front_delay_s) {
    j["rear_front_delay_s"] = *summary.rear_front_delay_s;
  } else {
    j["rear_front_delay_s"] = nullptr;
  }
  j["expansion_present"] = summary.expansion_present;
  if (summary.expansion_interval_s) {
    j["expansion_interval_s"] = {summary.expansion_interval_s->first,
                                 summary.expansion_interval_s->second};
  } else {
    j["expansion_interval_s"] = nullptr;
  }
  j["peak_tte_n"] = summary.peak_tractive_effort_n;
  if (summary.peak_torque_nm) {
    j["peak_torque_nm"] = *summary.peak_torque_nm;
  } else {
    j["peak_torque_nm"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string sweep_text(const SweepResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    out += "K_s=" + format_fixed(row.stiffness_n_per_m, 6);
    out += " min_slip_margin_n=" + format_fixed(row.min_slip_margin_n, 6);
    out += " max_compression_mm=" + format_fixed(row.max_compression_mm, 6);
    out += " saturation_events=" + std::to_string(row.saturation_events);
    out += std::string(" feasible=") + (row.feasible ? "yes" : "no");
    if (result.first_feasible_index && *result.first_feasible_index == i) {
      out += " first_feasible=true";
    }
    out += "\n";
  }
  out += "first_feasible_K_s=";
  out += result.first_feasible_index
             ? format_fixed(
                   result.rows[*result.first_feasible_index].stiffness_n_per_m,
                   6)
             : std::string("none");
  out += "\n";
  return out;
}

std::string sweep_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"K_s", row.stiffness_n_per_m},
                    {"min_slip_margin_n", row.min_slip_margin_n},
                    {"max_compression_mm", row.max_compression_mm},
                    {"saturation_events", row.saturation_events},
                    {"feasible", row.feasible}});
  }
  json j;
  j["rows"] = rows;
  if (result.first_feasible_index) {
    j["first_feasible_K_s"] =
        result.rows[*result.first_feasible_index].stiffness_n_per_m;
  } else {
    j["first_feasible_K_s"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace pipeclimber
