// Command-line front end: design solving, bend checks, differential speed
// planning, traversal simulation and stiffness sweeps.
//
// Exit codes: 0 success, 1 infeasible or slip-warned, 2 usage/parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pipeclimber/bend_traversal.hpp"
#include "pipeclimber/climb_sim.hpp"
#include "pipeclimber/design_core.hpp"
#include "pipeclimber/netspec_io.hpp"
#include "pipeclimber/pipe_geometry.hpp"

namespace {

using namespace pipeclimber;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out << contents;
  if (!out) throw Error("failed writing file: " + path);
}

void print_source_error(const std::string& path, const SourceError& e) {
  std::fprintf(stderr, "%s:%d:%d: error: expected %s, found %s\n",
               path.c_str(), e.line(), e.column(), e.expected().c_str(),
               e.found().c_str());
}

/// Parses a file, rendering SourceErrors with the file name. Returns nullopt
/// after printing (callers exit with kExitUsage).
template <typename Parser>
auto load_or_report(const std::string& path, Parser&& parser)
    -> std::optional<decltype(parser(std::string()))> {
  const std::string text = read_file(path);
  try {
    return parser(text);
  } catch (const SourceError& e) {
    print_source_error(path, e);
    return std::nullopt;
  }
}

FrictionSign parse_friction_sign(const std::string& name) {
  return name == "physical" ? FrictionSign::physical : FrictionSign::paper;
}

struct DesignArgs {
  std::string robot_path;
  double gravity = kDefaultGravity;
  double accel = 0.0;
  double c_r = 0.0;
  double safety = 2.0;
  double motor_torque = 0.0;
  std::string friction_sign = "paper";
  std::string format = "text";
};

int run_design(const DesignArgs& args) {
  const auto design = load_or_report(args.robot_path, parse_design);
  if (!design) return kExitUsage;
  MotorSpec motor;
  motor.stall_torque_nm = args.motor_torque;
  const DesignReport report =
      design_report(*design, args.gravity, args.accel, args.c_r, args.safety,
                    motor, parse_friction_sign(args.friction_sign));
  std::fputs(args.format == "json" ? design_report_json(report).c_str()
                                   : design_report_text(report).c_str(),
             stdout);
  return report.torque_ok ? kExitOk : kExitInfeasible;
}

struct CheckBendArgs {
  double bend_radius = 0.0;
  double pipe_diameter = 0.0;
  double angle = 90.0;
  std::optional<double> robot_diameter;
  std::optional<double> robot_length;
  std::string format = "text";
};

int run_check_bend(const CheckBendArgs& args) {
  std::optional<BendFeasibility> feas;
  DiameterBounds bounds =
      min_diameter_bounds(args.bend_radius, args.pipe_diameter, args.angle);
  std::vector<std::string> notes;
  std::optional<double> l_max;
  std::optional<bool> feasible;
  if (args.robot_diameter) {
    feas = check_bend(args.bend_radius, args.pipe_diameter, args.angle,
                      *args.robot_diameter, args.robot_length.value_or(0.0));
    l_max = feas->max_length_mm;
    notes = feas->notes;
    if (args.robot_length) feasible = feas->feasible;
  } else {
    if (bounds.lower_clamped) {
      notes.push_back("lower diameter bound is unconstrained (clamped to 0)");
    }
    if (args.angle != 90.0) {
      notes.push_back(
          "extension: the published bound covers 90 degree bends only");
    }
  }

  if (args.format == "json") {
    json j;
    j["d_lower_mm"] = bounds.d_lower_mm;
    j["d_upper_mm"] = bounds.d_upper_mm;
    if (l_max) j["L_max_mm"] = *l_max; else j["L_max_mm"] = nullptr;
    if (feasible) j["feasible"] = *feasible; else j["feasible"] = nullptr;
    j["notes"] = notes;
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  } else {
    std::string out;
    out += "d_lower_mm=" + format_fixed(bounds.d_lower_mm, 4) + "\n";
    out += "d_upper_mm=" + format_fixed(bounds.d_upper_mm, 4) + "\n";
    if (l_max) out += "L_max_mm=" + format_fixed(*l_max, 4) + "\n";
    if (feasible) {
      out += std::string("feasible=") + (*feasible ? "true" : "false") + "\n";
    }
    for (const auto& note : notes) out += "note=" + note + "\n";
    std::fputs(out.c_str(), stdout);
  }
  if (feasible) return *feasible ? kExitOk : kExitInfeasible;
  return kExitOk;
}

struct SpeedPlanArgs {
  std::string network_path;
  std::string robot_path;
  double roll = 0.0;
  std::optional<double> calibrate_ratio;
  std::string format = "text";
};

int run_speed_plan(const SpeedPlanArgs& args) {
  const auto network = load_or_report(args.network_path, parse_network);
  if (!network) return kExitUsage;
  const auto design = load_or_report(args.robot_path, parse_design);
  if (!design) return kExitUsage;

  json rows = json::array();
  std::string out;
  int bend_count = 0;
  for (std::size_t i = 0; i < network->segments().size(); ++i) {
    const auto& segment = network->segments()[i];
    if (!segment.is_bend()) continue;
    ++bend_count;
    const SpeedPlan plan =
        speed_plan(segment, *design, args.roll, args.calibrate_ratio);
    const auto& b = segment.bend();
    if (args.format == "json") {
      rows.push_back({{"segment", i},
                      {"angle_deg", b.angle_deg},
                      {"radius_mm", b.radius_mm},
                      {"path_radius_mm", plan.path_radius_mm},
                      {"speed_scale", plan.speed_scale},
                      {"ratio_outer_inner", plan.ratio_outer_to_inner},
                      {"contact_offset_mm", plan.contact_offset_mm},
                      {"calibrated", plan.calibrated}});
    } else {
      out += "segment=" + std::to_string(i);
      out += " angle_deg=" + format_fixed(b.angle_deg, 4);
      out += " radius_mm=" + format_fixed(b.radius_mm, 4);
      for (int k = 0; k < 3; ++k) {
        out += " r" + std::to_string(k) + "_mm=" +
               format_fixed(plan.path_radius_mm[k], 6);
      }
      for (int k = 0; k < 3; ++k) {
        out += " scale" + std::to_string(k) + "=" +
               format_fixed(plan.speed_scale[k], 6);
      }
      out += " ratio_outer_inner=" + format_fixed(plan.ratio_outer_to_inner, 6);
      out += " rho_mm=" + format_fixed(plan.contact_offset_mm, 6);
      out += std::string(" calibrated=") + (plan.calibrated ? "yes" : "no");
      out += "\n";
    }
  }
  if (args.format == "json") {
    json j;
    j["bends"] = rows;
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  } else {
    if (bend_count == 0) {
      out = "bends=0 (straight network: all modules run at scale 1)\n";
    }
    std::fputs(out.c_str(), stdout);
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string network_path;
  std::string robot_path;
  double velocity = 100.0;
  double dt = 0.001;
  double roll = 0.0;
  std::string friction_sign = "paper";
  std::string out_path;
  std::string summary = "text";
};

int run_simulate(const SimulateArgs& args) {
  const auto network = load_or_report(args.network_path, parse_network);
  if (!network) return kExitUsage;
  const auto design = load_or_report(args.robot_path, parse_design);
  if (!design) return kExitUsage;

  SimConfig config;
  config.velocity_mm_s = args.velocity;
  config.dt_s = args.dt;
  config.roll_deg = args.roll;
  config.friction_sign = parse_friction_sign(args.friction_sign);

  const TraversalTrace trace = simulate(*network, *design, config);
  write_file(args.out_path, trace_csv(trace));
  const SimSummary summary = summarize(trace, *design);
  std::fputs(args.summary == "json" ? summary_json(summary).c_str()
                                    : summary_text(summary).c_str(),
             stdout);
  return summary.slip_warning ? kExitInfeasible : kExitOk;
}

struct SweepArgs {
  std::string network_path;
  std::string robot_path;
  std::string stiffness = "16:26:0.5";
  double velocity = 100.0;
  double dt = 0.001;
  double roll = 0.0;
  std::string friction_sign = "paper";
  std::string format = "text";
};

int run_sweep(const SweepArgs& args) {
  const auto network = load_or_report(args.network_path, parse_network);
  if (!network) return kExitUsage;
  const auto design = load_or_report(args.robot_path, parse_design);
  if (!design) return kExitUsage;

  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  {
    std::istringstream range(args.stiffness);
    std::string part;
    int parsed = 0;
    double* slots[3] = {&lo, &hi, &step};
    while (std::getline(range, part, ':') && parsed < 3) {
      std::size_t consumed = 0;
      try {
        *slots[parsed] = std::stod(part, &consumed);
      } catch (const std::exception&) {
        consumed = std::string::npos;
      }
      if (consumed != part.size()) {
        throw ValidationError("bad --stiffness range: " + args.stiffness);
      }
      ++parsed;
    }
    if (parsed != 3) {
      throw ValidationError("--stiffness wants lo:hi:step, got " +
                            args.stiffness);
    }
  }

  SimConfig config;
  config.velocity_mm_s = args.velocity;
  config.dt_s = args.dt;
  config.roll_deg = args.roll;
  config.friction_sign = parse_friction_sign(args.friction_sign);

  const SweepResult result =
      sweep_stiffness(*network, *design, config, lo, hi, step);
  std::fputs(args.format == "json" ? sweep_json(result).c_str()
                                   : sweep_text(result).c_str(),
             stdout);
  return result.first_feasible_index ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pipeclimber: sizing, bend-feasibility and traversal simulation for a "
      "three-module track-driven in-pipe climbing robot"};
  app.require_subcommand(1);

  DesignArgs design_args;
  CLI::App* design_cmd = app.add_subcommand(
      "design", "Solve the spring/torque force balance for a robot file");
  design_cmd->add_option("--robot", design_args.robot_path, "robot .pcr file")
      ->required();
  design_cmd->add_option("--gravity", design_args.gravity, "m/s^2");
  design_cmd->add_option("--accel", design_args.accel, "m/s^2");
  design_cmd->add_option("--cr", design_args.c_r,
                         "rolling resistance coefficient");
  design_cmd->add_option("--safety", design_args.safety, "safety factor");
  design_cmd
      ->add_option("--motor-torque", design_args.motor_torque,
                   "selected motor stall torque, N m")
      ->required();
  design_cmd
      ->add_option("--friction-sign", design_args.friction_sign,
                   "friction sign in the tractive sum")
      ->check(CLI::IsMember({"paper", "physical"}));
  design_cmd->add_option("--format", design_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CheckBendArgs bend_args;
  double bend_d = 0.0;
  double bend_len = 0.0;
  CLI::App* bend_cmd = app.add_subcommand(
      "check-bend", "Diameter bounds and length bound for one bend");
  bend_cmd->add_option("--R", bend_args.bend_radius, "bend radius, mm")
      ->required();
  bend_cmd->add_option("--D", bend_args.pipe_diameter, "pipe inner diameter, mm")
      ->required();
  bend_cmd->add_option("--angle", bend_args.angle, "bend angle, degrees");
  CLI::Option* d_opt =
      bend_cmd->add_option("--d", bend_d, "robot minimum diameter, mm");
  CLI::Option* len_opt =
      bend_cmd->add_option("--length", bend_len, "robot length, mm");
  bend_cmd->add_option("--format", bend_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SpeedPlanArgs plan_args;
  CLI::App* plan_cmd = app.add_subcommand(
      "speed-plan", "Differential track-speed plan per bend");
  plan_cmd->add_option("--network", plan_args.network_path, "network .pcn file")
      ->required();
  plan_cmd->add_option("--robot", plan_args.robot_path, "robot .pcr file")
      ->required();
  plan_cmd->add_option("--roll", plan_args.roll,
                       "roll of module 0 from the bend outer direction, deg");
  double calibrate = 0.0;
  CLI::Option* cal_opt = plan_cmd->add_option(
      "--calibrate-ratio", calibrate,
      "back-solve the contact offset from this outer:inner ratio");
  plan_cmd->add_option("--format", plan_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Quasi-static traversal simulation writing a CSV trace");
  sim_cmd->add_option("--network", sim_args.network_path, "network .pcn file")
      ->required();
  sim_cmd->add_option("--robot", sim_args.robot_path, "robot .pcr file")
      ->required();
  sim_cmd->add_option("--velocity", sim_args.velocity, "mm/s");
  sim_cmd->add_option("--dt", sim_args.dt, "s");
  sim_cmd->add_option("--roll", sim_args.roll, "deg");
  sim_cmd
      ->add_option("--friction-sign", sim_args.friction_sign,
                   "paper or physical")
      ->check(CLI::IsMember({"paper", "physical"}));
  sim_cmd->add_option("--out", sim_args.out_path, "trace CSV output path")
      ->required();
  sim_cmd->add_option("--summary", sim_args.summary, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Stiffness sweep: one simulation per grid point");
  sweep_cmd->add_option("--network", sweep_args.network_path, "network file")
      ->required();
  sweep_cmd->add_option("--robot", sweep_args.robot_path, "robot file")
      ->required();
  sweep_cmd->add_option("--stiffness", sweep_args.stiffness,
                        "lo:hi:step in N/m (default 16:26:0.5)");
  sweep_cmd->add_option("--velocity", sweep_args.velocity, "mm/s");
  sweep_cmd->add_option("--dt", sweep_args.dt, "s");
  sweep_cmd->add_option("--roll", sweep_args.roll, "deg");
  sweep_cmd
      ->add_option("--friction-sign", sweep_args.friction_sign,
                   "paper or physical")
      ->check(CLI::IsMember({"paper", "physical"}));
  sweep_cmd->add_option("--format", sweep_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(design_cmd)) return run_design(design_args);
    if (app.got_subcommand(bend_cmd)) {
      if (d_opt->count() > 0) bend_args.robot_diameter = bend_d;
      if (len_opt->count() > 0) bend_args.robot_length = bend_len;
      return run_check_bend(bend_args);
    }
    if (app.got_subcommand(plan_cmd)) {
      if (cal_opt->count() > 0) plan_args.calibrate_ratio = calibrate;
      return run_speed_plan(plan_args);
    }
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim_args);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_args);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const SourceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
