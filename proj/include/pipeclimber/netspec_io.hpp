#pragma once

#include <string>
#include <string_view>

#include "pipeclimber/bend_traversal.hpp"
#include "pipeclimber/climb_sim.hpp"
#include "pipeclimber/design_core.hpp"
#include "pipeclimber/pipe_geometry.hpp"

namespace pipeclimber {

// ---------------------------------------------------------------------------
// Line-oriented text formats (.pcn networks, .pcr robots)
//
//   pipe nps=<label> schedule=<40|80|120>
//   pipe inner_diameter=<mm>
//   segment straight length=<mm> incline=<deg>   # incline: first segment only
//   segment bend angle=<deg> radius=<mm> direction=<up|down|left|right>
//
//   robot mass_kg=... length_mm=... dmax_mm=... dmin_mm=...
//         stiffness_n_per_m=... preload_m=... [spacing_mm=30] [mu_s=<mu_k>]
//         mu_k=... [r_wheel_m=...] [lugs=22] [lugs_contact=9]
//         [lug_radius_mm=80]
//
// One directive per line, `#` starts a comment, keys in any order after the
// keyword, an optional leading `format=1` line. All parse failures raise
// SourceError with a 1-based line/column at the first offending character.
// ---------------------------------------------------------------------------

PipeNetwork parse_network(std::string_view text);
RobotDesign parse_design(std::string_view text);

/// Canonical text form; parse_network(emit_network(n)) == n for every
/// representable network, and emission is idempotent.
std::string emit_network(const PipeNetwork& network);
std::string emit_design(const RobotDesign& design);

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);
/// Locale-independent fixed-point formatting.
std::string format_fixed(double value, int decimals);

// ---------------------------------------------------------------------------
// Report and trace emission
// ---------------------------------------------------------------------------

/// Deterministic CSV, 6-decimal fixed columns:
/// t,s,seg,m0_front_mm,m0_rear_mm,m1_front_mm,m1_rear_mm,m2_front_mm,
/// m2_rear_mm,m0_N,m1_N,m2_N,m0_slip_N,m1_slip_N,m2_slip_N,g_axial
std::string trace_csv(const TraversalTrace& trace);

/// Flat key=value report.
std::string design_report_text(const DesignReport& report);
/// JSON document with fields N, RR, f, F_a, TTE, tau_total, tau_per_motor,
/// K_s_required, torque_ok, notes[].
std::string design_report_json(const DesignReport& report);

std::string summary_text(const SimSummary& summary);
std::string summary_json(const SimSummary& summary);

std::string sweep_text(const SweepResult& result);
std::string sweep_json(const SweepResult& result);

}  // namespace pipeclimber
