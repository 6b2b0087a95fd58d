#include <doctest.h>

#include <clocale>
#include <random>
#include <string>
#include <vector>

#include "pipeclimber/netspec_io.hpp"

using namespace pipeclimber;

namespace {

const char* kPaperNetwork =
    "pipe inner_diameter=160\n"
    "segment straight length=500 incline=90\n"
    "segment bend angle=90 radius=90 direction=left\n";

const char* kPaperRobot =
    "robot mass_kg=0.470 length_mm=150 dmax_mm=163.33 dmin_mm=129.54 "
    "stiffness_n_per_m=18.06 preload_m=0.026 mu_k=0.7\n";

struct BadInput {
  const char* name;
  const char* text;
  int line;
  int column;
  const char* expected_fragment;
};

std::string random_string_network(std::mt19937& rng) {
  std::uniform_real_distribution<double> length(0.5, 8000.0);
  std::uniform_real_distribution<double> incline(-90.0, 90.0);
  std::uniform_real_distribution<double> angle(0.5, 90.0);
  std::uniform_real_distribution<double> radius(5.0, 900.0);
  std::uniform_int_distribution<int> seg_count(1, 8);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> dir(0, 3);
  std::uniform_int_distribution<int> pipe_kind(0, 3);

  std::string text;
  switch (pipe_kind(rng)) {
    case 0: text = "pipe nps=6 schedule=40\n"; break;
    case 1: text = "pipe nps=6 schedule=120\n"; break;
    case 2: text = "pipe nps=8 schedule=80\n"; break;
    default:
      text = "pipe inner_diameter=" +
             format_double(std::uniform_real_distribution<double>(
                 20.0, 500.0)(rng)) +
             "\n";
  }
  const int n = seg_count(rng);
  for (int i = 0; i < n; ++i) {
    const bool make_bend = i > 0 && coin(rng) == 1;
    if (make_bend) {
      static const char* dirs[] = {"up", "down", "left", "right"};
      text += "segment bend angle=" + format_double(angle(rng)) +
              " radius=" + format_double(radius(rng)) +
              " direction=" + dirs[dir(rng)] + "\n";
    } else {
      text += "segment straight length=" + format_double(length(rng));
      if (i == 0) text += " incline=" + format_double(incline(rng));
      text += "\n";
    }
  }
  return text;
}

RobotDesign random_design(std::mt19937& rng) {
  std::uniform_real_distribution<double> mass(0.05, 30.0);
  std::uniform_real_distribution<double> length(50.0, 400.0);
  std::uniform_real_distribution<double> dmin(60.0, 200.0);
  std::uniform_real_distribution<double> travel(5.0, 80.0);
  std::uniform_real_distribution<double> stiffness(5.0, 800.0);
  std::uniform_real_distribution<double> preload(0.0, 0.08);
  std::uniform_real_distribution<double> mu(0.05, 1.2);
  std::uniform_real_distribution<double> mu_extra(0.0, 0.5);
  std::uniform_real_distribution<double> wheel(0.005, 0.1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> lugs(6, 40);

  RobotDesign d;
  d.mass_kg = mass(rng);
  d.length_mm = length(rng);
  d.d_min_mm = dmin(rng);
  d.d_max_mm = d.d_min_mm + travel(rng);
  d.spring_stiffness_n_per_m = stiffness(rng);
  d.preload_compression_m = preload(rng);
  d.spring_spacing_mm =
      std::uniform_real_distribution<double>(1.0, d.length_mm * 0.9)(rng);
  d.mu_kinetic = mu(rng);
  d.mu_static = std::min(2.0, d.mu_kinetic + mu_extra(rng));
  if (coin(rng) == 1) d.wheel_radius_m = wheel(rng);
  d.lug.lug_count = lugs(rng);
  d.lug.min_contact_count =
      std::uniform_int_distribution<int>(1, d.lug.lug_count)(rng);
  d.lug.lug_radius_mm =
      std::uniform_real_distribution<double>(10.0, 150.0)(rng);
  return d;
}

}  // namespace

TEST_SUITE("netspec_io") {

TEST_CASE("parses the published bend network") {
  const PipeNetwork net = parse_network(kPaperNetwork);
  CHECK(net.pipe().inner_diameter_mm == 160.0);
  REQUIRE(net.segments().size() == 2);
  CHECK_FALSE(net.segments()[0].is_bend());
  CHECK(net.segments()[0].straight().length_mm == 500.0);
  CHECK(net.segments()[0].straight().incline_deg == 90.0);
  REQUIRE(net.segments()[1].is_bend());
  CHECK(net.segments()[1].bend().angle_deg == 90.0);
  CHECK(net.segments()[1].bend().radius_mm == 90.0);
  CHECK(net.segments()[1].bend().direction == TurnDirection::left);
}

TEST_CASE("parses standard pipe specs, comments and the format header") {
  const PipeNetwork net = parse_network(
      "format=1\n"
      "# a comment line\n"
      "pipe nps=6 schedule=40   # trailing comment\n"
      "\n"
      "segment straight length=250 incline=45\n");
  CHECK(net.pipe().inner_diameter_mm == doctest::Approx(154.051));
  REQUIRE(net.pipe().standard.has_value());
  CHECK(net.pipe().standard->schedule == Schedule::sch40);
}

TEST_CASE("parses the published robot with documented defaults") {
  const RobotDesign d = parse_design(kPaperRobot);
  CHECK(d.mass_kg == 0.470);
  CHECK(d.length_mm == 150.0);
  CHECK(d.d_max_mm == 163.33);
  CHECK(d.d_min_mm == 129.54);
  CHECK(d.spring_stiffness_n_per_m == 18.06);
  CHECK(d.preload_compression_m == 0.026);
  CHECK(d.mu_kinetic == 0.7);
  CHECK(d.mu_static == 0.7);           // defaults to mu_k
  CHECK(d.spring_spacing_mm == 30.0);  // documented default
  CHECK_FALSE(d.wheel_radius_m.has_value());
  CHECK(d.lug.lug_count == 22);
  CHECK(d.lug.min_contact_count == 9);
  CHECK(d.lug.lug_radius_mm == 80.0);
}

TEST_CASE("invalid inputs fail with exact source positions") {
  const std::vector<BadInput> fixtures = {
      {"empty input", "", 1, 1, "pipe"},
      {"segment before pipe",
       "segment straight length=500 incline=90\n", 1, 1, "pipe"},
      {"unknown directive",
       "pipe inner_diameter=160\nconduit straight\n", 2, 1, "directive"},
      {"duplicate pipe",
       "pipe inner_diameter=160\npipe inner_diameter=170\n", 2, 1,
       "single `pipe`"},
      {"zero diameter", "pipe inner_diameter=0\n", 1, 21, "positive"},
      {"bad float", "pipe inner_diameter=abc\n", 1, 21, "diameter"},
      {"unknown schedule", "pipe nps=6 schedule=99\n", 1, 21, "schedule"},
      {"unknown nps pair",
       "pipe nps=99 schedule=40\nsegment straight length=1 incline=0\n", 1,
       10, "known (nps, schedule) pair"},
      {"missing schedule", "pipe nps=6\n", 1, 1, "schedule"},
      {"angle out of range",
       "pipe inner_diameter=160\nsegment bend angle=120 radius=90 "
       "direction=up\n",
       2, 20, "(0, 90]"},
      {"missing radius",
       "pipe inner_diameter=160\nsegment bend angle=90 direction=up\n", 2, 1,
       "radius"},
      {"bad direction",
       "pipe inner_diameter=160\nsegment bend angle=90 radius=90 "
       "direction=sideways\n",
       2, 43, "direction"},
      {"incline on a later segment",
       "pipe inner_diameter=160\nsegment straight length=10 incline=90\n"
       "segment straight length=20 incline=5\n",
       3, 28, "first segment"},
      {"duplicate key",
       "pipe inner_diameter=160\nsegment straight length=5 length=6 "
       "incline=0\n",
       2, 27, "single `length`"},
      {"negative length",
       "pipe inner_diameter=160\nsegment straight length=-5 incline=0\n", 2,
       25, "positive length"},
      {"missing incline on the first segment",
       "pipe inner_diameter=160\nsegment straight length=5\n", 2, 1,
       "incline"},
      {"no segments", "pipe inner_diameter=160\n", 1, 1, "segment"},
  };

  for (const auto& fixture : fixtures) {
    CAPTURE(fixture.name);
    try {
      parse_network(fixture.text);
      FAIL_CHECK("expected SourceError for " << fixture.name);
    } catch (const SourceError& e) {
      CHECK(e.line() == fixture.line);
      CHECK(e.column() == fixture.column);
      CHECK(std::string(e.expected()).find(fixture.expected_fragment) !=
            std::string::npos);
      // Position stays inside the input bounds.
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
}

TEST_CASE("invalid robot inputs fail with positions") {
  const std::vector<BadInput> fixtures = {
      {"empty", "", 1, 1, "robot"},
      {"swapped diameters",
       "robot mass_kg=1 length_mm=150 dmax_mm=163.33 dmin_mm=170 "
       "stiffness_n_per_m=18 preload_m=0.02 mu_k=0.7\n",
       1, 54, "dmin_mm less than dmax_mm"},
      {"missing mass",
       "robot length_mm=150 dmax_mm=163 dmin_mm=129 stiffness_n_per_m=18 "
       "preload_m=0.02 mu_k=0.7\n",
       1, 1, "mass_kg"},
      {"unknown key",
       "robot mass_kg=1 length_mm=150 dmax_mm=163 dmin_mm=129 "
       "stiffness_n_per_m=18 preload_m=0.02 mu_k=0.7 color=red\n",
       1, 100, "robot"},
      {"mu_s below mu_k",
       "robot mass_kg=1 length_mm=150 dmax_mm=163 dmin_mm=129 "
       "stiffness_n_per_m=18 preload_m=0.02 mu_k=0.7 mu_s=0.5\n",
       1, 105, "mu_s"},
  };
  for (const auto& fixture : fixtures) {
    CAPTURE(fixture.name);
    try {
      parse_design(fixture.text);
      FAIL_CHECK("expected SourceError for " << fixture.name);
    } catch (const SourceError& e) {
      CHECK(e.line() == fixture.line);
      CHECK(e.column() == fixture.column);
      CHECK(std::string(e.expected()).find(fixture.expected_fragment) !=
            std::string::npos);
    }
  }
}

TEST_CASE("mu_s defaults to mu_k when omitted") {
  const RobotDesign d = parse_design(
      "robot mass_kg=1 length_mm=150 dmax_mm=163 dmin_mm=129 "
      "stiffness_n_per_m=18 preload_m=0.02 mu_k=0.65\n");
  CHECK(d.mu_static == 0.65);
}

TEST_CASE("network round trip: parse(emit(n)) == n over random networks") {
  std::mt19937 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const PipeNetwork net = parse_network(random_string_network(rng));
    const std::string emitted = emit_network(net);
    const PipeNetwork back = parse_network(emitted);
    CHECK(back == net);
    // Canonical form is idempotent.
    CHECK(emit_network(back) == emitted);
  }
}

TEST_CASE("design round trip over random designs") {
  std::mt19937 rng(103);
  for (int i = 0; i < 1000; ++i) {
    const RobotDesign d = random_design(rng);
    const std::string emitted = emit_design(d);
    const RobotDesign back = parse_design(emitted);
    CHECK(back == d);
    CHECK(emit_design(back) == emitted);
  }
}

TEST_CASE("emitted floats use shortest round-trip decimals") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(160.0) == "160");
  const double awkward = 0.1 + 0.2;  // 0.30000000000000004
  const std::string s = format_double(awkward);
  double parsed = 0.0;
  std::sscanf(s.c_str(), "%lf", &parsed);
  CHECK(parsed == awkward);
}

TEST_CASE("line endings and locale do not change parses") {
  const PipeNetwork lf = parse_network(kPaperNetwork);
  std::string crlf = kPaperNetwork;
  std::string with_cr;
  for (const char c : crlf) {
    if (c == '\n') with_cr += "\r\n";
    else with_cr += c;
  }
  CHECK(parse_network(with_cr) == lf);

  // A comma-decimal locale must not leak into parsing or emission.
  const char* previous = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  const PipeNetwork localized = parse_network(kPaperNetwork);
  CHECK(localized == lf);
  CHECK(emit_network(localized) == emit_network(lf));
  std::setlocale(LC_NUMERIC, previous != nullptr ? "C" : "C");
}

TEST_CASE("csv trace of an empty run") {
  TraversalTrace trace;
  CHECK(trace_csv(trace) ==
        "t,s,seg,m0_front_mm,m0_rear_mm,m1_front_mm,m1_rear_mm,m2_front_mm,"
        "m2_rear_mm,m0_N,m1_N,m2_N,m0_slip_N,m1_slip_N,m2_slip_N,g_axial\n");
}

TEST_CASE("design report serializations agree") {
  RobotDesign d = parse_design(kPaperRobot);
  d.wheel_radius_m = 0.02;
  MotorSpec motor;
  motor.stall_torque_nm = 0.88;
  const DesignReport report = design_report(d, 9.81, 0.0, 0.0, 2.0, motor);
  const std::string text = design_report_text(report);
  CHECK(text.find("K_s_required=21.111264") != std::string::npos);
  CHECK(text.find("TTE=0.666396") != std::string::npos);
  CHECK(text.find("torque_ok=true") != std::string::npos);
  const std::string json_doc = design_report_json(report);
  CHECK(json_doc.find("\"K_s_required\"") != std::string::npos);
  CHECK(json_doc.find("\"notes\"") != std::string::npos);
}

}  // TEST_SUITE
