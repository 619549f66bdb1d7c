#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "wps/cli/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wps_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const json& body) {
  const fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << body.dump(2) << "\n";
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::vector<std::string>& args) { return wps::cli::run(args); }

// CSV payload without the leading '#' comment lines (tool/seed/config echo).
std::string data_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

json report_of(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

}  // namespace

TEST_CASE("design subcommand reproduces the headline figures") {
  const fs::path dir = scratch("design");
  const fs::path cfg = write_config(dir, {{"command", "design"},
                                          {"device_width_m", 1e-2},
                                          {"r0_m", 50e-9},
                                          {"delta_v", 10.0},
                                          {"gap_d_m", 1e-3}});
  REQUIRE(run_cli({"design", "--config", cfg.string(), "--out", dir.string()}) == 0);

  const json rep = report_of(dir);
  CHECK(rep.at("response_time_s").get<double>() == doctest::Approx(6.58212e-13).epsilon(1e-6));
  CHECK(rep.at("channel_width_m").get<double>() == doctest::Approx(1e-7).epsilon(1e-6));
  CHECK(rep.at("channel_count").get<long long>() == 100000);
  CHECK(rep.at("bitrate_bps").get<double>() == doctest::Approx(1.51927e17).epsilon(1e-6));
  CHECK(rep.at("sensor_min_field_v_per_m").get<double>() ==
        doctest::Approx(6.58212e-6).epsilon(1e-6));

  // Meta block: tool tag, seed, faithful config echo.
  CHECK(rep.at("meta").at("tool").get<std::string>().rfind("wps ", 0) == 0);
  CHECK(rep.at("meta").at("seed").get<long long>() == 0);
  CHECK(rep.at("meta").at("config").at("device_width_m").get<double>() == 1e-2);
  CHECK(rep.at("meta").at("config").at("command").get<std::string>() == "design");

  // Result values are printed with six significant digits.
  const std::string raw = slurp(dir / "report.json");
  CHECK(raw.find("6.58212e-13") != std::string::npos);
  CHECK(raw.find("1.51927e+17") != std::string::npos);
}

TEST_CASE("direct-field drive and capacitor drive are interchangeable") {
  const fs::path dir = scratch("design_field");
  const fs::path cfg = write_config(dir, {{"command", "design"},
                                          {"device_width_m", 1e-2},
                                          {"r0_m", 50e-9},
                                          {"field_v_per_m", 1e4}});
  REQUIRE(run_cli({"design", "--config", cfg.string(), "--out", dir.string()}) == 0);
  CHECK(report_of(dir).at("response_time_s").get<double>() ==
        doctest::Approx(6.58212e-13).epsilon(1e-6));

  // Mixing the two drive styles is rejected.
  const fs::path both = write_config(dir, {{"command", "design"},
                                           {"device_width_m", 1e-2},
                                           {"r0_m", 50e-9},
                                           {"field_v_per_m", 1e4},
                                           {"delta_v", 10.0},
                                           {"gap_d_m", 1e-3}});
  CHECK(run_cli({"design", "--config", both.string(), "--out", dir.string()}) == 1);
}

TEST_CASE("config validation failures exit with code 1") {
  const fs::path dir = scratch("badcfg");

  // Missing file.
  CHECK(run_cli({"design", "--config", (dir / "nope.json").string()}) == 1);

  // Unparseable JSON.
  {
    std::ofstream(dir / "broken.json") << "{ not json";
  }
  CHECK(run_cli({"design", "--config", (dir / "broken.json").string()}) == 1);

  // Empty object: every required key missing.
  CHECK(run_cli({"design", "--config", write_config(dir, json::object()).string()}) == 1);

  // Unknown top-level key.
  CHECK(run_cli({"design", "--config",
                 write_config(dir, {{"command", "design"},
                                    {"device_width_m", 1e-2},
                                    {"r0_m", 50e-9},
                                    {"field_v_per_m", 1e4},
                                    {"foo", 1}})
                     .string()}) == 1);

  // Unknown nested key inside a pulse.
  CHECK(run_cli({"simulate", "--config",
                 write_config(
                     dir,
                     {{"command", "simulate"},
                      {"device",
                       {{"device_width_m", 1.6e-6}, {"r0_m", 50e-9}, {"gap_d_m", 1e-3}}},
                      {"t_end_s", 1e-12},
                      {"pulses",
                       json::array({{{"channel", 0},
                                     {"delta_v", 10.0},
                                     {"start_s", 0.0},
                                     {"duration_s", 1e-13},
                                     {"oops", true}}})}})
                     .string()}) == 1);

  // Declared command must match the subcommand.
  CHECK(run_cli({"confine", "--config",
                 write_config(dir, {{"command", "design"},
                                    {"device_width_m", 1e-2},
                                    {"r0_m", 50e-9},
                                    {"field_v_per_m", 1e4}})
                     .string()}) == 1);

  // Wrong type for a numeric key.
  CHECK(run_cli({"design", "--config",
                 write_config(dir, {{"command", "design"},
                                    {"device_width_m", "wide"},
                                    {"r0_m", 50e-9},
                                    {"field_v_per_m", 1e4}})
                     .string()}) == 1);
}

TEST_CASE("verification pass and the built-in negative control") {
  const fs::path dir = scratch("verify");
  const json base = {{"command", "verify"},
                     {"profile",
                      {{"type", "gaussian"}, {"x0", 0.0}, {"y0", 0.0}, {"sigma_x", 1.0},
                       {"sigma_y", 1.2}}},
                     {"e0", 4.0}};
  REQUIRE(run_cli({"verify", "--config", write_config(dir, base).string(), "--out",
                   dir.string(), "--grid-n", "16"}) == 0);
  json rep = report_of(dir);
  CHECK(rep.at("passed").get<bool>());
  CHECK(rep.at("residual").get<double>() <= 1e-10);
  CHECK(rep.at("tolerance").get<double>() == doctest::Approx(1e-10).epsilon(1e-6));

  // Flipping the potential sign must fail verification with exit code 2,
  // while still writing an honest report.
  json neg = base;
  neg["negate_potential"] = true;
  REQUIRE(run_cli({"verify", "--config", write_config(dir, neg).string(), "--out",
                   dir.string(), "--grid-n", "16"}) == 2);
  rep = report_of(dir);
  CHECK_FALSE(rep.at("passed").get<bool>());
  CHECK(rep.at("residual").get<double>() >= 0.1);
}

TEST_CASE("confinement trajectory run writes a report and a CSV") {
  const fs::path dir = scratch("confine");
  const fs::path cfg = write_config(dir, {{"command", "confine"},
                                          {"r0_m", 50e-9},
                                          {"delta_v", 10.0},
                                          {"gap_d_m", 1e-3},
                                          {"helicity", "negative"},
                                          {"field_alignment", "antiparallel"}});
  REQUIRE(run_cli({"confine", "--config", cfg.string(), "--out", dir.string()}) == 0);
  const json rep = report_of(dir);
  CHECK(rep.at("response_time_s").get<double>() == doctest::Approx(6.58212e-13).epsilon(1e-6));
  CHECK(rep.at("channel_width_m").get<double>() == doctest::Approx(1e-7).epsilon(1e-6));

  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.find("t_s,phi_rad,omega_rad_per_s,radius_m") != std::string::npos);
  CHECK(csv.find("# tool:") != std::string::npos);
  // 501 samples: default horizon dt/2 at step dt/1000, plus header/meta.
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 501);
}

TEST_CASE("field map run writes the sampled grid") {
  const fs::path dir = scratch("fields");
  const fs::path cfg = write_config(dir, {{"command", "fields"},
                                          {"profile",
                                           {{"type", "gaussian"}, {"x0", 0.0}, {"y0", 0.0},
                                            {"sigma_x", 1.3}, {"sigma_y", 1.3}}},
                                          {"length_scale_m", 1e-6}});
  REQUIRE(run_cli({"fields", "--config", cfg.string(), "--out", dir.string(), "--grid-n",
                   "12"}) == 0);
  const json rep = report_of(dir);
  // Uniform Gaussian guiding field, converted to tesla at a 1 um length
  // scale: -2.3668639 * hbar / (e * (1e-6)^2) / c.
  CHECK(rep.at("bz_center_t").get<double>() ==
        doctest::Approx(-1.5578981220061715e-3).epsilon(1e-6));

  const std::string csv = slurp(dir / "fields.csv");
  CHECK(csv.find("x_m,y_m,z_m,ex_v_per_m,ey_v_per_m,ez_v_per_m,bx_t,by_t,bz_t") !=
        std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 144);  // 12 x 12 samples
}

TEST_CASE("degeneracy run reports the mismatch and sweep") {
  const fs::path dir = scratch("degeneracy");
  const fs::path cfg = write_config(
      dir, {{"command", "degeneracy"},
            {"mass_ev", 938272088.16},
            {"energy_ev", 1e10},
            {"sweep", {{"e_min_ev", 1e9}, {"e_max_ev", 1e13}, {"points", 5}}}});
  REQUIRE(run_cli({"degeneracy", "--config", cfg.string(), "--out", dir.string()}) == 0);
  CHECK(report_of(dir).at("mismatch").get<double>() ==
        doctest::Approx(9.82387e-2).epsilon(1e-6));
  const std::string csv = slurp(dir / "mismatch.csv");
  CHECK(csv.find("energy_ev,mismatch") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 5 + 1);
}

TEST_CASE("sense run reports detection against the analytic floor") {
  const fs::path dir = scratch("sense");
  const fs::path cfg = write_config(dir, {{"command", "sense"},
                                          {"channel_width_m", 658e-9},
                                          {"field_v_per_m", 1.1e-6},
                                          {"window_s", 1e-3}});
  REQUIRE(run_cli({"sense", "--config", cfg.string(), "--out", dir.string()}) == 0);
  const json rep = report_of(dir);
  CHECK(rep.at("detected").get<bool>());
  CHECK(rep.at("time_to_confine_s").get<double>() == doctest::Approx(9.09384e-4).epsilon(1e-5));
  CHECK(rep.at("sensor_min_field_v_per_m").get<double>() ==
        doctest::Approx(1.00032e-6).epsilon(1e-5));

  // Below the floor: clean exit, detected = false.
  const fs::path weak = write_config(dir, {{"command", "sense"},
                                           {"channel_width_m", 658e-9},
                                           {"field_v_per_m", 0.9e-6},
                                           {"window_s", 1e-3}});
  REQUIRE(run_cli({"sense", "--config", weak.string(), "--out", dir.string()}) == 0);
  CHECK_FALSE(report_of(dir).at("detected").get<bool>());
}

TEST_CASE("simulate runs are byte-identical across reruns and thread counts") {
  const fs::path dir1 = scratch("sim1");
  const fs::path dir2 = scratch("sim2");
  const json body = {{"command", "simulate"},
                     {"device",
                      {{"device_width_m", 1.6e-6},
                       {"r0_m", 50e-9},
                       {"gap_d_m", 1e-3},
                       {"time_step_s", 6.582119565476075e-15}}},
                     {"t_end_s", 2.6328478261904300e-12},
                     {"pulses",
                      json::array({{{"channel", 2},
                                    {"delta_v", 10.0},
                                    {"start_s", 0.0},
                                    {"duration_s", 6.582119565476075e-13}},
                                   {{"channel", 2},
                                    {"delta_v", -10.0},
                                    {"start_s", 1.3164239130952150e-12},
                                    {"duration_s", 6.582119565476075e-13}},
                                   {{"channel", 7},
                                    {"delta_v", -10.0},
                                    {"start_s", 0.0},
                                    {"duration_s", 6.582119565476075e-13}},
                                   {{"channel", 7},
                                    {"delta_v", 10.0},
                                    {"start_s", 1.3164239130952150e-12},
                                    {"duration_s", 6.582119565476075e-13}}})}};
  const fs::path cfg1 = write_config(dir1, body);
  REQUIRE(run_cli({"simulate", "--config", cfg1.string(), "--out", dir1.string()}) == 0);

  json threaded = body;
  threaded["threads"] = 5;
  const fs::path cfg2 = write_config(dir2, threaded);
  REQUIRE(run_cli({"simulate", "--config", cfg2.string(), "--out", dir2.string()}) == 0);

  // Identical trace and events regardless of worker count.  Only the echoed
  // config in the '#' meta lines differs (it records the thread count), so
  // compare the data rows.
  CHECK(data_rows(dir1 / "trace.csv") == data_rows(dir2 / "trace.csv"));
  CHECK(data_rows(dir1 / "events.csv") == data_rows(dir2 / "events.csv"));

  const json rep = report_of(dir1);
  CHECK(rep.at("channel_count").get<long long>() == 16);
  CHECK(rep.at("samples").get<long long>() == 401);
  CHECK(rep.at("events").get<long long>() == 4);  // fall+rise on ch2, fall+rise on ch7

  // Rerunning the identical config reproduces identical bytes.
  const fs::path dir3 = scratch("sim3");
  const fs::path cfg3 = write_config(dir3, body);
  REQUIRE(run_cli({"simulate", "--config", cfg3.string(), "--out", dir3.string()}) == 0);
  CHECK(slurp(dir1 / "trace.csv") == slurp(dir3 / "trace.csv"));
  CHECK(slurp(dir1 / "events.csv") == slurp(dir3 / "events.csv"));

  const std::string trace = slurp(dir1 / "trace.csv");
  CHECK(trace.find("t,ch0,ch1,") != std::string::npos);
  const std::string events = slurp(dir1 / "events.csv");
  CHECK(events.find("t,channel,transition") != std::string::npos);
  CHECK(events.find("fall") != std::string::npos);
  CHECK(events.find("rise") != std::string::npos);
}

TEST_CASE("command line flags override the config file") {
  const fs::path dir = scratch("flags");
  const fs::path cfg = write_config(dir, {{"command", "design"},
                                          {"device_width_m", 1e-2},
                                          {"r0_m", 50e-9},
                                          {"field_v_per_m", 1e4},
                                          {"seed", 7},
                                          {"out_dir", (dir / "from_config").string()}});
  // Config-file out_dir and seed apply on their own...
  REQUIRE(run_cli({"design", "--config", cfg.string()}) == 0);
  CHECK(report_of(dir / "from_config").at("meta").at("seed").get<long long>() == 7);

  // ...and the flags win when given.
  const fs::path over = dir / "nested" / "deeper";
  REQUIRE(run_cli({"design", "--config", cfg.string(), "--out", over.string(), "--seed",
                   "12345"}) == 0);
  CHECK(fs::exists(over / "report.json"));  // directory created on demand
  CHECK(report_of(over).at("meta").at("seed").get<long long>() == 12345);

  // Out-of-range flag values are rejected by the parser.
  CHECK(run_cli({"verify", "--config", cfg.string(), "--grid-n", "4"}) != 0);
  CHECK(run_cli({"verify", "--config", cfg.string(), "--order", "3"}) != 0);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli({}) == 1);                       // missing subcommand
  CHECK(run_cli({"frobnicate"}) == 1);           // unknown subcommand
  CHECK(run_cli({"design"}) == 1);               // missing --config
  CHECK(run_cli({"--help"}) == 0);               // help exits cleanly
  CHECK(run_cli({"--version"}) == 0);
}
