#include "wps/cli/run.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "wps/cli/config.hpp"
#include "wps/confinement.hpp"
#include "wps/constants.hpp"
#include "wps/degeneracy.hpp"
#include "wps/errors.hpp"
#include "wps/fieldkit/fields.hpp"
#include "wps/fieldkit/residual.hpp"
#include "wps/io/csv.hpp"
#include "wps/io/report.hpp"
#include "wps/sim.hpp"
#include "wps/units.hpp"

namespace wps::cli {

namespace {

using io::json;

json base_echo(const RunConfig& cfg) {
  json echo;
  echo["command"] = cfg.command;
  for (const auto& [key, value] : cfg.params.items()) {
    echo[key] = value;
  }
  return echo;
}

fieldkit::ScalarProfile profile_from(const json& p) {
  const std::string type = p.at("type").get<std::string>();
  if (type == "constant") {
    const double hw = p.at("half_width").get<double>();
    if (!(hw > 0.0)) {
      throw input_error("profile.half_width: must be positive");
    }
    return fieldkit::constant_profile(p.at("value").get<double>(),
                                      fieldkit::Rect{-hw, hw, -hw, hw});
  }
  fieldkit::SuperGaussianParams sg;
  sg.x0 = p.at("x0").get<double>();
  sg.y0 = p.at("y0").get<double>();
  sg.sigma_x = p.at("sigma_x").get<double>();
  sg.sigma_y = p.at("sigma_y").get<double>();
  if (type == "supergaussian") {
    sg.p_x = p.at("p_x").get<double>();
    sg.p_y = p.at("p_y").get<double>();
  }
  return fieldkit::supergaussian(sg);
}

Helicity helicity_from(const json& params) {
  return params.at("helicity").get<std::string>() == "positive" ? Helicity::positive
                                                                : Helicity::negative;
}

confinement::ConfinementParams drive_params(const json& p, double r0, double q, int sign) {
  if (p.contains("field_v_per_m")) {
    return confinement::make_params(r0, q, p.at("field_v_per_m").get<double>(), sign);
  }
  return confinement::make_params(
      r0, q,
      confinement::Capacitor{p.at("delta_v").get<double>(), p.at("gap_d_m").get<double>()},
      sign);
}

int run_design(const RunConfig& cfg) {
  const json& p = cfg.params;
  const auto cp = drive_params(p, p.at("r0_m").get<double>(), p.at("q_e").get<double>(), +1);
  const auto d = confinement::design_device(p.at("device_width_m").get<double>(), cp,
                                            p.at("sense_window_s").get<double>());
  json values;
  values["response_time_s"] = d.response_time;
  values["channel_width_m"] = d.channel_width;
  values["channel_count"] = d.channel_count;
  values["bitrate_bps"] = d.bitrate;
  values["sensor_min_field_v_per_m"] = d.sensor_min_field;
  io::write_report(cfg.out_dir / "report.json", io::meta_block(cfg.seed, base_echo(cfg)),
                   values);
  return 0;
}

int run_confine(const RunConfig& cfg) {
  const json& p = cfg.params;
  const double r0 = p.at("r0_m").get<double>();
  const Helicity hel = helicity_from(p);
  const auto align = p.at("field_alignment").get<std::string>() == "parallel"
                         ? confinement::FieldAlignment::parallel
                         : confinement::FieldAlignment::antiparallel;
  const int sign = confinement::orientation_sign(hel, align);
  const auto cp = drive_params(p, r0, p.at("q_e").get<double>(), sign);
  const double dt = confinement::confinement_time(cp);

  double t_end = p.at("t_end_s").get<double>();
  if (t_end == 0.0) {
    t_end = 0.5 * dt;
  }
  double step = p.at("step_s").get<double>();
  if (step == 0.0) {
    step = dt / 1000.0;
  }
  // Default start: the nominal orbit at r0, turning in the sense that the
  // drive then tightens (sign +1) or unwinds (sign -1).
  const double omega0 = p.contains("omega0_rad_per_s")
                            ? p.at("omega0_rad_per_s").get<double>()
                            : -static_cast<double>(sign) * constants::c / r0;
  const auto traj = confinement::integrate_phase(cp, omega0, t_end, step);

  json echo = base_echo(cfg);
  echo["t_end_s"] = t_end;
  echo["step_s"] = step;
  echo["omega0_rad_per_s"] = omega0;
  const json meta = io::meta_block(cfg.seed, echo);
  const auto lines = io::meta_lines(meta);
  io::write_file(cfg.out_dir / "trajectory.csv",
                 [&](std::ostream& os) { io::write_trajectory_csv(os, traj, lines); });

  json values;
  values["response_time_s"] = dt;
  values["channel_width_m"] = confinement::channel_width(cp.field, dt, cp.q);
  io::write_report(cfg.out_dir / "report.json", meta, values);
  return 0;
}

int run_fields(const RunConfig& cfg) {
  const json& p = cfg.params;
  const auto profile = profile_from(p.at("profile"));
  const Helicity hel = helicity_from(p);
  const double q = p.at("q_e").get<double>();
  const double scale = p.at("length_scale_m").get<double>();
  if (!(scale > 0.0)) {
    throw input_error("fields.length_scale_m: must be positive");
  }
  const auto em = fieldkit::guiding_bfield(profile, q, hel);

  const UnitSystem nat = natural_units(scale);
  const UnitSystem si = si_units();
  const auto to_m = [&](double v) { return convert(v, UnitKind::length, nat, si); };
  const auto to_v_per_m = [&](double v) { return convert(v, UnitKind::field, nat, si); };
  const auto to_tesla = [&](double v) {
    return convert(v, UnitKind::field, nat, si) / constants::c;
  };

  const auto& dom = profile.positivity_domain;
  const std::size_t n = static_cast<std::size_t>(cfg.grid_n);
  std::vector<io::FieldSample> samples;
  samples.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double fy = static_cast<double>(j) / static_cast<double>(n - 1);
    const double y = dom.y_lo + fy * (dom.y_hi - dom.y_lo);
    for (std::size_t i = 0; i < n; ++i) {
      const double fx = static_cast<double>(i) / static_cast<double>(n - 1);
      const double x = dom.x_lo + fx * (dom.x_hi - dom.x_lo);
      const auto e = em.e(x, y, 0.0, 0.0);
      const auto b = em.b(x, y, 0.0, 0.0);
      io::FieldSample s;
      s.x = to_m(x);
      s.y = to_m(y);
      s.z = 0.0;
      for (int k = 0; k < 3; ++k) {
        s.e[static_cast<std::size_t>(k)] = to_v_per_m(e[static_cast<std::size_t>(k)]);
        s.b[static_cast<std::size_t>(k)] = to_tesla(b[static_cast<std::size_t>(k)]);
      }
      samples.push_back(s);
    }
  }

  json echo = base_echo(cfg);
  echo["grid_n"] = cfg.grid_n;
  const json meta = io::meta_block(cfg.seed, echo);
  const auto lines = io::meta_lines(meta);
  io::write_file(cfg.out_dir / "fields.csv",
                 [&](std::ostream& os) { io::write_field_csv(os, samples, lines); });

  const json& prof_cfg = p.at("profile");
  const double cx = prof_cfg.contains("x0") ? prof_cfg.at("x0").get<double>()
                                            : 0.5 * (dom.x_lo + dom.x_hi);
  const double cy = prof_cfg.contains("y0") ? prof_cfg.at("y0").get<double>()
                                            : 0.5 * (dom.y_lo + dom.y_hi);
  json values;
  values["bz_center_t"] = to_tesla(em.b(cx, cy, 0.0, 0.0)[2]);
  io::write_report(cfg.out_dir / "report.json", meta, values);
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const json& p = cfg.params;
  const double e0 = p.at("e0").get<double>();
  if (!(e0 > 0.0)) {
    throw input_error("verify.e0: must be positive");
  }
  const auto profile = profile_from(p.at("profile"));
  const Helicity hel = helicity_from(p);
  const auto spinor = hel == Helicity::positive ? fieldkit::positive_spinor(profile, e0)
                                                : fieldkit::negative_spinor(profile, e0);
  // The deliberately wrong potential is the other helicity's: every
  // component flips sign, which is the classic O(1) negative control.
  const Helicity pot_hel =
      p.at("negate_potential").get<bool>()
          ? (hel == Helicity::positive ? Helicity::negative : Helicity::positive)
          : hel;
  const auto pot = fieldkit::guiding_potential(profile, pot_hel);

  const auto grid =
      fieldkit::default_grid(profile, e0, static_cast<std::size_t>(cfg.grid_n), cfg.order);
  fieldkit::ResidualOptions opt;
  opt.mode = p.at("mode").get<std::string>() == "numeric" ? fieldkit::DerivMode::numeric
                                                          : fieldkit::DerivMode::analytic;
  opt.order = cfg.order;
  const double residual = fieldkit::weyl_residual(spinor, pot, grid, opt);
  const double tolerance = p.at("tolerance").get<double>();

  json echo = base_echo(cfg);
  echo["grid_n"] = cfg.grid_n;
  echo["order"] = cfg.order;
  json values;
  values["residual"] = residual;
  values["tolerance"] = tolerance;
  values["passed"] = residual <= tolerance;
  io::write_report(cfg.out_dir / "report.json", io::meta_block(cfg.seed, echo), values);
  return residual <= tolerance ? 0 : 2;
}

int run_degeneracy(const RunConfig& cfg) {
  const json& p = cfg.params;
  const double mass = p.at("mass_ev").get<double>();
  const double energy = p.at("energy_ev").get<double>();
  const double mismatch = degeneracy::degeneracy_mismatch(degeneracy::make_state(energy, mass));

  const json meta = io::meta_block(cfg.seed, base_echo(cfg));
  if (p.contains("sweep")) {
    const json& s = p.at("sweep");
    const std::int64_t points = s.at("points").get<std::int64_t>();
    if (points < 2) {
      throw input_error("degeneracy.sweep.points: need at least 2, got " +
                        std::to_string(points));
    }
    const auto sweep =
        degeneracy::mismatch_sweep(mass, s.at("e_min_ev").get<double>(),
                                   s.at("e_max_ev").get<double>(),
                                   static_cast<std::size_t>(points));
    const auto lines = io::meta_lines(meta);
    io::write_file(cfg.out_dir / "mismatch.csv",
                   [&](std::ostream& os) { io::write_mismatch_csv(os, sweep, lines); });
  }

  json values;
  values["mismatch"] = mismatch;
  io::write_report(cfg.out_dir / "report.json", meta, values);
  return 0;
}

int run_simulate(const RunConfig& cfg) {
  const json& p = cfg.params;
  const json& d = p.at("device");
  sim::DeviceConfig dc;
  dc.device_width = d.at("device_width_m").get<double>();
  dc.channel_r0 = d.at("r0_m").get<double>();
  dc.gap_d = d.at("gap_d_m").get<double>();
  dc.q = d.at("q_e").get<double>();
  dc.on_radius_threshold = d.at("on_radius_threshold_m").get<double>();
  dc.time_step = d.contains("time_step_s") ? d.at("time_step_s").get<double>() : 0.0;
  const std::int64_t cap = d.at("max_channels").get<std::int64_t>();
  if (cap < 1) {
    throw input_error("simulate.device.max_channels: must be at least 1");
  }
  dc.max_channels = static_cast<std::size_t>(cap);

  std::vector<sim::ControlPulse> pulses;
  for (const json& q : p.at("pulses")) {
    const std::int64_t channel = q.at("channel").get<std::int64_t>();
    if (channel < 0) {
      throw input_error("simulate.pulses: channel must be nonnegative");
    }
    pulses.push_back({static_cast<std::size_t>(channel), q.at("delta_v").get<double>(),
                      q.at("start_s").get<double>(), q.at("duration_s").get<double>()});
  }
  const std::int64_t threads = p.at("threads").get<std::int64_t>();
  if (threads < 1 || threads > 1024) {
    throw input_error("simulate.threads: must be in [1, 1024]");
  }
  const auto trace = sim::run_schedule(dc, pulses, p.at("t_end_s").get<double>(),
                                       static_cast<unsigned>(threads));

  const json meta = io::meta_block(cfg.seed, base_echo(cfg));
  const auto lines = io::meta_lines(meta);
  io::write_file(cfg.out_dir / "trace.csv",
                 [&](std::ostream& os) { io::write_trace_csv(os, trace, lines); });
  io::write_file(cfg.out_dir / "events.csv",
                 [&](std::ostream& os) { io::write_events_csv(os, trace, lines); });

  json values;
  values["channel_count"] = trace.channels;
  values["time_step_s"] = trace.times[1] - trace.times[0];
  values["samples"] = trace.samples();
  values["events"] = trace.events.size();
  io::write_report(cfg.out_dir / "report.json", meta, values);
  return 0;
}

int run_sense(const RunConfig& cfg) {
  const json& p = cfg.params;
  const double width = p.at("channel_width_m").get<double>();
  if (!(width > 0.0)) {
    throw input_error("sense.channel_width_m: must be positive");
  }
  const double q = p.at("q_e").get<double>();
  const double window = p.at("window_s").get<double>();
  // The sensor is a single channel: the device is exactly one channel wide
  // and the plate gap is irrelevant to an ambient-field drive.
  sim::DeviceConfig dc;
  dc.device_width = width;
  dc.channel_r0 = 0.5 * width;
  dc.gap_d = 1.0;
  dc.q = q;
  const auto result = sim::sense_field(dc, p.at("field_v_per_m").get<double>(), window);

  json values;
  values["detected"] = result.detected;
  values["time_to_confine_s"] = result.time_to_confine;
  values["sensor_min_field_v_per_m"] = confinement::min_detectable_field(width, window, q);
  io::write_report(cfg.out_dir / "report.json", io::meta_block(cfg.seed, base_echo(cfg)),
                   values);
  return 0;
}

int execute(const RunConfig& cfg) {
  if (cfg.command == "design") return run_design(cfg);
  if (cfg.command == "confine") return run_confine(cfg);
  if (cfg.command == "fields") return run_fields(cfg);
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "degeneracy") return run_degeneracy(cfg);
  if (cfg.command == "simulate") return run_simulate(cfg);
  if (cfg.command == "sense") return run_sense(cfg);
  throw input_error("unknown command \"" + cfg.command + "\"");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Design, verification and simulation toolkit for massless-carrier parallel "
               "switching devices"};
  app.name("wps");
  app.set_version_flag("--version", io::tool_version());
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::string out;
    int grid_n = 48;
    int order = 2;
    std::uint64_t seed = 0;
  } flags;

  static constexpr struct {
    const char* name;
    const char* desc;
  } kCommands[] = {
      {"design", "Headline device figures: response time, channel count, bitrate, sensitivity"},
      {"confine", "Integrate one carrier's phase under drive and export the trajectory"},
      {"fields", "Sample the guiding magnetic field of an envelope profile"},
      {"verify", "Check a spinor/potential pair against the wave operator"},
      {"degeneracy", "High-energy degeneracy mismatch, optionally swept over energy"},
      {"simulate", "Run a pulse schedule on a channel array and export the bitstream"},
      {"sense", "Ambient-field sensing with a single channel"},
  };
  for (const auto& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.desc);
    sub->add_option("--config", flags.config, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory (default from config, else \".\")");
    sub->add_option("--grid-n", flags.grid_n, "Interior grid points per axis")
        ->check(CLI::Range(8, 256));
    sub->add_option("--order", flags.order, "Spatial stencil order")
        ->check(CLI::IsMember({2, 4}));
    sub->add_option("--seed", flags.seed, "RNG seed recorded in every output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig cfg = load_config(flags.config, sub->get_name());
    if (sub->count("--out") > 0) {
      cfg.out_dir = flags.out;
    }
    if (sub->count("--grid-n") > 0) {
      cfg.grid_n = flags.grid_n;
    }
    if (sub->count("--order") > 0) {
      cfg.order = flags.order;
    }
    if (sub->count("--seed") > 0) {
      cfg.seed = flags.seed;
    }
    if (cfg.order != 2 && cfg.order != 4) {
      throw input_error("order must be 2 or 4, got " + std::to_string(cfg.order));
    }
    if (cfg.grid_n < 8 || cfg.grid_n > 256) {
      throw input_error("grid_n must be in [8, 256], got " + std::to_string(cfg.grid_n));
    }
    std::filesystem::create_directories(cfg.out_dir);
    return execute(cfg);
  } catch (const wps::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("wps");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace wps::cli
