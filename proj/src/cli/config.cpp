#include "wps/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "wps/errors.hpp"

namespace wps::cli {

namespace {

using io::json;

/// Walks one JSON object: typed extraction with defaults, then finish()
/// rejects anything that was never asked for, naming its path.
class Checker {
 public:
  Checker(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw input_error(path_ + ": expected a JSON object");
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  double number(const std::string& key) {
    if (!has(key)) {
      throw input_error(path_ + ": missing required key \"" + key + "\"");
    }
    return as_number(node_.at(key), key);
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? as_number(node_.at(key), key) : fallback;
  }

  std::int64_t integer(const std::string& key) {
    if (!has(key)) {
      throw input_error(path_ + ": missing required key \"" + key + "\"");
    }
    return as_integer(node_.at(key), key);
  }

  std::int64_t integer_or(const std::string& key, std::int64_t fallback) {
    return has(key) ? as_integer(node_.at(key), key) : fallback;
  }

  std::string string_or(const std::string& key, std::string fallback) {
    if (!has(key)) {
      return fallback;
    }
    const json& v = node_.at(key);
    if (!v.is_string()) {
      throw input_error(path_ + "." + key + ": expected a string");
    }
    return v.get<std::string>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) {
      return fallback;
    }
    const json& v = node_.at(key);
    if (!v.is_boolean()) {
      throw input_error(path_ + "." + key + ": expected true or false");
    }
    return v.get<bool>();
  }

  const json& object(const std::string& key) {
    if (!has(key)) {
      throw input_error(path_ + ": missing required key \"" + key + "\"");
    }
    const json& v = node_.at(key);
    if (!v.is_object()) {
      throw input_error(path_ + "." + key + ": expected an object");
    }
    return v;
  }

  const json* object_if_present(const std::string& key) {
    if (!has(key)) {
      return nullptr;
    }
    const json& v = node_.at(key);
    if (!v.is_object()) {
      throw input_error(path_ + "." + key + ": expected an object");
    }
    return &v;
  }

  const json* array_if_present(const std::string& key) {
    if (!has(key)) {
      return nullptr;
    }
    const json& v = node_.at(key);
    if (!v.is_array()) {
      throw input_error(path_ + "." + key + ": expected an array");
    }
    return &v;
  }

  /// One message naming every absent key of the required list.
  void require_all(const std::vector<std::string>& keys) {
    std::string missing;
    for (const auto& key : keys) {
      if (!node_.contains(key)) {
        missing += missing.empty() ? "\"" : ", \"";
        missing += key + "\"";
      }
    }
    if (!missing.empty()) {
      throw input_error(path_ + ": missing required keys: " + missing);
    }
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (seen_.find(key) == seen_.end()) {
        throw input_error(path_ + ": unknown key \"" + key + "\"");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) {
      throw input_error(path_ + "." + key + ": expected a number");
    }
    return v.get<double>();
  }

  std::int64_t as_integer(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) {
      throw input_error(path_ + "." + key + ": expected an integer");
    }
    return v.get<std::int64_t>();
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

/// The drive is either a bare field magnitude or a capacitor voltage with
/// its plate gap; the normalized form keeps whichever route was given.
void check_drive(Checker& c, json& out) {
  const bool by_field = c.has("field_v_per_m");
  const bool by_v = c.has("delta_v");
  const bool by_gap = c.has("gap_d_m");
  if (by_field && (by_v || by_gap)) {
    throw input_error(c.path() +
                      ": give either \"field_v_per_m\" or \"delta_v\" + \"gap_d_m\", not both");
  }
  if (by_field) {
    out["field_v_per_m"] = c.number("field_v_per_m");
    return;
  }
  if (!by_v || !by_gap) {
    throw input_error(c.path() +
                      ": a drive is required: either \"field_v_per_m\" or both \"delta_v\" and "
                      "\"gap_d_m\"");
  }
  out["delta_v"] = c.number("delta_v");
  out["gap_d_m"] = c.number("gap_d_m");
}

std::string check_choice(Checker& c, const std::string& key, std::string fallback,
                         const std::vector<std::string>& choices) {
  std::string v = c.string_or(key, std::move(fallback));
  for (const auto& choice : choices) {
    if (v == choice) {
      return v;
    }
  }
  std::string allowed;
  for (const auto& choice : choices) {
    allowed += allowed.empty() ? "\"" : " or \"";
    allowed += choice + "\"";
  }
  throw input_error(c.path() + "." + key + ": got \"" + v + "\", expected " + allowed);
}

json check_profile(const json& node, const std::string& path) {
  Checker c(node, path);
  json out;
  const std::string type =
      check_choice(c, "type", "", {"constant", "gaussian", "supergaussian"});
  out["type"] = type;
  if (type == "constant") {
    out["value"] = c.number_or("value", 1.0);
    out["half_width"] = c.number_or("half_width", 1.0);
  } else {
    out["x0"] = c.number_or("x0", 0.0);
    out["y0"] = c.number_or("y0", 0.0);
    out["sigma_x"] = c.number_or("sigma_x", 1.0);
    out["sigma_y"] = c.number_or("sigma_y", 1.0);
    if (type == "supergaussian") {
      out["p_x"] = c.number_or("p_x", 1.0);
      out["p_y"] = c.number_or("p_y", 1.0);
    }
  }
  c.finish();
  return out;
}

json check_design(Checker& c) {
  c.require_all({"device_width_m", "r0_m"});
  json out;
  out["device_width_m"] = c.number("device_width_m");
  out["r0_m"] = c.number("r0_m");
  check_drive(c, out);
  out["q_e"] = c.number_or("q_e", 1.0);
  out["sense_window_s"] = c.number_or("sense_window_s", 1e-3);
  return out;
}

json check_confine(Checker& c) {
  c.require_all({"r0_m"});
  json out;
  out["r0_m"] = c.number("r0_m");
  check_drive(c, out);
  out["q_e"] = c.number_or("q_e", 1.0);
  out["helicity"] = check_choice(c, "helicity", "positive", {"positive", "negative"});
  out["field_alignment"] =
      check_choice(c, "field_alignment", "antiparallel", {"parallel", "antiparallel"});
  // Zero means "derive from the switching time" (t_end: half of it;
  // step: a thousandth); omega0 defaults to the nominal orbit rate with
  // the branch-appropriate sign.
  out["t_end_s"] = c.number_or("t_end_s", 0.0);
  out["step_s"] = c.number_or("step_s", 0.0);
  if (c.has("omega0_rad_per_s")) {
    out["omega0_rad_per_s"] = c.number("omega0_rad_per_s");
  }
  return out;
}

json check_fields(Checker& c) {
  json out;
  out["profile"] = check_profile(c.object("profile"), c.path() + ".profile");
  out["q_e"] = c.number_or("q_e", 1.0);
  out["helicity"] = check_choice(c, "helicity", "positive", {"positive", "negative"});
  out["length_scale_m"] = c.number_or("length_scale_m", 1.0);
  return out;
}

json check_verify(Checker& c) {
  c.require_all({"profile", "e0"});
  json out;
  out["profile"] = check_profile(c.object("profile"), c.path() + ".profile");
  out["e0"] = c.number("e0");
  out["helicity"] = check_choice(c, "helicity", "positive", {"positive", "negative"});
  out["mode"] = check_choice(c, "mode", "analytic", {"analytic", "numeric"});
  out["tolerance"] = c.number_or("tolerance", 1e-10);
  out["negate_potential"] = c.boolean_or("negate_potential", false);
  return out;
}

json check_degeneracy(Checker& c) {
  c.require_all({"mass_ev", "energy_ev"});
  json out;
  out["mass_ev"] = c.number("mass_ev");
  out["energy_ev"] = c.number("energy_ev");
  if (const json* sweep = c.object_if_present("sweep")) {
    Checker sc(*sweep, c.path() + ".sweep");
    sc.require_all({"e_min_ev", "e_max_ev"});
    json s;
    s["e_min_ev"] = sc.number("e_min_ev");
    s["e_max_ev"] = sc.number("e_max_ev");
    s["points"] = sc.integer_or("points", 64);
    sc.finish();
    out["sweep"] = std::move(s);
  }
  return out;
}

json check_simulate(Checker& c) {
  c.require_all({"device", "t_end_s"});
  json out;
  {
    Checker dc(c.object("device"), c.path() + ".device");
    dc.require_all({"device_width_m", "r0_m", "gap_d_m"});
    json d;
    d["device_width_m"] = dc.number("device_width_m");
    d["r0_m"] = dc.number("r0_m");
    d["gap_d_m"] = dc.number("gap_d_m");
    d["q_e"] = dc.number_or("q_e", 1.0);
    d["on_radius_threshold_m"] =
        dc.number_or("on_radius_threshold_m", 10.0 * d["r0_m"].get<double>());
    if (dc.has("time_step_s")) {
      d["time_step_s"] = dc.number("time_step_s");
    }
    d["max_channels"] = dc.integer_or("max_channels", 4096);
    dc.finish();
    out["device"] = std::move(d);
  }
  out["pulses"] = json::array();
  if (const json* pulses = c.array_if_present("pulses")) {
    std::size_t i = 0;
    for (const json& p : *pulses) {
      Checker pc(p, c.path() + ".pulses[" + std::to_string(i) + "]");
      pc.require_all({"channel", "delta_v", "start_s", "duration_s"});
      json q;
      q["channel"] = pc.integer("channel");
      q["delta_v"] = pc.number("delta_v");
      q["start_s"] = pc.number("start_s");
      q["duration_s"] = pc.number("duration_s");
      pc.finish();
      out["pulses"].push_back(std::move(q));
      ++i;
    }
  }
  out["t_end_s"] = c.number("t_end_s");
  out["threads"] = c.integer_or("threads", 1);
  return out;
}

json check_sense(Checker& c) {
  c.require_all({"channel_width_m", "field_v_per_m", "window_s"});
  json out;
  out["channel_width_m"] = c.number("channel_width_m");
  out["field_v_per_m"] = c.number("field_v_per_m");
  out["window_s"] = c.number("window_s");
  out["q_e"] = c.number_or("q_e", 1.0);
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& command) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("config is not valid JSON: ") + e.what());
  }

  Checker c(doc, command);
  RunConfig cfg;
  cfg.command = command;
  const std::string declared = c.string_or("command", command);
  if (declared != command) {
    throw input_error(command + ": config declares command \"" + declared + "\"");
  }
  cfg.out_dir = c.string_or("out_dir", ".");
  const std::int64_t seed = c.integer_or("seed", 0);
  if (seed < 0) {
    throw input_error(command + ".seed: must be nonnegative");
  }
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.grid_n = static_cast<int>(c.integer_or("grid_n", 48));
  cfg.order = static_cast<int>(c.integer_or("order", 2));

  if (command == "design") {
    cfg.params = check_design(c);
  } else if (command == "confine") {
    cfg.params = check_confine(c);
  } else if (command == "fields") {
    cfg.params = check_fields(c);
  } else if (command == "verify") {
    cfg.params = check_verify(c);
  } else if (command == "degeneracy") {
    cfg.params = check_degeneracy(c);
  } else if (command == "simulate") {
    cfg.params = check_simulate(c);
  } else if (command == "sense") {
    cfg.params = check_sense(c);
  } else {
    throw input_error("unknown command \"" + command + "\"");
  }
  c.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw input_error("cannot read config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), command);
}

}  // namespace wps::cli
