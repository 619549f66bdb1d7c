#include "wps/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "wps/errors.hpp"

namespace wps::io {

std::string sci6(double v) {
  if (v == 0.0) {
    return "0.00000e+00";  // one spelling for both signed zeros
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

double round_sig6(double v) { return std::strtod(sci6(v).c_str(), nullptr); }

void write_meta(std::ostream& os, const MetaLines& meta) {
  for (const auto& [key, value] : meta) {
    os << "# " << key << ": " << value << '\n';
  }
}

void write_trace_csv(std::ostream& os, const sim::BitstreamTrace& trace, const MetaLines& meta) {
  write_meta(os, meta);
  os << 't';
  for (std::size_t c = 0; c < trace.channels; ++c) {
    os << ",ch" << c;
  }
  os << '\n';
  for (std::size_t k = 0; k < trace.samples(); ++k) {
    os << sci6(trace.times[k]);
    for (std::size_t c = 0; c < trace.channels; ++c) {
      os << ',' << static_cast<int>(trace.bit(k, c));
    }
    os << '\n';
  }
}

void write_events_csv(std::ostream& os, const sim::BitstreamTrace& trace, const MetaLines& meta) {
  write_meta(os, meta);
  os << "t,channel,transition\n";
  for (const auto& ev : trace.events) {
    os << sci6(ev.t) << ',' << ev.channel << ','
       << (ev.transition == sim::Transition::fall ? "fall" : "rise") << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const confinement::PhaseTrajectory& traj,
                          const MetaLines& meta) {
  write_meta(os, meta);
  os << "t_s,phi_rad,omega_rad_per_s,radius_m\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << sci6(traj.times[i]) << ',' << sci6(traj.phi[i]) << ',' << sci6(traj.omega[i]) << ',';
    if (std::isfinite(traj.radius[i])) {
      os << sci6(traj.radius[i]);
    }
    os << '\n';
  }
}

void write_mismatch_csv(std::ostream& os,
                        const std::vector<std::pair<double, double>>& sweep,
                        const MetaLines& meta) {
  write_meta(os, meta);
  os << "energy_ev,mismatch\n";
  for (const auto& [energy, mismatch] : sweep) {
    os << sci6(energy) << ',' << sci6(mismatch) << '\n';
  }
}

void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples,
                     const MetaLines& meta) {
  write_meta(os, meta);
  os << "x_m,y_m,z_m,ex_v_per_m,ey_v_per_m,ez_v_per_m,bx_t,by_t,bz_t\n";
  for (const auto& s : samples) {
    os << sci6(s.x) << ',' << sci6(s.y) << ',' << sci6(s.z) << ',' << sci6(s.e[0]) << ','
       << sci6(s.e[1]) << ',' << sci6(s.e[2]) << ',' << sci6(s.b[0]) << ',' << sci6(s.b[1])
       << ',' << sci6(s.b[2]) << '\n';
  }
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw input_error("cannot open " + path.string() + " for writing");
  }
  fn(os);
  os.flush();
  if (!os) {
    throw input_error("write to " + path.string() + " failed");
  }
}

}  // namespace wps::io
