#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wps/confinement.hpp"
#include "wps/sim.hpp"

namespace wps::io {

/// Fixed-width scientific form with 6 significant digits ("%.5e"): the
/// numeric format of every CSV cell and every value in the JSON reports.
std::string sci6(double v);

/// v pushed through its sci6 decimal form and back, so serialized numbers
/// round-trip byte-identically.
double round_sig6(double v);

/// Key/value lines written as '# key: value' comments ahead of each CSV
/// header row; carries the run provenance (tool version, seed, config).
using MetaLines = std::vector<std::pair<std::string, std::string>>;

void write_meta(std::ostream& os, const MetaLines& meta);

/// Header `t,ch0,ch1,...`: sample time in seconds, then one 0/1 conduction
/// bit per channel.
void write_trace_csv(std::ostream& os, const sim::BitstreamTrace& trace, const MetaLines& meta);

/// Header `t,channel,transition` with transition in {fall, rise}.
void write_events_csv(std::ostream& os, const sim::BitstreamTrace& trace, const MetaLines& meta);

/// Header `t_s,phi_rad,omega_rad_per_s,radius_m`; radius cells are empty
/// where the phase velocity vanishes (straight-line propagation).
void write_trajectory_csv(std::ostream& os, const confinement::PhaseTrajectory& traj,
                          const MetaLines& meta);

/// Header `energy_ev,mismatch` over (energy, mismatch) pairs.
void write_mismatch_csv(std::ostream& os,
                        const std::vector<std::pair<double, double>>& sweep,
                        const MetaLines& meta);

/// One spatial sample of an electromagnetic field, SI.
struct FieldSample {
  double x = 0.0, y = 0.0, z = 0.0;     // m
  std::array<double, 3> e{0.0, 0.0, 0.0};  // V/m
  std::array<double, 3> b{0.0, 0.0, 0.0};  // T
};

/// Header `x_m,y_m,z_m,ex_v_per_m,ey_v_per_m,ez_v_per_m,bx_t,by_t,bz_t`.
void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples,
                     const MetaLines& meta);

/// Opens path for writing and hands the stream to fn; a failed open or a
/// stream left in a bad state raises input_error naming the path.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& fn);

}  // namespace wps::io
