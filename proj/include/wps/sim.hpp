#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "wps/spinor.hpp"

namespace wps::sim {

using wps::Helicity;

/// Geometry and stepping parameters of the parallel-channel switch. SI
/// units; the charge is in units of the elementary charge.
struct DeviceConfig {
  double device_width = 0.0;  // m, across the channel array
  double channel_r0 = 0.0;    // m, target confinement radius; channel pitch = 2 r0
  double gap_d = 0.0;         // m, capacitor plate separation
  double q = 1.0;             // carrier charge / e, nonzero
  // Conduction cutoff radius: a channel conducts while |1/curvature|
  // exceeds this. Zero selects the default 10 * channel_r0.
  double on_radius_threshold = 0.0;  // m
  // Fixed step of the synchronous loop. Zero lets run_schedule derive one
  // from the schedule (see default_time_step).
  double time_step = 0.0;  // s
  // Per-run cap on the channel count (memory guard); the full-device
  // figure of merit comes from the analytic design path instead.
  std::size_t max_channels = 4096;
};

/// Per-channel evolving state. Curvature 1/r is the state variable: it is
/// affine in time under a constant drive and stays regular where the
/// radius itself diverges.
struct DeviceState {
  DeviceConfig cfg;                      // normalized (threshold resolved)
  std::vector<double> curvature;         // 1/m, signed; 0 = straight line
  std::vector<std::uint8_t> conducting;  // derived: |curvature| < 1 / threshold
  std::vector<Helicity> helicity;        // defaults to positive everywhere

  std::size_t channel_count() const { return curvature.size(); }
};

/// Rectangular voltage pulse on one channel. The sign of delta_v is the
/// polarity; for a positive-helicity channel, positive delta_v winds the
/// orbit tighter (curvature grows toward +1/r0).
struct ControlPulse {
  std::size_t channel_index = 0;
  double delta_v = 0.0;   // V, signed
  double start = 0.0;     // s
  double duration = 0.0;  // s, > 0
};

enum class Transition { fall, rise };

/// One conduction-bit edge: the sample time where the new level first
/// appears.
struct Event {
  double t = 0.0;
  std::size_t channel = 0;
  Transition transition = Transition::fall;
};

/// Sampled conduction bits for every channel plus the edge log. Bits are
/// row-major: sample index times channel count, 1 = conducting.
struct BitstreamTrace {
  std::vector<double> times;  // s, strictly increasing, first entry 0
  std::size_t channels = 0;
  std::vector<std::uint8_t> bits;
  std::vector<Event> events;

  std::uint8_t bit(std::size_t sample, std::size_t channel) const {
    return bits[sample * channels + channel];
  }
  std::size_t samples() const { return times.size(); }
};

/// All channels straight and conducting; channel count is
/// floor(device_width / (2 channel_r0)). A device narrower than one
/// channel or wider than the per-run cap raises input_error.
DeviceState init_device(const DeviceConfig& cfg);

/// Conduction bits recomputed from the current curvature.
std::vector<std::uint8_t> read_outputs(const DeviceState& state);

/// Advances every channel by dt: curvature += sign * 2 q e |dV| / (hbar d)
/// for channels under an active pulse (sign = polarity times the channel's
/// helicity sign), unchanged otherwise; then rederives the conduction
/// bits. At most one active pulse per channel.
void step(DeviceState& state, const std::vector<ControlPulse>& active, double dt);

/// One hundredth of the shortest timescale in the schedule: each pulse
/// contributes its duration and (for nonzero voltage) its confinement
/// time; an empty schedule falls back to t_end / 100.
double default_time_step(const DeviceConfig& cfg, const std::vector<ControlPulse>& pulses,
                         double t_end);

/// Fixed-step synchronous run over [0, t_end]: validates the schedule
/// up front (bad indices, nonpositive durations, pulses past t_end are
/// input errors; overlapping pulses on one channel are schedule errors),
/// then samples bits at every step. A pulse is active on the steps whose
/// start time falls in [start, start + duration), so edge placement and
/// pulse-area bookkeeping are quantized to one step; schedules aligned to
/// the step grid reverse exactly. Channels are independent, so worker
/// threads split the channel range; traces are bit-identical for any
/// thread count. Runs needing more than 2^28 stored bits are refused.
BitstreamTrace run_schedule(const DeviceConfig& cfg, const std::vector<ControlPulse>& pulses,
                            double t_end, unsigned threads = 1);

/// Outcome of ambient-field sensing: whether one channel width confines
/// within the observation window, and how long confinement takes.
struct SenseResult {
  bool detected = false;
  double time_to_confine = std::numeric_limits<double>::infinity();  // s
};

/// Sensor mode: the ambient field plays the role of the drive, and a
/// channel reads 0 once it confines. Detected iff the confinement time
/// for cfg.channel_r0 is at most the window; a zero field never confines
/// (time stays infinite).
SenseResult sense_field(const DeviceConfig& cfg, double ambient_field, double window);

}  // namespace wps::sim
