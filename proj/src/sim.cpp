#include "wps/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "wps/confinement.hpp"
#include "wps/errors.hpp"
#include "wps/kernels/kernels.hpp"

namespace wps::sim {

namespace {

constexpr std::size_t kMaxTraceBits = std::size_t{1} << 28;

DeviceConfig normalized(const DeviceConfig& cfg) {
  DeviceConfig c = cfg;
  if (!(c.channel_r0 > 0.0) || !(c.gap_d > 0.0) || !(c.device_width > 0.0)) {
    throw input_error("device needs positive width, channel radius and gap");
  }
  if (c.q == 0.0 || !std::isfinite(c.q)) {
    throw input_error("carrier charge must be nonzero and finite");
  }
  if (c.on_radius_threshold == 0.0) {
    c.on_radius_threshold = 10.0 * c.channel_r0;
  }
  if (!(c.on_radius_threshold > 0.0)) {
    throw input_error("conduction threshold radius must be positive");
  }
  if (c.time_step < 0.0) {
    throw input_error("time step must be nonnegative (zero = derive from schedule)");
  }
  if (c.max_channels == 0) {
    throw input_error("channel cap must be at least 1");
  }
  return c;
}

double conduction_limit(const DeviceConfig& cfg) { return 1.0 / cfg.on_radius_threshold; }

/// Signed curvature rate of one pulse on one channel, 1/(m s).
double pulse_rate(const DeviceConfig& cfg, const ControlPulse& p, Helicity h) {
  if (p.delta_v == 0.0) {
    return 0.0;
  }
  const double magnitude = confinement::curvature_slope(cfg.q, std::abs(p.delta_v) / cfg.gap_d);
  const double polarity = p.delta_v > 0.0 ? 1.0 : -1.0;
  return helicity_sign(h) * polarity * magnitude;
}

}  // namespace

DeviceState init_device(const DeviceConfig& cfg) {
  DeviceState state;
  state.cfg = normalized(cfg);
  const double raw_count = std::floor(state.cfg.device_width / (2.0 * state.cfg.channel_r0));
  if (!(raw_count >= 1.0)) {
    throw input_error("device width " + std::to_string(cfg.device_width) +
                      " m holds no full channel of width " +
                      std::to_string(2.0 * cfg.channel_r0) + " m");
  }
  if (raw_count > static_cast<double>(state.cfg.max_channels)) {
    throw input_error("device would hold " + std::to_string(raw_count) +
                      " channels, above the per-run cap of " +
                      std::to_string(state.cfg.max_channels));
  }
  const auto count = static_cast<std::size_t>(raw_count);
  state.curvature.assign(count, 0.0);
  state.conducting.assign(count, 1);
  state.helicity.assign(count, Helicity::positive);
  return state;
}

std::vector<std::uint8_t> read_outputs(const DeviceState& state) {
  std::vector<std::uint8_t> bits(state.channel_count());
  kernels::active().threshold_bits(bits.data(), state.curvature.data(),
                                   conduction_limit(state.cfg), bits.size());
  return bits;
}

void step(DeviceState& state, const std::vector<ControlPulse>& active, double dt) {
  if (!(dt > 0.0)) {
    throw input_error("step size must be positive, got " + std::to_string(dt));
  }
  const std::size_t n = state.channel_count();
  std::vector<double> rates(n, 0.0);
  std::vector<std::uint8_t> touched(n, 0);
  for (const auto& p : active) {
    if (p.channel_index >= n) {
      throw input_error("pulse addresses channel " + std::to_string(p.channel_index) +
                        " of a " + std::to_string(n) + "-channel device");
    }
    if (touched[p.channel_index]) {
      throw schedule_error("two pulses active at once on channel " +
                           std::to_string(p.channel_index));
    }
    touched[p.channel_index] = 1;
    rates[p.channel_index] = pulse_rate(state.cfg, p, state.helicity[p.channel_index]);
  }
  const auto& k = kernels::active();
  k.curvature_step(state.curvature.data(), rates.data(), dt, n);
  state.conducting.resize(n);
  k.threshold_bits(state.conducting.data(), state.curvature.data(), conduction_limit(state.cfg),
                   n);
}

double default_time_step(const DeviceConfig& cfg, const std::vector<ControlPulse>& pulses,
                         double t_end) {
  if (!(t_end > 0.0)) {
    throw input_error("schedule end time must be positive, got " + std::to_string(t_end));
  }
  const DeviceConfig c = normalized(cfg);
  if (pulses.empty()) {
    return t_end / 100.0;
  }
  double shortest = t_end;
  for (const auto& p : pulses) {
    if (!(p.duration > 0.0)) {
      throw input_error("pulse duration must be positive, got " + std::to_string(p.duration));
    }
    shortest = std::min(shortest, p.duration);
    if (p.delta_v != 0.0) {
      const auto params =
          confinement::make_params(c.channel_r0, c.q, std::abs(p.delta_v) / c.gap_d, +1);
      shortest = std::min(shortest, confinement::confinement_time(params));
    }
  }
  return shortest / 100.0;
}

BitstreamTrace run_schedule(const DeviceConfig& cfg, const std::vector<ControlPulse>& pulses,
                            double t_end, unsigned threads) {
  if (threads == 0) {
    throw input_error("thread count must be at least 1");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw input_error("schedule end time must be positive and finite");
  }
  DeviceState state = init_device(cfg);
  const std::size_t count = state.channel_count();

  // Fail-fast schedule validation before any stepping.
  struct Window {
    double start;
    double end;
    double rate;
  };
  std::vector<std::vector<Window>> per_channel(count);
  for (const auto& p : pulses) {
    if (p.channel_index >= count) {
      throw input_error("pulse addresses channel " + std::to_string(p.channel_index) +
                        " of a " + std::to_string(count) + "-channel device");
    }
    if (!(p.duration > 0.0)) {
      throw input_error("pulse duration must be positive, got " + std::to_string(p.duration));
    }
    if (!(p.start >= 0.0)) {
      throw input_error("pulse start must be nonnegative, got " + std::to_string(p.start));
    }
    if (!std::isfinite(p.delta_v)) {
      throw input_error("pulse voltage must be finite");
    }
    const double end = p.start + p.duration;
    if (end > t_end) {
      throw input_error("pulse on channel " + std::to_string(p.channel_index) + " runs to " +
                        std::to_string(end) + " s, past the schedule end " +
                        std::to_string(t_end) + " s");
    }
    per_channel[p.channel_index].push_back(
        {p.start, end, pulse_rate(state.cfg, p, state.helicity[p.channel_index])});
  }
  for (std::size_t c = 0; c < count; ++c) {
    auto& list = per_channel[c];
    std::sort(list.begin(), list.end(),
              [](const Window& a, const Window& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].start < list[i - 1].end) {
        throw schedule_error("pulses overlap on channel " + std::to_string(c) + ": one runs to " +
                             std::to_string(list[i - 1].end) + " s, the next starts at " +
                             std::to_string(list[i].start) + " s");
      }
    }
  }

  const double h =
      state.cfg.time_step > 0.0 ? state.cfg.time_step : default_time_step(cfg, pulses, t_end);
  const double raw_steps = std::floor(t_end / h + 1e-9);
  if (!(raw_steps >= 1.0)) {
    throw input_error("time step " + std::to_string(h) + " s exceeds the schedule end " +
                      std::to_string(t_end) + " s");
  }
  if (raw_steps > 1e12) {
    throw input_error("schedule needs " + std::to_string(raw_steps) + " steps; refusing");
  }
  const auto steps = static_cast<std::size_t>(raw_steps);
  const std::size_t samples = steps + 1;
  if (samples > kMaxTraceBits / count) {
    throw input_error("trace would hold " + std::to_string(samples) + " x " +
                      std::to_string(count) + " bits, above the 2^28 cap; raise the time step");
  }

  BitstreamTrace trace;
  trace.channels = count;
  trace.times.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    trace.times[k] = static_cast<double>(k) * h;
  }
  trace.bits.assign(samples * count, 0);

  const double limit = conduction_limit(state.cfg);
  const auto& kern = kernels::active();
  kern.threshold_bits(trace.bits.data(), state.curvature.data(), limit, count);

  // Channels are independent, so each worker owns a contiguous channel
  // range for the whole time loop; results cannot depend on the split.
  const auto worker = [&](std::size_t c0, std::size_t c1) {
    const std::size_t width = c1 - c0;
    std::vector<double> rates(width, 0.0);
    std::vector<std::size_t> next(width, 0);
    double* curv = state.curvature.data() + c0;
    for (std::size_t k = 0; k < steps; ++k) {
      const double t = trace.times[k];
      for (std::size_t j = 0; j < width; ++j) {
        const auto& list = per_channel[c0 + j];
        std::size_t& idx = next[j];
        while (idx < list.size() && t >= list[idx].end) {
          ++idx;
        }
        rates[j] = (idx < list.size() && t >= list[idx].start) ? list[idx].rate : 0.0;
      }
      kern.curvature_step(curv, rates.data(), h, width);
      kern.threshold_bits(trace.bits.data() + (k + 1) * count + c0, curv, limit, width);
    }
  };

  const std::size_t nthreads = std::min<std::size_t>(threads, count);
  if (nthreads <= 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = count / nthreads;
    const std::size_t extra = count % nthreads;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < nthreads; ++i) {
      const std::size_t end = begin + chunk + (i < extra ? 1 : 0);
      pool.emplace_back(worker, begin, end);
      begin = end;
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  // Single index-ordered pass keeps the event log deterministic no matter
  // how the stepping work was split.
  for (std::size_t k = 1; k < samples; ++k) {
    const std::uint8_t* prev = trace.bits.data() + (k - 1) * count;
    const std::uint8_t* curr = trace.bits.data() + k * count;
    for (std::size_t c = 0; c < count; ++c) {
      if (curr[c] != prev[c]) {
        trace.events.push_back(
            {trace.times[k], c, curr[c] ? Transition::rise : Transition::fall});
      }
    }
  }
  return trace;
}

SenseResult sense_field(const DeviceConfig& cfg, double ambient_field, double window) {
  const DeviceConfig c = normalized(cfg);
  if (!(ambient_field >= 0.0)) {
    throw input_error("ambient field must be nonnegative, got " + std::to_string(ambient_field));
  }
  if (!(window > 0.0)) {
    throw input_error("observation window must be positive, got " + std::to_string(window));
  }
  SenseResult result;
  if (ambient_field == 0.0) {
    return result;  // straight lines forever: nothing to detect
  }
  const auto params = confinement::make_params(c.channel_r0, c.q, ambient_field, +1);
  result.time_to_confine = confinement::confinement_time(params);
  result.detected = result.time_to_confine <= window;
  return result;
}

}  // namespace wps::sim
