#include "wps/confinement.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wps/constants.hpp"
#include "wps/errors.hpp"

namespace wps::confinement {

namespace {

constexpr double kPoleGuard = 1e-6;  // relative half-width of the divergence window

void validate(const ConfinementParams& p) {
  if (!(p.r0 > 0.0)) {
    throw input_error("confinement radius must be positive, got " + std::to_string(p.r0));
  }
  if (p.q == 0.0 || !std::isfinite(p.q)) {
    throw input_error("charge must be nonzero and finite, got " + std::to_string(p.q));
  }
  if (!(p.field >= 0.0)) {
    throw input_error("field magnitude must be nonnegative, got " + std::to_string(p.field));
  }
  if (p.sign != 1 && p.sign != -1) {
    throw input_error("orientation sign must be +1 or -1, got " + std::to_string(p.sign));
  }
}

double capacitor_field(const Capacitor& cap) {
  if (!(cap.gap_d > 0.0)) {
    throw input_error("capacitor gap must be positive, got " + std::to_string(cap.gap_d));
  }
  if (!std::isfinite(cap.delta_v)) {
    throw input_error("capacitor voltage must be finite");
  }
  return std::abs(cap.delta_v) / cap.gap_d;
}

}  // namespace

int orientation_sign(Helicity h, FieldAlignment a) {
  const bool tightens = (h == Helicity::positive) == (a == FieldAlignment::antiparallel);
  return tightens ? +1 : -1;
}

ConfinementParams make_params(double r0, double q, double field, int sign) {
  ConfinementParams p{r0, q, field, sign, std::nullopt};
  validate(p);
  return p;
}

ConfinementParams make_params(double r0, double q, const Capacitor& cap, int sign) {
  ConfinementParams p{r0, q, capacitor_field(cap), sign, cap};
  validate(p);
  return p;
}

double curvature_slope(double q, double field) {
  if (q == 0.0 || !(field >= 0.0)) {
    throw input_error("curvature slope needs nonzero charge and nonnegative field");
  }
  return 2.0 * std::abs(q) * constants::e * field / constants::hbar;
}

double confinement_time(const ConfinementParams& p) {
  validate(p);
  if (p.field == 0.0) {
    throw unphysical_error("zero field never confines (infinite switching time)");
  }
  return constants::hbar / (2.0 * std::abs(p.q) * constants::e * p.r0 * p.field);
}

double radius_at(const ConfinementParams& p, double t) {
  validate(p);
  if (!(t >= 0.0)) {
    throw input_error("time must be nonnegative, got " + std::to_string(t));
  }
  const double rate = curvature_slope(p.q, p.field) * p.r0;  // 1 / confinement_time
  if (p.sign == -1 && rate > 0.0) {
    const double pole = 1.0 / rate;
    if (std::abs(t - pole) < kPoleGuard * pole) {
      throw singularity_error("radius diverges at t = " + std::to_string(pole) +
                              " s; requested t = " + std::to_string(t) + " s");
    }
  }
  return p.r0 / (1.0 + p.sign * rate * t);
}

double crossing_time(const ConfinementParams& p, double radius) {
  const double dt = confinement_time(p);
  if (!(radius > 0.0)) {
    throw input_error("crossing radius must be positive");
  }
  const double t = p.sign * (p.r0 / radius - 1.0) * dt;
  if (t < 0.0) {
    throw input_error("radius " + std::to_string(radius) +
                      " m is not reached by this trajectory");
  }
  return t;
}

double capacitor_relation_check(const ConfinementParams& p, double dt) {
  validate(p);
  if (!p.cap) {
    throw input_error("capacitor relation check needs a capacitor drive");
  }
  if (!(dt > 0.0)) {
    throw input_error("switching time must be positive, got " + std::to_string(dt));
  }
  const double field = capacitor_field(*p.cap);
  const double action = std::abs(p.q) * constants::e * p.r0 * field * dt;
  return action / (0.5 * constants::hbar) - 1.0;
}

double channel_width(double field_mag, double dt, double q) {
  if (field_mag < 0.0 || dt < 0.0 || q == 0.0) {
    throw input_error("channel width needs nonnegative field and time and nonzero charge");
  }
  if (field_mag == 0.0 || dt == 0.0) {
    throw unphysical_error("channel width diverges for zero field or zero switching time");
  }
  return constants::hbar / (std::abs(q) * constants::e * field_mag * dt);
}

double min_detectable_field(double w_ch, double t_obs, double q) {
  if (!(w_ch > 0.0) || !(t_obs > 0.0) || q == 0.0) {
    throw input_error("minimum field needs positive width and window and nonzero charge");
  }
  return constants::hbar / (std::abs(q) * constants::e * w_ch * t_obs);
}

PhaseTrajectory integrate_phase(const ConfinementParams& p, double omega0, double t_end,
                                double step) {
  validate(p);
  if (!(step > 0.0)) {
    throw input_error("integration step must be positive, got " + std::to_string(step));
  }
  // The tiny offset absorbs rounding when t_end is an exact multiple of step.
  const double raw_steps = std::floor(t_end / step + 1e-9);
  if (!(raw_steps >= 1.0)) {
    throw input_error("integration horizon shorter than one step");
  }
  const auto steps = static_cast<std::size_t>(raw_steps);

  const double c = constants::c;
  const double accel = -curvature_slope(p.q, p.field) * c;  // phi'' as printed, constant
  const double h = step;

  PhaseTrajectory out;
  out.times.reserve(steps + 1);
  out.phi.reserve(steps + 1);
  out.omega.reserve(steps + 1);
  out.radius.reserve(steps + 1);

  double phi = 0.0;
  double omega = omega0;

  const auto record = [&](double t) {
    out.times.push_back(t);
    out.phi.push_back(phi);
    out.omega.push_back(omega);
    out.radius.push_back(omega == 0.0 ? std::numeric_limits<double>::quiet_NaN() : c / omega);
  };

  record(0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    // Classical fourth-order Runge-Kutta for (phi' = omega, omega' = accel);
    // with constant forcing the slope stages collapse to the three values below.
    const double k1 = omega;
    const double k23 = omega + 0.5 * h * accel;
    const double k4 = omega + h * accel;
    phi += h / 6.0 * (k1 + 4.0 * k23 + k4);
    omega += h * accel;
    record(static_cast<double>(i + 1) * h);
  }
  return out;
}

DesignPoint design_device(double device_width, const ConfinementParams& p, double sense_window) {
  const double response = confinement_time(p);
  if (!(device_width > 0.0)) {
    throw input_error("device width must be positive, got " + std::to_string(device_width));
  }
  if (!(sense_window > 0.0)) {
    throw input_error("sensing window must be positive, got " + std::to_string(sense_window));
  }

  DesignPoint d{};
  d.response_time = response;
  d.channel_width = 2.0 * p.r0;
  const double count = std::floor(device_width / d.channel_width);
  if (!(count >= 1.0)) {
    throw input_error("device width " + std::to_string(device_width) +
                      " m does not fit a single channel of width " +
                      std::to_string(d.channel_width) + " m");
  }
  d.channel_count = static_cast<std::size_t>(count);
  d.bitrate = count / d.response_time;
  d.sensor_min_field = min_detectable_field(d.channel_width, sense_window, p.q);
  return d;
}

}  // namespace wps::confinement
