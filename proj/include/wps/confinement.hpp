#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wps/spinor.hpp"

namespace wps::confinement {

using wps::Helicity;

/// Orientation of the applied electric field relative to the orbital
/// angular velocity of the carriers.
enum class FieldAlignment { parallel, antiparallel };

/// +1 when the field tightens the orbit (radius shrinks), -1 when it
/// unwinds it (radius grows and diverges). Positive helicity with an
/// antiparallel field tightens; flipping either input flips the sign.
int orientation_sign(Helicity h, FieldAlignment a);

/// Parallel-plate drive: field magnitude is |delta_v| / gap_d.
struct Capacitor {
  double delta_v;  // plate voltage, V
  double gap_d;    // plate separation, m
};

/// A charged massless carrier on a circular orbit of radius r0 inside a
/// uniform transverse field. SI throughout; charge is in units of the
/// elementary charge and enters all formulas by magnitude (its sign is
/// part of orientation_sign).
struct ConfinementParams {
  double r0 = 0.0;     // initial orbit radius, m
  double q = 1.0;      // charge / e, nonzero
  double field = 0.0;  // field magnitude, V/m (>= 0; 0 means no drive)
  int sign = +1;       // see orientation_sign()
  std::optional<Capacitor> cap;  // set when the drive is a capacitor
};

ConfinementParams make_params(double r0, double q, double field, int sign);
ConfinementParams make_params(double r0, double q, const Capacitor& cap, int sign);

/// d(1/r)/dt magnitude: 2 |q| e |E| / hbar. Independent of the radius,
/// which is what makes the drive a clean affine ramp in curvature.
double curvature_slope(double q, double field);

/// Characteristic switching time hbar / (2 |q| e r0 |E|): the radius
/// halves (sign +1) or diverges (sign -1) after exactly this long.
/// A zero field never switches; that raises unphysical_error.
double confinement_time(const ConfinementParams& p);

/// Closed-form signed radius r0 / (1 + sign * t / confinement_time) for
/// t >= 0. On the unwinding branch the value is negative past the
/// divergence; within 1e-6 (relative) of the divergence time itself a
/// singularity_error names that time instead.
double radius_at(const ConfinementParams& p, double t);

/// Time at which |radius| first reaches `radius`. The target must be on
/// the reachable side: below r0 for sign +1, above for sign -1.
double crossing_time(const ConfinementParams& p, double radius);

/// Relative deviation of |q| e r0 (|delta_v| / gap_d) dt from hbar / 2,
/// i.e. (action / (hbar/2)) - 1: zero when drive, geometry and switching
/// time are mutually consistent. Requires a capacitor drive.
double capacitor_relation_check(const ConfinementParams& p, double dt);

/// Channel pitch 2 r0 expressed through the drive: hbar / (q e |E| dt).
double channel_width(double field_mag, double dt, double q = 1.0);

/// Smallest field magnitude that switches a channel of the given width
/// within t_obs seconds: hbar / (q e w_ch t_obs). Exact inverse of
/// channel_width in the field argument.
double min_detectable_field(double w_ch, double t_obs, double q = 1.0);

/// Orbit phase samples; radius is the signed c / omega (orientation in the
/// sign), NaN where omega vanishes.
struct PhaseTrajectory {
  std::vector<double> times;   // s
  std::vector<double> phi;     // rad
  std::vector<double> omega;   // rad/s
  std::vector<double> radius;  // m
};

/// Integrates phi'' = -(2 |q| e c / hbar) |E| from phi(0) = 0,
/// phi'(0) = omega0 with fixed-step classical fourth-order Runge-Kutta.
/// The forcing is constant, so the result matches the closed-form radius
/// to rounding error; the overlap is tested, not assumed.
PhaseTrajectory integrate_phase(const ConfinementParams& p, double omega0, double t_end,
                                double step);

/// Headline figures for a device of the given width: per-channel switching
/// time, channel pitch and count, aggregate bit rate, and the weakest
/// field the same geometry resolves within sense_window seconds.
struct DesignPoint {
  double response_time;      // s
  double channel_width;      // m
  std::size_t channel_count;
  double bitrate;            // bit/s
  double sensor_min_field;   // V/m
};

DesignPoint design_device(double device_width, const ConfinementParams& p,
                          double sense_window = 1e-3);

}  // namespace wps::confinement
