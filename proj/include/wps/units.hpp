#pragma once

namespace wps {

enum class UnitKind { length, time, energy, field, potential };
enum class UnitMode { si, natural };

/// Natural units put hbar = c = 1 and measure charge in multiples of the
/// elementary charge. A reference length (in metres) anchors the scale:
/// lengths are measured in units of length_scale, times in length_scale/c,
/// energies in hbar*c/length_scale, and the field/potential scales follow
/// from requiring q*V to be an energy.
struct UnitSystem {
  UnitMode mode = UnitMode::si;
  double length_scale = 1.0;  // m, meaningful in natural mode only
};

inline UnitSystem si_units() { return {UnitMode::si, 1.0}; }
inline UnitSystem natural_units(double length_scale_m) {
  return {UnitMode::natural, length_scale_m};
}

/// Re-expresses a physical quantity in another unit system. Pure; the
/// round trip to_natural -> to_si is the identity to 1e-12 relative.
double convert(double value, UnitKind kind, const UnitSystem& from, const UnitSystem& to);

}  // namespace wps
