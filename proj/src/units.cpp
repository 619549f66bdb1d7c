#include "wps/units.hpp"

#include <cmath>

#include "wps/constants.hpp"
#include "wps/errors.hpp"

namespace wps {
namespace {

// SI value of one natural unit of the given kind at reference length L0.
double si_unit_value(UnitKind kind, double length_scale) {
  using namespace constants;
  const double l0 = length_scale;
  switch (kind) {
    case UnitKind::length:
      return l0;
    case UnitKind::time:
      return l0 / c;
    case UnitKind::energy:
      return hbar * c / l0;
    case UnitKind::field:
      return hbar * c / (e * l0 * l0);
    case UnitKind::potential:
      return hbar * c / (e * l0);
  }
  throw input_error("convert: unknown unit kind");
}

double to_si_factor(UnitKind kind, const UnitSystem& sys) {
  if (sys.mode == UnitMode::si) return 1.0;
  if (!(sys.length_scale > 0.0) || !std::isfinite(sys.length_scale))
    throw input_error("convert: natural-unit length scale must be finite and positive");
  return si_unit_value(kind, sys.length_scale);
}

}  // namespace

double convert(double value, UnitKind kind, const UnitSystem& from, const UnitSystem& to) {
  return value * (to_si_factor(kind, from) / to_si_factor(kind, to));
}

}  // namespace wps
