#include <cmath>
#include <utility>

#include "wps/errors.hpp"
#include "wps/fieldkit/fields.hpp"

namespace wps::fieldkit {

Spinor2 SpinorField::evaluate(double x, double y, double z, double t) const {
  const double f = profile.evaluate(x, y);
  const double phase = energy_e0 * (z - t);
  const cdouble carrier = f * cdouble{std::cos(phase), std::sin(phase)};
  if (helicity == Helicity::positive) {
    return {carrier, cdouble{0.0, 0.0}};
  }
  return {cdouble{0.0, 0.0}, carrier};
}

namespace {

SpinorField make_spinor(ScalarProfile profile, double e0, Helicity h) {
  if (!(e0 > 0.0)) {
    throw input_error("spinor carrier energy must be positive");
  }
  if (!profile.evaluate) {
    throw input_error("spinor profile has no evaluate callable");
  }
  SpinorField s;
  s.profile = std::move(profile);
  s.energy_e0 = e0;
  s.helicity = h;
  return s;
}

}  // namespace

SpinorField positive_spinor(ScalarProfile profile, double e0) {
  return make_spinor(std::move(profile), e0, Helicity::positive);
}

SpinorField negative_spinor(ScalarProfile profile, double e0) {
  return make_spinor(std::move(profile), e0, Helicity::negative);
}

}  // namespace wps::fieldkit
