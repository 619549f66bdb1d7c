#include <cmath>
#include <string>

#include "wps/errors.hpp"
#include "wps/fieldkit/fields.hpp"

namespace wps::fieldkit {

std::array<double, 4> FourPotential::evaluate(double x, double y, double z, double t) const {
  return {components[0](x, y, z, t), components[1](x, y, z, t), components[2](x, y, z, t),
          components[3](x, y, z, t)};
}

double FourPotential::electric_potential(double q, double x, double y, double z, double t) const {
  if (q == 0.0) {
    throw input_error("charge must be nonzero for potential accessors");
  }
  return components[0](x, y, z, t) / q;
}

std::array<double, 3> FourPotential::vector_potential(double q, double x, double y, double z,
                                                      double t) const {
  if (q == 0.0) {
    throw input_error("charge must be nonzero for potential accessors");
  }
  return {-components[1](x, y, z, t) / q, -components[2](x, y, z, t) / q,
          -components[3](x, y, z, t) / q};
}

namespace {

void check_domain(const Rect& r, double x, double y) {
  if (!r.contains(x, y)) {
    throw domain_error("potential evaluated outside the profile domain at (" +
                       std::to_string(x) + ", " + std::to_string(y) + ")");
  }
}

}  // namespace

FourPotential guiding_potential(const ScalarProfile& profile, Helicity helicity) {
  if (!profile.evaluate) {
    throw input_error("guiding potential needs a profile with an evaluate callable");
  }
  const double eta = helicity_sign(helicity);
  const Rect domain = profile.positivity_domain;

  FourPotential pot;
  pot.components[0] = [](double, double, double, double) { return 0.0; };
  pot.components[1] = [profile, domain, eta](double x, double y, double, double) {
    check_domain(domain, x, y);
    return eta * profile_gradient(profile, x, y)[1] / profile.evaluate(x, y);
  };
  pot.components[2] = [profile, domain, eta](double x, double y, double, double) {
    check_domain(domain, x, y);
    return -eta * profile_gradient(profile, x, y)[0] / profile.evaluate(x, y);
  };
  pot.components[3] = [](double, double, double, double) { return 0.0; };

  if (profile.gradient && profile.hessian_trace_parts) {
    // d(f_y/f)/dy = (f_yy f - f_y^2)/f^2 and d(f_x/f)/dx likewise. The
    // potential is static and z-independent, and the transverse cross
    // entries d(f_y/f)/dx, d(f_x/f)/dy vanish identically for separable
    // profiles f = g(x) h(y) — which both built-in constructors produce —
    // so the remaining two entries are the whole jacobian.
    pot.jacobian = [profile, domain,
                    eta](double x, double y, double, double) -> std::array<std::array<double, 4>, 4> {
      check_domain(domain, x, y);
      const double f = profile.evaluate(x, y);
      const auto grad = profile.gradient(x, y);
      const auto hess = profile.hessian_trace_parts(x, y);
      std::array<std::array<double, 4>, 4> jac{};
      // Columns ordered (x, y, z, t).
      jac[1][1] = eta * (hess[1] * f - grad[1] * grad[1]) / (f * f);
      jac[2][0] = -eta * (hess[0] * f - grad[0] * grad[0]) / (f * f);
      return jac;
    };
  }
  return pot;
}

FourPotential zero_potential() {
  FourPotential pot;
  for (auto& c : pot.components) {
    c = [](double, double, double, double) { return 0.0; };
  }
  pot.jacobian = [](double, double, double, double) -> std::array<std::array<double, 4>, 4> {
    return {};
  };
  return pot;
}

}  // namespace wps::fieldkit
