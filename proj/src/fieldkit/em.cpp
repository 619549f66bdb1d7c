#include <cmath>
#include <string>

#include "wps/errors.hpp"
#include "wps/fieldkit/fields.hpp"
#include "wps/stencil.hpp"

namespace wps::fieldkit {

namespace {

// d a_mu / d x_nu at a point, columns nu ordered (x, y, z, t); numeric
// fallback uses 2nd-order central differences with the given steps.
std::array<std::array<double, 4>, 4> potential_jacobian(const FourPotential& pot, double x,
                                                        double y, double z, double t,
                                                        const std::array<double, 4>& steps) {
  if (pot.jacobian) {
    return pot.jacobian(x, y, z, t);
  }
  std::array<std::array<double, 4>, 4> jac{};
  for (int mu = 0; mu < 4; ++mu) {
    const auto& a = pot.components[static_cast<std::size_t>(mu)];
    const auto sample = [&](double px, double py, double pz, double pt) {
      const double v = a(px, py, pz, pt);
      if (!std::isfinite(v)) {
        throw numeric_error("non-finite potential component " + std::to_string(mu) + " at (" +
                            std::to_string(px) + ", " + std::to_string(py) + ", " +
                            std::to_string(pz) + ", " + std::to_string(pt) + ")");
      }
      return v;
    };
    const auto m = static_cast<std::size_t>(mu);
    jac[m][0] = (sample(x + steps[0], y, z, t) - sample(x - steps[0], y, z, t)) / (2.0 * steps[0]);
    jac[m][1] = (sample(x, y + steps[1], z, t) - sample(x, y - steps[1], z, t)) / (2.0 * steps[1]);
    jac[m][2] = (sample(x, y, z + steps[2], t) - sample(x, y, z - steps[2], t)) / (2.0 * steps[2]);
    jac[m][3] = (sample(x, y, z, t + steps[3]) - sample(x, y, z, t - steps[3])) / (2.0 * steps[3]);
  }
  return jac;
}

}  // namespace

EMField em_from_potential(const FourPotential& pot, double q, const Grid3& grid) {
  if (q == 0.0) {
    throw input_error("charge must be nonzero to derive fields from a potential");
  }
  // z and t share units in this module; reuse the z spacing as the time step.
  const std::array<double, 4> steps{grid.spacing[0], grid.spacing[1], grid.spacing[2],
                                    grid.spacing[2]};

  EMField em;
  // E = -grad(a0/q) - d/dt[-(1/q) a_vec] = (1/q)(d a_i/dt - d a0/dx_i).
  em.e = [pot, q, steps](double x, double y, double z, double t) -> std::array<double, 3> {
    const auto jac = potential_jacobian(pot, x, y, z, t, steps);
    return {(jac[1][3] - jac[0][0]) / q, (jac[2][3] - jac[0][1]) / q, (jac[3][3] - jac[0][2]) / q};
  };
  // B = curl A with A = -(1/q)(a1, a2, a3).
  em.b = [pot, q, steps](double x, double y, double z, double t) -> std::array<double, 3> {
    const auto jac = potential_jacobian(pot, x, y, z, t, steps);
    return {-(jac[3][1] - jac[2][2]) / q, -(jac[1][2] - jac[3][0]) / q,
            -(jac[2][0] - jac[1][1]) / q};
  };
  return em;
}

EMField guiding_bfield(const ScalarProfile& profile, double q, Helicity helicity) {
  if (q == 0.0) {
    throw input_error("charge must be nonzero for the guiding field");
  }
  if (!profile.evaluate) {
    throw input_error("guiding field needs a profile with an evaluate callable");
  }
  const double eta = helicity_sign(helicity);
  const Rect domain = profile.positivity_domain;

  EMField em;
  em.e = [](double, double, double, double) -> std::array<double, 3> { return {0.0, 0.0, 0.0}; };
  em.b = [profile, domain, q, eta](double x, double y, double, double) -> std::array<double, 3> {
    if (!domain.contains(x, y)) {
      throw domain_error("guiding field evaluated outside the profile domain at (" +
                         std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    const double f = profile.evaluate(x, y);
    const auto grad = profile_gradient(profile, x, y);
    const auto hess = profile_hessian_parts(profile, x, y);
    const double bz = -eta / q *
                      (grad[0] * grad[0] + grad[1] * grad[1] - f * (hess[0] + hess[1])) / (f * f);
    return {0.0, 0.0, bz};
  };
  return em;
}

EMField supergaussian_bfield(const SuperGaussianParams& params, double q, Helicity helicity) {
  if (q == 0.0) {
    throw input_error("charge must be nonzero for the guiding field");
  }
  // Parameter validation shared with the profile constructor.
  supergaussian(params);
  const double eta = helicity_sign(helicity);
  const SuperGaussianParams p = params;

  EMField em;
  em.e = [](double, double, double, double) -> std::array<double, 3> { return {0.0, 0.0, 0.0}; };
  em.b = [p, q, eta](double x, double y, double, double) -> std::array<double, 3> {
    const auto term = [](double u, double sigma, double pw) {
      const double s2 = sigma * sigma;
      if (pw < 1.0 && u == 0.0) {
        throw domain_error("super-Gaussian field with exponent below 1 is singular on the "
                           "center lines");
      }
      return pw * (2.0 * pw - 1.0) / s2 * std::pow(u * u / s2, pw - 1.0);
    };
    const double bz = -2.0 * eta / q *
                      (term(x - p.x0, p.sigma_x, p.p_x) + term(y - p.y0, p.sigma_y, p.p_y));
    return {0.0, 0.0, bz};
  };
  return em;
}

}  // namespace wps::fieldkit
