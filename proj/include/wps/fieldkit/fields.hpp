#pragma once

#include <array>
#include <functional>

#include "wps/fieldkit/profile.hpp"
#include "wps/grid.hpp"
#include "wps/spinor.hpp"

// Natural units (hbar = c = 1) throughout this module; lengths and inverse
// energies are interchangeable. All field callables take (x, y, z, t).
namespace wps::fieldkit {

/// Envelope-carried plane wave psi = f(x,y) chi exp[i E0 (z - t)], with
/// chi = (1,0) for positive helicity and (0,1) for negative.
struct SpinorField {
  ScalarProfile profile;
  double energy_e0 = 1.0;
  Helicity helicity = Helicity::positive;

  Spinor2 evaluate(double x, double y, double z, double t) const;
  int eta() const { return helicity_sign(helicity); }
};

SpinorField positive_spinor(ScalarProfile profile, double e0);
SpinorField negative_spinor(ScalarProfile profile, double e0);

/// 4-potential (a0, a1, a2, a3) in the wave-operator convention; the
/// physical potentials are U = a0/q and A = -(1/q)(a1, a2, a3). The
/// optional jacobian returns d a_mu / d x_nu with columns nu ordered
/// (x, y, z, t) to match the callable arguments.
struct FourPotential {
  std::array<std::function<double(double, double, double, double)>, 4> components;
  std::function<std::array<std::array<double, 4>, 4>(double, double, double, double)> jacobian;

  std::array<double, 4> evaluate(double x, double y, double z, double t) const;
  double electric_potential(double q, double x, double y, double z, double t) const;
  std::array<double, 3> vector_potential(double q, double x, double y, double z, double t) const;
};

/// The potential (0, f_y/f, -f_x/f, 0) under which the positive-helicity
/// envelope spinor is an exact solution; negated for negative helicity.
/// Components raise domain_error outside the profile's positivity domain.
/// The jacobian is attached when the profile carries analytic derivatives.
FourPotential guiding_potential(const ScalarProfile& profile, Helicity helicity);

/// Zero potential (handy baseline for plane waves).
FourPotential zero_potential();

struct EMField {
  std::function<std::array<double, 3>(double, double, double, double)> e;
  std::function<std::array<double, 3>(double, double, double, double)> b;
};

/// E = -grad U - dA/dt, B = curl A, from the potential's U/A accessors.
/// Derivatives are analytic when the potential carries a jacobian, else
/// central differences with the grid's per-axis spacings (the z spacing
/// doubles as the time step; z and t share units here).
EMField em_from_potential(const FourPotential& pot, double q, const Grid3& grid);

/// Closed-form field of the guiding potential: E = 0 and
/// B_z = -(eta/q)(1/f^2)[f_x^2 + f_y^2 - f (f_xx + f_yy)].
EMField guiding_bfield(const ScalarProfile& profile, double q, Helicity helicity);

/// Same field, fully closed-form for the super-Gaussian family:
/// B_z = -(2/q)[p_x(2p_x-1)/sigma_x^2 ((x-x0)^2/sigma_x^2)^{p_x-1} + y-term]
/// (positive helicity; negated otherwise).
EMField supergaussian_bfield(const SuperGaussianParams& params, double q,
                             Helicity helicity = Helicity::positive);

}  // namespace wps::fieldkit
