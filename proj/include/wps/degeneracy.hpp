#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "wps/fieldkit/fields.hpp"

namespace wps::degeneracy {

using FourVector = std::array<double, 4>;

/// kappa^mu from the spinor bilinears at a point: (1, -<sigma^i>) for
/// positive helicity, (1, +<sigma^i>) for negative, with
/// <sigma^i> = psi† sigma^i psi / psi† psi. Both envelope constructors
/// yield exactly (1, 0, 0, -1). A vanishing spinor leaves the bilinear
/// ratio undefined and raises domain_error.
FourVector kappa_of(const fieldkit::SpinorField& spinor, double x, double y, double z, double t);

/// Real scalar s(x, y, z, t) with optional analytic partials ordered
/// (s_x, s_y, s_z, s_t); fd_step is the central-difference step used when
/// they are absent.
struct ScalarFunction4 {
  std::function<double(double, double, double, double)> evaluate;
  std::function<std::array<double, 4>(double, double, double, double)> partials;
  double fd_step = 1e-5;
};

/// (s_x, s_y, s_z, s_t), analytic or central-differenced.
std::array<double, 4> partials_of(const ScalarFunction4& s, double x, double y, double z,
                                  double t);

/// The shifted potential b_mu = a_mu + kappa_mu s. Along the spinor's own
/// kappa this leaves the spinor an exact solution; the residual tests
/// exercise that invariance. The jacobian is carried through when the base
/// potential has one.
fieldkit::FourPotential shift_potential(const fieldkit::FourPotential& pot,
                                        const ScalarFunction4& s, const FourVector& kappa);

/// Propagation direction as functions of time (polar theta, azimuth phi)
/// together with their time derivatives.
struct DirectionAngles {
  std::function<double(double)> theta;
  std::function<double(double)> phi;
  std::function<double(double)> dtheta_dt;
  std::function<double(double)> dphi_dt;
};

DirectionAngles constant_angles(double theta, double phi);

/// Invariance field family for an arbitrary propagation direction, in SI
/// (s in joules, q in coulombs, output V/m and tesla). Component formulas
/// transcribed as printed; their Maxwell identities are exercised in the
/// tests for constant angles.
fieldkit::EMField degenerate_fields_general(const ScalarFunction4& s, const DirectionAngles& angles,
                                            double q);

/// The same family restricted to propagation in the x-y plane
/// (theta = pi/2), in SI. Includes the longitudinal electric component
/// -(1/q) ds/dz that the general form reduces to, so the reduction is
/// exact for z-dependent s as well.
fieldkit::EMField degenerate_fields_planar(const ScalarFunction4& s,
                                           std::function<double(double)> phi,
                                           std::function<double(double)> dphi_dt, double q);

/// The family along +z in natural units (the geometry of the guided
/// spinors): E = -(1/q)(s_x, s_y, s_t + s_z), B = (1/q)(s_y, -s_x, 0).
/// Cross-validated against pushing the kappa-shift potential through the
/// E/B derivation.
fieldkit::EMField degenerate_fields_axial(const ScalarFunction4& s, double q);

/// Energies in eV; momentum is derived from E^2 = (pc)^2 + (mc^2)^2.
struct KinematicState {
  double total_energy_ev = 0.0;
  double mass_energy_ev = 0.0;
  double momentum_ev = 0.0;  // pc
};

/// Validates E > 0, E >= mc^2 >= 0 and derives pc; massless states get
/// pc = E exactly.
KinematicState make_state(double total_energy_ev, double mass_energy_ev);

/// (E + mc^2 - pc) / E: the relative violation of the lightlike relation
/// pc = E + mc^2 that exact degeneracy requires. Zero for massless
/// particles, approximately mc^2 / E at high energy.
double degeneracy_mismatch(const KinematicState& k);

/// Mismatch over a log-spaced energy sweep; returns (energy_ev, mismatch)
/// pairs.
std::vector<std::pair<double, double>> mismatch_sweep(double mass_energy_ev, double e_min_ev,
                                                      double e_max_ev, std::size_t points);

/// Deterministic smooth test function: a seeded sum of three Gaussian
/// bumps in (x, y, z, t) with analytic partials. Centers fall within
/// +/- extent, widths and amplitudes scale with extent and amplitude.
/// The generator is fixed across platforms (no library distributions).
ScalarFunction4 random_smooth_function(std::uint64_t seed, double amplitude, double extent);

}  // namespace wps::degeneracy
