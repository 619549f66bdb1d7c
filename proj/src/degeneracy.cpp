#include "wps/degeneracy.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wps/constants.hpp"
#include "wps/errors.hpp"

namespace wps::degeneracy {

FourVector kappa_of(const fieldkit::SpinorField& spinor, double x, double y, double z, double t) {
  const Spinor2 psi = spinor.evaluate(x, y, z, t);
  const double n = psi.norm2();
  if (!(n > 0.0)) {
    throw domain_error("spinor vanishes at (" + std::to_string(x) + ", " + std::to_string(y) +
                       "); bilinear direction undefined");
  }
  const auto& p = pauli();
  const double s1 = std::real(inner(psi, apply(p.sigma1, psi))) / n;
  const double s2 = std::real(inner(psi, apply(p.sigma2, psi))) / n;
  const double s3 = std::real(inner(psi, apply(p.sigma3, psi))) / n;
  const double sign = -spinor.eta();  // -<sigma> for positive helicity, + for negative
  return {1.0, sign * s1, sign * s2, sign * s3};
}

std::array<double, 4> partials_of(const ScalarFunction4& s, double x, double y, double z,
                                  double t) {
  if (!s.evaluate) {
    throw input_error("scalar function has no evaluate callable");
  }
  if (s.partials) {
    return s.partials(x, y, z, t);
  }
  const double h = s.fd_step;
  if (!(h > 0.0)) {
    throw input_error("finite-difference step must be positive");
  }
  const auto& f = s.evaluate;
  return {(f(x + h, y, z, t) - f(x - h, y, z, t)) / (2.0 * h),
          (f(x, y + h, z, t) - f(x, y - h, z, t)) / (2.0 * h),
          (f(x, y, z + h, t) - f(x, y, z - h, t)) / (2.0 * h),
          (f(x, y, z, t + h) - f(x, y, z, t - h)) / (2.0 * h)};
}

fieldkit::FourPotential shift_potential(const fieldkit::FourPotential& pot,
                                        const ScalarFunction4& s, const FourVector& kappa) {
  if (!s.evaluate) {
    throw input_error("scalar function has no evaluate callable");
  }
  fieldkit::FourPotential out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const auto base = pot.components[mu];
    const double k = kappa[mu];
    const auto sval = s.evaluate;
    out.components[mu] = [base, k, sval](double x, double y, double z, double t) {
      return base(x, y, z, t) + k * sval(x, y, z, t);
    };
  }
  if (pot.jacobian) {
    const auto base_jac = pot.jacobian;
    out.jacobian = [base_jac, s, kappa](double x, double y, double z,
                                        double t) -> std::array<std::array<double, 4>, 4> {
      auto jac = base_jac(x, y, z, t);
      const auto ds = partials_of(s, x, y, z, t);
      for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
          jac[mu][nu] += kappa[mu] * ds[nu];
        }
      }
      return jac;
    };
  }
  return out;
}

DirectionAngles constant_angles(double theta, double phi) {
  return {[theta](double) { return theta; }, [phi](double) { return phi; },
          [](double) { return 0.0; }, [](double) { return 0.0; }};
}

namespace {

void require_charge(double q) {
  if (q == 0.0 || !std::isfinite(q)) {
    throw input_error("charge must be nonzero and finite");
  }
}

double checked(double v, const char* what, double x, double y, double z, double t) {
  if (!std::isfinite(v)) {
    throw numeric_error(std::string("non-finite ") + what + " at (" + std::to_string(x) + ", " +
                        std::to_string(y) + ", " + std::to_string(z) + ", " + std::to_string(t) +
                        ")");
  }
  return v;
}

}  // namespace

fieldkit::EMField degenerate_fields_general(const ScalarFunction4& s, const DirectionAngles& angles,
                                            double q) {
  require_charge(q);
  if (!angles.theta || !angles.phi || !angles.dtheta_dt || !angles.dphi_dt) {
    throw input_error("direction angles need theta, phi and both derivatives");
  }
  const double c = constants::c;

  fieldkit::EMField em;
  em.e = [s, angles, q, c](double x, double y, double z, double t) -> std::array<double, 3> {
    const double sv = checked(s.evaluate(x, y, z, t), "scalar", x, y, z, t);
    const auto ds = partials_of(s, x, y, z, t);
    const double th = angles.theta(t);
    const double ph = angles.phi(t);
    const double dth = angles.dtheta_dt(t);
    const double dph = angles.dphi_dt(t);
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double s_t_c = ds[3] / c;
    return {
        -(st * cp * s_t_c + ds[0] + sv / c * (ct * cp * dth - st * sp * dph)) / q,
        -(st * sp * s_t_c + ds[1] + sv / c * (ct * sp * dth + st * cp * dph)) / q,
        -(ct * s_t_c + ds[2] + sv / c * st * dth) / q,
    };
  };
  em.b = [s, angles, q, c](double x, double y, double z, double t) -> std::array<double, 3> {
    const auto ds = partials_of(s, x, y, z, t);
    const double th = angles.theta(t);
    const double ph = angles.phi(t);
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    return {
        (-st * sp * ds[2] + ct * ds[1]) / (q * c),
        (st * cp * ds[2] - ct * ds[0]) / (q * c),
        st * (-cp * ds[1] + sp * ds[0]) / (q * c),
    };
  };
  return em;
}

fieldkit::EMField degenerate_fields_planar(const ScalarFunction4& s,
                                           std::function<double(double)> phi,
                                           std::function<double(double)> dphi_dt, double q) {
  require_charge(q);
  if (!phi || !dphi_dt) {
    throw input_error("planar family needs phi and its derivative");
  }
  const double c = constants::c;

  fieldkit::EMField em;
  em.e = [s, phi, dphi_dt, q, c](double x, double y, double z, double t) -> std::array<double, 3> {
    const double sv = checked(s.evaluate(x, y, z, t), "scalar", x, y, z, t);
    const auto ds = partials_of(s, x, y, z, t);
    const double ph = phi(t);
    const double dph = dphi_dt(t);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double s_t_c = ds[3] / c;
    return {
        -(cp * s_t_c + ds[0] - sv / c * sp * dph) / q,
        -(sp * s_t_c + ds[1] + sv / c * cp * dph) / q,
        -ds[2] / q,  // the theta = pi/2 reduction of the longitudinal component
    };
  };
  em.b = [s, phi, q, c](double x, double y, double z, double t) -> std::array<double, 3> {
    const auto ds = partials_of(s, x, y, z, t);
    const double ph = phi(t);
    const double sp = std::sin(ph), cp = std::cos(ph);
    return {
        -sp * ds[2] / (q * c),
        cp * ds[2] / (q * c),
        (-cp * ds[1] + sp * ds[0]) / (q * c),
    };
  };
  return em;
}

fieldkit::EMField degenerate_fields_axial(const ScalarFunction4& s, double q) {
  require_charge(q);
  fieldkit::EMField em;
  em.e = [s, q](double x, double y, double z, double t) -> std::array<double, 3> {
    checked(s.evaluate(x, y, z, t), "scalar", x, y, z, t);
    const auto ds = partials_of(s, x, y, z, t);
    return {-ds[0] / q, -ds[1] / q, -(ds[3] + ds[2]) / q};
  };
  em.b = [s, q](double x, double y, double z, double t) -> std::array<double, 3> {
    const auto ds = partials_of(s, x, y, z, t);
    return {ds[1] / q, -ds[0] / q, 0.0};
  };
  return em;
}

KinematicState make_state(double total_energy_ev, double mass_energy_ev) {
  if (!(total_energy_ev > 0.0)) {
    throw input_error("total energy must be positive, got " + std::to_string(total_energy_ev));
  }
  if (!(mass_energy_ev >= 0.0)) {
    throw input_error("mass energy must be nonnegative, got " + std::to_string(mass_energy_ev));
  }
  if (total_energy_ev < mass_energy_ev) {
    throw unphysical_error("total energy " + std::to_string(total_energy_ev) +
                           " eV below rest energy " + std::to_string(mass_energy_ev) + " eV");
  }
  KinematicState k{total_energy_ev, mass_energy_ev, 0.0};
  // (E - mc^2)(E + mc^2) keeps precision when E barely exceeds mc^2; the
  // massless case is pinned to pc = E so the mismatch reads exactly zero.
  k.momentum_ev = mass_energy_ev == 0.0
                      ? total_energy_ev
                      : std::sqrt((total_energy_ev - mass_energy_ev) *
                                  (total_energy_ev + mass_energy_ev));
  return k;
}

double degeneracy_mismatch(const KinematicState& k) {
  if (!(k.total_energy_ev > 0.0)) {
    throw input_error("kinematic state has nonpositive energy");
  }
  return (k.total_energy_ev + k.mass_energy_ev - k.momentum_ev) / k.total_energy_ev;
}

std::vector<std::pair<double, double>> mismatch_sweep(double mass_energy_ev, double e_min_ev,
                                                      double e_max_ev, std::size_t points) {
  if (!(e_min_ev > 0.0) || !(e_max_ev > e_min_ev)) {
    throw input_error("sweep needs 0 < e_min < e_max");
  }
  if (points < 2) {
    throw input_error("sweep needs at least 2 points");
  }
  if (e_min_ev < mass_energy_ev) {
    throw unphysical_error("sweep starts below the rest energy");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  const double log_lo = std::log(e_min_ev);
  const double log_hi = std::log(e_max_ev);
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
    const double e = std::exp(log_lo + frac * (log_hi - log_lo));
    out.emplace_back(e, degeneracy_mismatch(make_state(e, mass_energy_ev)));
  }
  return out;
}

ScalarFunction4 random_smooth_function(std::uint64_t seed, double amplitude, double extent) {
  if (!(amplitude > 0.0) || !(extent > 0.0)) {
    throw input_error("random smooth function needs positive amplitude and extent");
  }
  // Manual uniform mapping keeps the draw sequence identical across
  // standard libraries (std distributions are not pinned by the standard).
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };

  struct Bump {
    std::array<double, 4> center;
    std::array<double, 4> inv_w2;  // 1 / width^2 per coordinate
    double amp;
  };
  std::array<Bump, 3> bumps{};
  for (auto& b : bumps) {
    for (auto& ci : b.center) {
      ci = uniform(-extent, extent);
    }
    for (auto& wi : b.inv_w2) {
      const double w = uniform(0.5 * extent, extent);
      wi = 1.0 / (w * w);
    }
    b.amp = uniform(0.5 * amplitude, amplitude) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  }

  const auto exponent = [](const Bump& b, double x, double y, double z, double t) {
    const double dx = x - b.center[0];
    const double dy = y - b.center[1];
    const double dz = z - b.center[2];
    const double dt = t - b.center[3];
    return dx * dx * b.inv_w2[0] + dy * dy * b.inv_w2[1] + dz * dz * b.inv_w2[2] +
           dt * dt * b.inv_w2[3];
  };

  ScalarFunction4 s;
  s.evaluate = [bumps, exponent](double x, double y, double z, double t) {
    double v = 0.0;
    for (const auto& b : bumps) {
      v += b.amp * std::exp(-exponent(b, x, y, z, t));
    }
    return v;
  };
  s.partials = [bumps, exponent](double x, double y, double z,
                                 double t) -> std::array<double, 4> {
    std::array<double, 4> d{};
    for (const auto& b : bumps) {
      const double g = b.amp * std::exp(-exponent(b, x, y, z, t));
      d[0] += -2.0 * (x - b.center[0]) * b.inv_w2[0] * g;
      d[1] += -2.0 * (y - b.center[1]) * b.inv_w2[1] * g;
      d[2] += -2.0 * (z - b.center[2]) * b.inv_w2[2] * g;
      d[3] += -2.0 * (t - b.center[3]) * b.inv_w2[3] * g;
    }
    return d;
  };
  return s;
}

}  // namespace wps::degeneracy
