#pragma once

#include <cstddef>

#include "wps/fieldkit/fields.hpp"
#include "wps/grid.hpp"

namespace wps::fieldkit {

enum class DerivMode { analytic, numeric };

struct ResidualOptions {
  DerivMode mode = DerivMode::analytic;
  int order = 2;   // spatial stencil order in numeric mode (2 or 4)
  double t = 0.0;  // time slab on which the residual is evaluated
};

/// Max over interior grid points of |D psi| / (E0 |psi| + 1e-300), where D
/// is the first-order wave operator
///   D = d_t + eta sigma.grad - i (a0 + eta sigma.a),   eta = +/-1 by helicity.
/// This is the sign convention under which the envelope spinors paired with
/// their guiding potentials are exact solutions; a valid pair scores at the
/// level of differentiation error only, and a mismatched pair scores O(1)
/// (the tests exercise both directions).
///
/// Analytic mode differentiates the envelope/carrier form directly; numeric
/// mode applies central stencils of the requested order to the spinor
/// callable, with the time derivative always on a 5-point stencil (step =
/// z spacing) so spatial truncation dominates in convergence studies. The
/// outermost order/2 grid layers serve as stencil margin in both modes and
/// are not scored.
double weyl_residual(const SpinorField& spinor, const FourPotential& pot, const Grid3& grid,
                     const ResidualOptions& opt = {});

/// Grid covering the profile's positivity domain transversely and one
/// carrier wavelength 2 pi / E0 in z.
Grid3 default_grid(const ScalarProfile& profile, double e0, std::size_t interior_per_axis = 48,
                   int order = 2);

/// Homogeneous Maxwell identity check: div B and the components of
/// curl E + dB/dt, 2nd-order differenced on the grid interior at time t
/// (time step = z spacing). field_scale is the largest |E| or |B|
/// component seen, for relative comparisons.
struct MaxwellResiduals {
  double max_div_b = 0.0;
  double max_curl_residual = 0.0;
  double field_scale = 0.0;
};

MaxwellResiduals maxwell_residuals(const EMField& em, const Grid3& grid, double t);

}  // namespace wps::fieldkit
