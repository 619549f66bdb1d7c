#pragma once

#include <array>
#include <functional>

namespace wps::fieldkit {

/// Axis-aligned rectangle in the transverse (x, y) plane.
struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  bool contains(double x, double y) const {
    // Slack of a few ulps worth of span absorbs grid-coordinate rounding
    // at the boundary.
    const double ex = 1e-12 * (x_hi - x_lo);
    const double ey = 1e-12 * (y_hi - y_lo);
    return x >= x_lo - ex && x <= x_hi + ex && y >= y_lo - ey && y <= y_hi + ey;
  }
};

/// Strictly positive transverse envelope f(x, y). Analytic derivatives are
/// optional; profile_gradient / profile_hessian_parts fall back to central
/// differences when they are absent. positivity_domain is the rectangle on
/// which f stays above the working floor (1e-6 of its maximum), so that
/// the f-denominators of the guiding potential are safe.
struct ScalarProfile {
  std::function<double(double, double)> evaluate;
  std::function<std::array<double, 2>(double, double)> gradient;             // (f_x, f_y)
  std::function<std::array<double, 2>(double, double)> hessian_trace_parts;  // (f_xx, f_yy)
  Rect positivity_domain;
  bool smooth = true;  // false: derivatives blow up somewhere in the domain
};

/// exp[-((x-x0)^2/sigma_x^2)^{p_x} - ((y-y0)^2/sigma_y^2)^{p_y}].
struct SuperGaussianParams {
  double x0 = 0.0;
  double y0 = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double p_x = 1.0;
  double p_y = 1.0;
};

/// Super-Gaussian profile with analytic first and second derivatives.
/// Exponents below 1 make the derivatives singular on the center lines
/// x = x0 / y = y0; evaluating them there raises domain_error and the
/// profile is marked non-smooth.
ScalarProfile supergaussian(const SuperGaussianParams& params);

/// Uniform profile of the given value on the given rectangle.
ScalarProfile constant_profile(double value, const Rect& domain);

/// First derivatives of f, analytic when attached, else 4th-order central
/// differences with a step scaled to the domain.
std::array<double, 2> profile_gradient(const ScalarProfile& p, double x, double y);

/// (f_xx, f_yy), analytic when attached, else second central differences.
std::array<double, 2> profile_hessian_parts(const ScalarProfile& p, double x, double y);

}  // namespace wps::fieldkit
