#include "wps/fieldkit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wps/errors.hpp"

namespace wps::fieldkit {

namespace {

// One axis of the super-Gaussian exponent g(u) = (u^2/sigma^2)^p with u the
// offset from the center. Derivatives of g:
//   g'  = (2 p u / sigma^2) (u^2/sigma^2)^{p-1}
//   g'' = (2 p (2p - 1) / sigma^2) (u^2/sigma^2)^{p-1}
// For p < 1 the common factor diverges (or jumps) at u = 0.
struct AxisExponent {
  double center;
  double sigma;
  double p;

  double g(double x) const {
    const double u = x - center;
    return std::pow(u * u / (sigma * sigma), p);
  }

  void check_center(double x) const {
    if (p < 1.0 && x == center) {
      throw domain_error("super-Gaussian with exponent " + std::to_string(p) +
                         " < 1 is not differentiable on the center line at " +
                         std::to_string(center));
    }
  }

  double d1(double x) const {
    check_center(x);
    const double u = x - center;
    const double s2 = sigma * sigma;
    return 2.0 * p * u / s2 * std::pow(u * u / s2, p - 1.0);
  }

  double d2(double x) const {
    check_center(x);
    const double u = x - center;
    const double s2 = sigma * sigma;
    return 2.0 * p * (2.0 * p - 1.0) / s2 * std::pow(u * u / s2, p - 1.0);
  }

  /// Half-width of the region where exp(-g) stays above 1e-6, capped at
  /// 3 sigma (the cap is what a plain Gaussian gets).
  double half_width() const {
    const double ln_inv_floor = std::log(1e6);
    return sigma * std::min(3.0, std::pow(ln_inv_floor, 1.0 / (2.0 * p)));
  }
};

void validate(const SuperGaussianParams& q) {
  if (!std::isfinite(q.x0) || !std::isfinite(q.y0)) {
    throw input_error("super-Gaussian center must be finite");
  }
  if (!(q.sigma_x > 0.0) || !(q.sigma_y > 0.0)) {
    throw input_error("super-Gaussian widths must be positive");
  }
  if (!(q.p_x > 0.0) || !(q.p_y > 0.0)) {
    throw input_error("super-Gaussian exponents must be positive");
  }
}

}  // namespace

ScalarProfile supergaussian(const SuperGaussianParams& params) {
  validate(params);
  const AxisExponent ax{params.x0, params.sigma_x, params.p_x};
  const AxisExponent ay{params.y0, params.sigma_y, params.p_y};

  ScalarProfile out;
  out.evaluate = [ax, ay](double x, double y) { return std::exp(-ax.g(x) - ay.g(y)); };
  // f_x = -g_x'(x) f, and analogously in y.
  out.gradient = [ax, ay](double x, double y) -> std::array<double, 2> {
    const double f = std::exp(-ax.g(x) - ay.g(y));
    return {-ax.d1(x) * f, -ay.d1(y) * f};
  };
  // f_xx = (g_x'^2 - g_x'') f, and analogously in y.
  out.hessian_trace_parts = [ax, ay](double x, double y) -> std::array<double, 2> {
    const double f = std::exp(-ax.g(x) - ay.g(y));
    const double dx1 = ax.d1(x);
    const double dy1 = ay.d1(y);
    return {(dx1 * dx1 - ax.d2(x)) * f, (dy1 * dy1 - ay.d2(y)) * f};
  };
  out.positivity_domain = {params.x0 - ax.half_width(), params.x0 + ax.half_width(),
                           params.y0 - ay.half_width(), params.y0 + ay.half_width()};
  out.smooth = params.p_x >= 1.0 && params.p_y >= 1.0;
  return out;
}

ScalarProfile constant_profile(double value, const Rect& domain) {
  if (!(value > 0.0)) {
    throw input_error("constant profile value must be positive, got " + std::to_string(value));
  }
  if (!(domain.x_hi > domain.x_lo) || !(domain.y_hi > domain.y_lo)) {
    throw input_error("constant profile needs a nonempty domain rectangle");
  }
  ScalarProfile out;
  out.evaluate = [value](double, double) { return value; };
  out.gradient = [](double, double) -> std::array<double, 2> { return {0.0, 0.0}; };
  out.hessian_trace_parts = [](double, double) -> std::array<double, 2> { return {0.0, 0.0}; };
  out.positivity_domain = domain;
  out.smooth = true;
  return out;
}

namespace {

double fd_span(const ScalarProfile& p) {
  const double span = std::max(p.positivity_domain.x_hi - p.positivity_domain.x_lo,
                               p.positivity_domain.y_hi - p.positivity_domain.y_lo);
  return 1e-4 * span;
}

}  // namespace

std::array<double, 2> profile_gradient(const ScalarProfile& p, double x, double y) {
  if (p.gradient) {
    return p.gradient(x, y);
  }
  const double h = fd_span(p);
  const auto fx = [&](double u) { return p.evaluate(u, y); };
  const auto fy = [&](double u) { return p.evaluate(x, u); };
  const auto d4 = [h](auto&& f, double c) {
    return (f(c - 2 * h) - f(c + 2 * h) + 8.0 * (f(c + h) - f(c - h))) / (12.0 * h);
  };
  return {d4(fx, x), d4(fy, y)};
}

std::array<double, 2> profile_hessian_parts(const ScalarProfile& p, double x, double y) {
  if (p.hessian_trace_parts) {
    return p.hessian_trace_parts(x, y);
  }
  const double h = fd_span(p);
  const double f0 = p.evaluate(x, y);
  const double fxx = (p.evaluate(x + h, y) - 2.0 * f0 + p.evaluate(x - h, y)) / (h * h);
  const double fyy = (p.evaluate(x, y + h) - 2.0 * f0 + p.evaluate(x, y - h)) / (h * h);
  return {fxx, fyy};
}

}  // namespace wps::fieldkit
