#include "wps/stencil.hpp"

#include <cmath>
#include <sstream>

#include "wps/errors.hpp"

namespace wps {
namespace {

double sample(const ScalarField3& f, std::array<double, 3> p, int axis, double offset) {
  p[static_cast<std::size_t>(axis)] += offset;
  const double v = f(p);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "central_difference: non-finite sample at (" << p[0] << ", " << p[1] << ", "
        << p[2] << ")";
    throw numeric_error(msg.str());
  }
  return v;
}

}  // namespace

double central_difference(const ScalarField3& f, std::array<double, 3> point, Axis axis,
                          double h, int order) {
  if (!(h > 0.0)) throw input_error("central_difference: step must be positive");
  const int a = static_cast<int>(axis);
  if (order == 2) {
    return (sample(f, point, a, h) - sample(f, point, a, -h)) / (2.0 * h);
  }
  if (order == 4) {
    const double p2 = sample(f, point, a, 2.0 * h);
    const double p1 = sample(f, point, a, h);
    const double m1 = sample(f, point, a, -h);
    const double m2 = sample(f, point, a, -2.0 * h);
    return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
  }
  throw input_error("central_difference: order must be 2 or 4");
}

}  // namespace wps
