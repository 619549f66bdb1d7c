#pragma once

#include <array>
#include <functional>

#include "wps/grid.hpp"

namespace wps {

using ScalarField3 = std::function<double(const std::array<double, 3>&)>;

/// Central finite difference of a scalar callable along one axis.
/// order 2: (f(+h) - f(-h)) / 2h, error O(h^2);
/// order 4: (-f(+2h) + 8 f(+h) - 8 f(-h) + f(-2h)) / 12h, error O(h^4).
/// Throws numeric_error (naming the point) on a non-finite sample.
double central_difference(const ScalarField3& f, std::array<double, 3> point, Axis axis,
                          double h, int order = 2);

}  // namespace wps
