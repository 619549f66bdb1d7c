#pragma once

#include <array>
#include <cstddef>

#include "wps/errors.hpp"

namespace wps {

enum class Axis : int { x = 0, y = 1, z = 2 };

/// Uniform axis-aligned 3-D grid. `counts` are total points per axis; a
/// stencil of order p needs p/2 boundary layers, so interiors shrink
/// accordingly.
struct Grid3 {
  std::array<double, 3> origin{};
  std::array<double, 3> spacing{};
  std::array<std::size_t, 3> counts{};

  Grid3() = default;
  Grid3(std::array<double, 3> origin_, std::array<double, 3> spacing_,
        std::array<std::size_t, 3> counts_)
      : origin(origin_), spacing(spacing_), counts(counts_) {
    for (int a = 0; a < 3; ++a) {
      if (!(spacing[a] > 0.0)) throw input_error("Grid3: spacing must be positive");
      if (counts[a] < 5) throw input_error("Grid3: need at least 5 points per axis");
    }
  }

  double coord(int axis, std::size_t i) const {
    return origin[static_cast<std::size_t>(axis)] +
           spacing[static_cast<std::size_t>(axis)] * static_cast<double>(i);
  }

  std::size_t total() const { return counts[0] * counts[1] * counts[2]; }

  /// Number of interior points per axis for a stencil of the given order.
  std::size_t interior_count(int axis, int order) const {
    const std::size_t margin = static_cast<std::size_t>(order / 2);
    const std::size_t n = counts[static_cast<std::size_t>(axis)];
    return n > 2 * margin ? n - 2 * margin : 0;
  }
};

/// Grid spanning [lo, hi] per axis with the requested interior point count.
inline Grid3 make_grid(std::array<double, 3> lo, std::array<double, 3> hi,
                       std::size_t interior_per_axis, int order = 2) {
  const std::size_t margin = static_cast<std::size_t>(order / 2);
  const std::size_t n = interior_per_axis + 2 * margin;
  std::array<double, 3> spacing{};
  for (int a = 0; a < 3; ++a) {
    if (!(hi[a] > lo[a])) throw input_error("make_grid: empty span");
    spacing[a] = (hi[a] - lo[a]) / static_cast<double>(n - 1);
  }
  return Grid3(lo, spacing, {n, n, n});
}

}  // namespace wps
