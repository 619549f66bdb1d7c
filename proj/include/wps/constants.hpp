#pragma once

// CODATA 2018 values, fixed here and nowhere else.
namespace wps::constants {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double e = 1.602176634e-19;      // C
inline constexpr double c = 2.99792458e8;         // m/s
inline constexpr double hbar_over_e = hbar / e;   // V s

}  // namespace wps::constants
