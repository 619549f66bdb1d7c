#pragma once

#include <array>
#include <complex>

namespace wps {

using cdouble = std::complex<double>;

/// Spin projection onto the momentum direction; selects which of the two
/// two-component wave equations applies.
enum class Helicity { positive, negative };

/// +1 for positive helicity, -1 for negative: the sign that flips between
/// the two equations and their guiding potentials.
inline int helicity_sign(Helicity h) { return h == Helicity::positive ? +1 : -1; }

/// Two-component complex spinor value.
struct Spinor2 {
  cdouble upper{};
  cdouble lower{};

  double norm2() const { return std::norm(upper) + std::norm(lower); }
};

using Mat2 = std::array<std::array<cdouble, 2>, 2>;

/// Pauli matrices with sigma0 = identity.
struct PauliBasis {
  Mat2 sigma0{{{cdouble{1, 0}, cdouble{0, 0}}, {cdouble{0, 0}, cdouble{1, 0}}}};
  Mat2 sigma1{{{cdouble{0, 0}, cdouble{1, 0}}, {cdouble{1, 0}, cdouble{0, 0}}}};
  Mat2 sigma2{{{cdouble{0, 0}, cdouble{0, -1}}, {cdouble{0, 1}, cdouble{0, 0}}}};
  Mat2 sigma3{{{cdouble{1, 0}, cdouble{0, 0}}, {cdouble{0, 0}, cdouble{-1, 0}}}};
};

inline const PauliBasis& pauli() {
  static const PauliBasis basis;
  return basis;
}

inline Spinor2 apply(const Mat2& m, const Spinor2& v) {
  return {m[0][0] * v.upper + m[0][1] * v.lower, m[1][0] * v.upper + m[1][1] * v.lower};
}

inline cdouble inner(const Spinor2& a, const Spinor2& b) {
  return std::conj(a.upper) * b.upper + std::conj(a.lower) * b.lower;
}

}  // namespace wps
