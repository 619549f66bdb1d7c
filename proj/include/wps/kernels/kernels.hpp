#pragma once

#include <cstddef>
#include <cstdint>

namespace wps::kernels {

/// Spinor grid data split into re/im planes, one value per point.
struct SpinorArrays {
  const double* ur;  // upper, real
  const double* ui;  // upper, imag
  const double* lr;  // lower, real
  const double* li;  // lower, imag
};

/// Inputs of the fused Weyl-operator kernel: the spinor samples, their four
/// partial derivatives and the 4-potential components, all per grid point.
struct WeylInputs {
  SpinorArrays psi;
  SpinorArrays dt;
  SpinorArrays dx;
  SpinorArrays dy;
  SpinorArrays dz;
  const double* a0;
  const double* a1;
  const double* a2;
  const double* a3;
};

// Batch kernels used by the hot loops (stencil assembly, residual
// reduction, channel stepping). Every backend implements the same exact
// sequence of IEEE operations per element, so outputs are bit-identical
// across backends; the equivalence tests assert that.
struct Table {
  const char* name;

  // out[i] = (plus[i] - minus[i]) * inv_2h
  void (*fd_central2)(double* out, const double* plus, const double* minus, double inv_2h,
                      std::size_t n);

  // out[i] = ((m2[i] - p2[i]) + 8*(p1[i] - m1[i])) * inv_12h
  void (*fd_central4)(double* out, const double* p2, const double* p1, const double* m1,
                      const double* m2, double inv_12h, std::size_t n);

  // curv[i] += rate[i] * dt
  void (*curvature_step)(double* curv, const double* rate, double dt, std::size_t n);

  // bits[i] = |curv[i]| < limit
  void (*threshold_bits)(std::uint8_t* bits, const double* curv, double limit, std::size_t n);

  double (*max_abs)(const double* x, std::size_t n);

  // Applies the two-component first-order operator
  //   d_t + eta sigma.grad - i (a0 + eta sigma.a),   eta = +/-1,
  // writing the result into the out planes.
  void (*weyl_combine)(double* out_ur, double* out_ui, double* out_lr, double* out_li,
                       const WeylInputs& in, double eta, std::size_t n);

  // max over i of |d_i| / (e0 |psi_i| + floor), pointwise 2-norms.
  double (*residual_ratio_max)(const SpinorArrays& d, const SpinorArrays& psi, double e0,
                               double floor, std::size_t n);
};

enum class Backend { scalar, avx2, neon };

bool available(Backend b);

/// Backend table by name; throws input_error when not built in or not
/// supported by the running CPU.
const Table& table(Backend b);

/// Best available backend, chosen once. The WPS_KERNELS environment
/// variable (scalar|avx2|neon) overrides the choice.
const Table& active();

}  // namespace wps::kernels
