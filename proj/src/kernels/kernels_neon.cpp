#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

// NEON backend (2-wide float64). Mirrors the scalar operation sequence
// lane-wise with separate multiply and add/subtract; see kernels_scalar.cpp
// for the canonical ordering.

namespace wps::kernels {
namespace {

inline double reduce_max(float64x2_t v) {
  return std::max(vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1));
}

void fd_central2(double* out, const double* plus, const double* minus, double inv_2h,
                 std::size_t n) {
  const float64x2_t k = vdupq_n_f64(inv_2h);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vld1q_f64(plus + i);
    const float64x2_t m = vld1q_f64(minus + i);
    vst1q_f64(out + i, vmulq_f64(vsubq_f64(p, m), k));
  }
  for (; i < n; ++i) {
    out[i] = (plus[i] - minus[i]) * inv_2h;
  }
}

void fd_central4(double* out, const double* p2, const double* p1, const double* m1,
                 const double* m2, double inv_12h, std::size_t n) {
  const float64x2_t k = vdupq_n_f64(inv_12h);
  const float64x2_t eight = vdupq_n_f64(8.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t outer = vsubq_f64(vld1q_f64(m2 + i), vld1q_f64(p2 + i));
    float64x2_t inner = vsubq_f64(vld1q_f64(p1 + i), vld1q_f64(m1 + i));
    inner = vmulq_f64(eight, inner);
    vst1q_f64(out + i, vmulq_f64(vaddq_f64(outer, inner), k));
  }
  for (; i < n; ++i) {
    const double outer = m2[i] - p2[i];
    double inner = p1[i] - m1[i];
    inner = 8.0 * inner;
    out[i] = (outer + inner) * inv_12h;
  }
}

void curvature_step(double* curv, const double* rate, double dt, std::size_t n) {
  const float64x2_t k = vdupq_n_f64(dt);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t c = vld1q_f64(curv + i);
    const float64x2_t r = vld1q_f64(rate + i);
    vst1q_f64(curv + i, vaddq_f64(c, vmulq_f64(r, k)));
  }
  for (; i < n; ++i) {
    curv[i] = curv[i] + rate[i] * dt;
  }
}

void threshold_bits(std::uint8_t* bits, const double* curv, double limit, std::size_t n) {
  const float64x2_t lim = vdupq_n_f64(limit);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t mask = vcltq_f64(vabsq_f64(vld1q_f64(curv + i)), lim);
    bits[i + 0] = static_cast<std::uint8_t>(vgetq_lane_u64(mask, 0) & 1);
    bits[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u64(mask, 1) & 1);
  }
  for (; i < n; ++i) {
    bits[i] = std::abs(curv[i]) < limit ? 1 : 0;
  }
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  }
  double m = reduce_max(acc);
  for (; i < n; ++i) {
    m = std::max(m, std::abs(x[i]));
  }
  return m;
}

void weyl_combine(double* out_ur, double* out_ui, double* out_lr, double* out_li,
                  const WeylInputs& in, double eta, std::size_t n) {
  const float64x2_t e = vdupq_n_f64(eta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a0 = vld1q_f64(in.a0 + i);
    const float64x2_t ea1 = vmulq_f64(e, vld1q_f64(in.a1 + i));
    const float64x2_t ea2 = vmulq_f64(e, vld1q_f64(in.a2 + i));
    const float64x2_t ea3 = vmulq_f64(e, vld1q_f64(in.a3 + i));

    const float64x2_t pur = vld1q_f64(in.psi.ur + i);
    const float64x2_t pui = vld1q_f64(in.psi.ui + i);
    const float64x2_t plr = vld1q_f64(in.psi.lr + i);
    const float64x2_t pli = vld1q_f64(in.psi.li + i);

    float64x2_t our = vld1q_f64(in.dt.ur + i);
    our = vaddq_f64(our, vmulq_f64(e, vld1q_f64(in.dx.lr + i)));
    our = vaddq_f64(our, vmulq_f64(e, vld1q_f64(in.dy.li + i)));
    our = vaddq_f64(our, vmulq_f64(e, vld1q_f64(in.dz.ur + i)));
    our = vaddq_f64(our, vmulq_f64(a0, pui));
    our = vaddq_f64(our, vmulq_f64(ea3, pui));
    our = vaddq_f64(our, vmulq_f64(ea1, pli));
    our = vsubq_f64(our, vmulq_f64(ea2, plr));

    float64x2_t oui = vld1q_f64(in.dt.ui + i);
    oui = vaddq_f64(oui, vmulq_f64(e, vld1q_f64(in.dx.li + i)));
    oui = vsubq_f64(oui, vmulq_f64(e, vld1q_f64(in.dy.lr + i)));
    oui = vaddq_f64(oui, vmulq_f64(e, vld1q_f64(in.dz.ui + i)));
    oui = vsubq_f64(oui, vmulq_f64(a0, pur));
    oui = vsubq_f64(oui, vmulq_f64(ea3, pur));
    oui = vsubq_f64(oui, vmulq_f64(ea1, plr));
    oui = vsubq_f64(oui, vmulq_f64(ea2, pli));

    float64x2_t olr = vld1q_f64(in.dt.lr + i);
    olr = vaddq_f64(olr, vmulq_f64(e, vld1q_f64(in.dx.ur + i)));
    olr = vsubq_f64(olr, vmulq_f64(e, vld1q_f64(in.dy.ui + i)));
    olr = vsubq_f64(olr, vmulq_f64(e, vld1q_f64(in.dz.lr + i)));
    olr = vaddq_f64(olr, vmulq_f64(a0, pli));
    olr = vsubq_f64(olr, vmulq_f64(ea3, pli));
    olr = vaddq_f64(olr, vmulq_f64(ea1, pui));
    olr = vaddq_f64(olr, vmulq_f64(ea2, pur));

    float64x2_t oli = vld1q_f64(in.dt.li + i);
    oli = vaddq_f64(oli, vmulq_f64(e, vld1q_f64(in.dx.ui + i)));
    oli = vaddq_f64(oli, vmulq_f64(e, vld1q_f64(in.dy.ur + i)));
    oli = vsubq_f64(oli, vmulq_f64(e, vld1q_f64(in.dz.li + i)));
    oli = vsubq_f64(oli, vmulq_f64(a0, plr));
    oli = vaddq_f64(oli, vmulq_f64(ea3, plr));
    oli = vsubq_f64(oli, vmulq_f64(ea1, pur));
    oli = vaddq_f64(oli, vmulq_f64(ea2, pui));

    vst1q_f64(out_ur + i, our);
    vst1q_f64(out_ui + i, oui);
    vst1q_f64(out_lr + i, olr);
    vst1q_f64(out_li + i, oli);
  }
  for (; i < n; ++i) {
    const double a0 = in.a0[i];
    const double ea1 = eta * in.a1[i];
    const double ea2 = eta * in.a2[i];
    const double ea3 = eta * in.a3[i];

    double our = in.dt.ur[i];
    our = our + eta * in.dx.lr[i];
    our = our + eta * in.dy.li[i];
    our = our + eta * in.dz.ur[i];
    our = our + a0 * in.psi.ui[i];
    our = our + ea3 * in.psi.ui[i];
    our = our + ea1 * in.psi.li[i];
    our = our - ea2 * in.psi.lr[i];

    double oui = in.dt.ui[i];
    oui = oui + eta * in.dx.li[i];
    oui = oui - eta * in.dy.lr[i];
    oui = oui + eta * in.dz.ui[i];
    oui = oui - a0 * in.psi.ur[i];
    oui = oui - ea3 * in.psi.ur[i];
    oui = oui - ea1 * in.psi.lr[i];
    oui = oui - ea2 * in.psi.li[i];

    double olr = in.dt.lr[i];
    olr = olr + eta * in.dx.ur[i];
    olr = olr - eta * in.dy.ui[i];
    olr = olr - eta * in.dz.lr[i];
    olr = olr + a0 * in.psi.li[i];
    olr = olr - ea3 * in.psi.li[i];
    olr = olr + ea1 * in.psi.ui[i];
    olr = olr + ea2 * in.psi.ur[i];

    double oli = in.dt.li[i];
    oli = oli + eta * in.dx.ui[i];
    oli = oli + eta * in.dy.ur[i];
    oli = oli - eta * in.dz.li[i];
    oli = oli - a0 * in.psi.lr[i];
    oli = oli + ea3 * in.psi.lr[i];
    oli = oli - ea1 * in.psi.ur[i];
    oli = oli + ea2 * in.psi.ui[i];

    out_ur[i] = our;
    out_ui[i] = oui;
    out_lr[i] = olr;
    out_li[i] = oli;
  }
}

double residual_ratio_max(const SpinorArrays& d, const SpinorArrays& psi, double e0, double floor,
                          std::size_t n) {
  const float64x2_t ve0 = vdupq_n_f64(e0);
  const float64x2_t vfloor = vdupq_n_f64(floor);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t num2 = vmulq_f64(vld1q_f64(d.ur + i), vld1q_f64(d.ur + i));
    num2 = vaddq_f64(num2, vmulq_f64(vld1q_f64(d.ui + i), vld1q_f64(d.ui + i)));
    num2 = vaddq_f64(num2, vmulq_f64(vld1q_f64(d.lr + i), vld1q_f64(d.lr + i)));
    num2 = vaddq_f64(num2, vmulq_f64(vld1q_f64(d.li + i), vld1q_f64(d.li + i)));

    float64x2_t den2 = vmulq_f64(vld1q_f64(psi.ur + i), vld1q_f64(psi.ur + i));
    den2 = vaddq_f64(den2, vmulq_f64(vld1q_f64(psi.ui + i), vld1q_f64(psi.ui + i)));
    den2 = vaddq_f64(den2, vmulq_f64(vld1q_f64(psi.lr + i), vld1q_f64(psi.lr + i)));
    den2 = vaddq_f64(den2, vmulq_f64(vld1q_f64(psi.li + i), vld1q_f64(psi.li + i)));

    const float64x2_t den = vaddq_f64(vmulq_f64(ve0, vsqrtq_f64(den2)), vfloor);
    acc = vmaxq_f64(acc, vdivq_f64(vsqrtq_f64(num2), den));
  }
  double m = reduce_max(acc);
  for (; i < n; ++i) {
    double num2 = d.ur[i] * d.ur[i];
    num2 = num2 + d.ui[i] * d.ui[i];
    num2 = num2 + d.lr[i] * d.lr[i];
    num2 = num2 + d.li[i] * d.li[i];

    double den2 = psi.ur[i] * psi.ur[i];
    den2 = den2 + psi.ui[i] * psi.ui[i];
    den2 = den2 + psi.lr[i] * psi.lr[i];
    den2 = den2 + psi.li[i] * psi.li[i];

    const double den = e0 * std::sqrt(den2) + floor;
    const double ratio = std::sqrt(num2) / den;
    m = std::max(m, ratio);
  }
  return m;
}

}  // namespace

const Table neon_table = {
    "neon",      fd_central2,  fd_central4,  curvature_step,
    threshold_bits, max_abs,      weyl_combine, residual_ratio_max,
};

}  // namespace wps::kernels

#endif  // aarch64
