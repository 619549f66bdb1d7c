#include <algorithm>
#include <cmath>

#include "tables.hpp"

// Reference backend. Each kernel is written as an explicit sequence of
// individually rounded IEEE operations (no fused multiply-add, fixed
// association); the vector backends replicate the same sequence lane-wise
// so that results agree bit for bit. This file is compiled with
// -ffp-contract=off to keep the compiler from contracting a*b+c.

namespace wps::kernels {
namespace {

void fd_central2(double* out, const double* plus, const double* minus, double inv_2h,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (plus[i] - minus[i]) * inv_2h;
  }
}

void fd_central4(double* out, const double* p2, const double* p1, const double* m1,
                 const double* m2, double inv_12h, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double outer = m2[i] - p2[i];
    double inner = p1[i] - m1[i];
    inner = 8.0 * inner;
    out[i] = (outer + inner) * inv_12h;
  }
}

void curvature_step(double* curv, const double* rate, double dt, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    curv[i] = curv[i] + rate[i] * dt;
  }
}

void threshold_bits(std::uint8_t* bits, const double* curv, double limit, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = std::abs(curv[i]) < limit ? 1 : 0;
  }
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(x[i]));
  }
  return m;
}

void weyl_combine(double* out_ur, double* out_ui, double* out_lr, double* out_li,
                  const WeylInputs& in, double eta, std::size_t n) {
  const double e = eta;  // +1 or -1, so products with it are exact
  for (std::size_t i = 0; i < n; ++i) {
    const double a0 = in.a0[i];
    const double ea1 = e * in.a1[i];
    const double ea2 = e * in.a2[i];
    const double ea3 = e * in.a3[i];

    double our = in.dt.ur[i];
    our = our + e * in.dx.lr[i];
    our = our + e * in.dy.li[i];
    our = our + e * in.dz.ur[i];
    our = our + a0 * in.psi.ui[i];
    our = our + ea3 * in.psi.ui[i];
    our = our + ea1 * in.psi.li[i];
    our = our - ea2 * in.psi.lr[i];

    double oui = in.dt.ui[i];
    oui = oui + e * in.dx.li[i];
    oui = oui - e * in.dy.lr[i];
    oui = oui + e * in.dz.ui[i];
    oui = oui - a0 * in.psi.ur[i];
    oui = oui - ea3 * in.psi.ur[i];
    oui = oui - ea1 * in.psi.lr[i];
    oui = oui - ea2 * in.psi.li[i];

    double olr = in.dt.lr[i];
    olr = olr + e * in.dx.ur[i];
    olr = olr - e * in.dy.ui[i];
    olr = olr - e * in.dz.lr[i];
    olr = olr + a0 * in.psi.li[i];
    olr = olr - ea3 * in.psi.li[i];
    olr = olr + ea1 * in.psi.ui[i];
    olr = olr + ea2 * in.psi.ur[i];

    double oli = in.dt.li[i];
    oli = oli + e * in.dx.ui[i];
    oli = oli + e * in.dy.ur[i];
    oli = oli - e * in.dz.li[i];
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
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
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

const Table scalar_table = {
    "scalar",    fd_central2,  fd_central4,  curvature_step,
    threshold_bits, max_abs,      weyl_combine, residual_ratio_max,
};

}  // namespace wps::kernels
