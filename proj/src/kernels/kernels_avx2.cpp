#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

// AVX2 backend. Lane-wise it performs exactly the operation sequence of the
// scalar backend: separate multiply and add/subtract (the target flags do
// not enable FMA), correctly rounded sqrt/div, and max reductions, which
// are order-insensitive. Tails shorter than a vector fall back to the same
// scalar sequence.

namespace wps::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline double reduce_max_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  const double a = _mm_cvtsd_f64(m);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(m, m));
  return std::max(a, b);
}

void fd_central2(double* out, const double* plus, const double* minus, double inv_2h,
                 std::size_t n) {
  const __m256d k = _mm256_set1_pd(inv_2h);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(plus + i);
    const __m256d m = _mm256_loadu_pd(minus + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(p, m), k));
  }
  for (; i < n; ++i) {
    out[i] = (plus[i] - minus[i]) * inv_2h;
  }
}

void fd_central4(double* out, const double* p2, const double* p1, const double* m1,
                 const double* m2, double inv_12h, std::size_t n) {
  const __m256d k = _mm256_set1_pd(inv_12h);
  const __m256d eight = _mm256_set1_pd(8.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d outer = _mm256_sub_pd(_mm256_loadu_pd(m2 + i), _mm256_loadu_pd(p2 + i));
    __m256d inner = _mm256_sub_pd(_mm256_loadu_pd(p1 + i), _mm256_loadu_pd(m1 + i));
    inner = _mm256_mul_pd(eight, inner);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_add_pd(outer, inner), k));
  }
  for (; i < n; ++i) {
    const double outer = m2[i] - p2[i];
    double inner = p1[i] - m1[i];
    inner = 8.0 * inner;
    out[i] = (outer + inner) * inv_12h;
  }
}

void curvature_step(double* curv, const double* rate, double dt, std::size_t n) {
  const __m256d k = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(curv + i);
    const __m256d r = _mm256_loadu_pd(rate + i);
    _mm256_storeu_pd(curv + i, _mm256_add_pd(c, _mm256_mul_pd(r, k)));
  }
  for (; i < n; ++i) {
    curv[i] = curv[i] + rate[i] * dt;
  }
}

void threshold_bits(std::uint8_t* bits, const double* curv, double limit, std::size_t n) {
  const __m256d lim = _mm256_set1_pd(limit);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = abs_pd(_mm256_loadu_pd(curv + i));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(a, lim, _CMP_LT_OQ));
    bits[i + 0] = static_cast<std::uint8_t>(mask & 1);
    bits[i + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    bits[i + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    bits[i + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
  }
  for (; i < n; ++i) {
    bits[i] = std::abs(curv[i]) < limit ? 1 : 0;
  }
}

double max_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
  }
  double m = reduce_max_pd(acc);
  for (; i < n; ++i) {
    m = std::max(m, std::abs(x[i]));
  }
  return m;
}

void weyl_combine(double* out_ur, double* out_ui, double* out_lr, double* out_li,
                  const WeylInputs& in, double eta, std::size_t n) {
  const __m256d e = _mm256_set1_pd(eta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(in.a0 + i);
    const __m256d ea1 = _mm256_mul_pd(e, _mm256_loadu_pd(in.a1 + i));
    const __m256d ea2 = _mm256_mul_pd(e, _mm256_loadu_pd(in.a2 + i));
    const __m256d ea3 = _mm256_mul_pd(e, _mm256_loadu_pd(in.a3 + i));

    const __m256d pur = _mm256_loadu_pd(in.psi.ur + i);
    const __m256d pui = _mm256_loadu_pd(in.psi.ui + i);
    const __m256d plr = _mm256_loadu_pd(in.psi.lr + i);
    const __m256d pli = _mm256_loadu_pd(in.psi.li + i);

    __m256d our = _mm256_loadu_pd(in.dt.ur + i);
    our = _mm256_add_pd(our, _mm256_mul_pd(e, _mm256_loadu_pd(in.dx.lr + i)));
    our = _mm256_add_pd(our, _mm256_mul_pd(e, _mm256_loadu_pd(in.dy.li + i)));
    our = _mm256_add_pd(our, _mm256_mul_pd(e, _mm256_loadu_pd(in.dz.ur + i)));
    our = _mm256_add_pd(our, _mm256_mul_pd(a0, pui));
    our = _mm256_add_pd(our, _mm256_mul_pd(ea3, pui));
    our = _mm256_add_pd(our, _mm256_mul_pd(ea1, pli));
    our = _mm256_sub_pd(our, _mm256_mul_pd(ea2, plr));

    __m256d oui = _mm256_loadu_pd(in.dt.ui + i);
    oui = _mm256_add_pd(oui, _mm256_mul_pd(e, _mm256_loadu_pd(in.dx.li + i)));
    oui = _mm256_sub_pd(oui, _mm256_mul_pd(e, _mm256_loadu_pd(in.dy.lr + i)));
    oui = _mm256_add_pd(oui, _mm256_mul_pd(e, _mm256_loadu_pd(in.dz.ui + i)));
    oui = _mm256_sub_pd(oui, _mm256_mul_pd(a0, pur));
    oui = _mm256_sub_pd(oui, _mm256_mul_pd(ea3, pur));
    oui = _mm256_sub_pd(oui, _mm256_mul_pd(ea1, plr));
    oui = _mm256_sub_pd(oui, _mm256_mul_pd(ea2, pli));

    __m256d olr = _mm256_loadu_pd(in.dt.lr + i);
    olr = _mm256_add_pd(olr, _mm256_mul_pd(e, _mm256_loadu_pd(in.dx.ur + i)));
    olr = _mm256_sub_pd(olr, _mm256_mul_pd(e, _mm256_loadu_pd(in.dy.ui + i)));
    olr = _mm256_sub_pd(olr, _mm256_mul_pd(e, _mm256_loadu_pd(in.dz.lr + i)));
    olr = _mm256_add_pd(olr, _mm256_mul_pd(a0, pli));
    olr = _mm256_sub_pd(olr, _mm256_mul_pd(ea3, pli));
    olr = _mm256_add_pd(olr, _mm256_mul_pd(ea1, pui));
    olr = _mm256_add_pd(olr, _mm256_mul_pd(ea2, pur));

    __m256d oli = _mm256_loadu_pd(in.dt.li + i);
    oli = _mm256_add_pd(oli, _mm256_mul_pd(e, _mm256_loadu_pd(in.dx.ui + i)));
    oli = _mm256_add_pd(oli, _mm256_mul_pd(e, _mm256_loadu_pd(in.dy.ur + i)));
    oli = _mm256_sub_pd(oli, _mm256_mul_pd(e, _mm256_loadu_pd(in.dz.li + i)));
    oli = _mm256_sub_pd(oli, _mm256_mul_pd(a0, plr));
    oli = _mm256_add_pd(oli, _mm256_mul_pd(ea3, plr));
    oli = _mm256_sub_pd(oli, _mm256_mul_pd(ea1, pur));
    oli = _mm256_add_pd(oli, _mm256_mul_pd(ea2, pui));

    _mm256_storeu_pd(out_ur + i, our);
    _mm256_storeu_pd(out_ui + i, oui);
    _mm256_storeu_pd(out_lr + i, olr);
    _mm256_storeu_pd(out_li + i, oli);
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
  const __m256d ve0 = _mm256_set1_pd(e0);
  const __m256d vfloor = _mm256_set1_pd(floor);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d num2 = _mm256_mul_pd(_mm256_loadu_pd(d.ur + i), _mm256_loadu_pd(d.ur + i));
    num2 = _mm256_add_pd(num2, _mm256_mul_pd(_mm256_loadu_pd(d.ui + i), _mm256_loadu_pd(d.ui + i)));
    num2 = _mm256_add_pd(num2, _mm256_mul_pd(_mm256_loadu_pd(d.lr + i), _mm256_loadu_pd(d.lr + i)));
    num2 = _mm256_add_pd(num2, _mm256_mul_pd(_mm256_loadu_pd(d.li + i), _mm256_loadu_pd(d.li + i)));

    __m256d den2 = _mm256_mul_pd(_mm256_loadu_pd(psi.ur + i), _mm256_loadu_pd(psi.ur + i));
    den2 =
        _mm256_add_pd(den2, _mm256_mul_pd(_mm256_loadu_pd(psi.ui + i), _mm256_loadu_pd(psi.ui + i)));
    den2 =
        _mm256_add_pd(den2, _mm256_mul_pd(_mm256_loadu_pd(psi.lr + i), _mm256_loadu_pd(psi.lr + i)));
    den2 =
        _mm256_add_pd(den2, _mm256_mul_pd(_mm256_loadu_pd(psi.li + i), _mm256_loadu_pd(psi.li + i)));

    const __m256d den = _mm256_add_pd(_mm256_mul_pd(ve0, _mm256_sqrt_pd(den2)), vfloor);
    acc = _mm256_max_pd(acc, _mm256_div_pd(_mm256_sqrt_pd(num2), den));
  }
  double m = reduce_max_pd(acc);
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

const Table avx2_table = {
    "avx2",      fd_central2,  fd_central4,  curvature_step,
    threshold_bits, max_abs,      weyl_combine, residual_ratio_max,
};

}  // namespace wps::kernels

#endif  // x86-64
