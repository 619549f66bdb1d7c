#include "wps/fieldkit/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wps/errors.hpp"
#include "wps/kernels/kernels.hpp"

namespace wps::fieldkit {

namespace {

constexpr std::size_t kBlock = 16384;
constexpr double kFloor = 1e-300;

struct Planes {
  std::vector<double> ur, ui, lr, li;
  explicit Planes(std::size_t n) : ur(n), ui(n), lr(n), li(n) {}
  kernels::SpinorArrays view() const { return {ur.data(), ui.data(), lr.data(), li.data()}; }
};

// Writes the spinor value at (x, y, z, t) into the planes at slot i: the
// envelope-times-carrier form touches one component pair, the other stays 0.
void sample_spinor(const SpinorField& s, double x, double y, double z, double t, Planes& p,
                   std::size_t i) {
  const double f = s.profile.evaluate(x, y);
  const double phase = s.energy_e0 * (z - t);
  const double re = f * std::cos(phase);
  const double im = f * std::sin(phase);
  if (s.helicity == Helicity::positive) {
    p.ur[i] = re;
    p.ui[i] = im;
    p.lr[i] = 0.0;
    p.li[i] = 0.0;
  } else {
    p.ur[i] = 0.0;
    p.ui[i] = 0.0;
    p.lr[i] = re;
    p.li[i] = im;
  }
}

void check_grid_in_domain(const Grid3& grid, const Rect& domain) {
  const double x_hi = grid.coord(0, grid.counts[0] - 1);
  const double y_hi = grid.coord(1, grid.counts[1] - 1);
  if (!domain.contains(grid.origin[0], grid.origin[1]) || !domain.contains(x_hi, y_hi)) {
    throw input_error("grid extends outside the profile's positivity domain");
  }
}

}  // namespace

double weyl_residual(const SpinorField& spinor, const FourPotential& pot, const Grid3& grid,
                     const ResidualOptions& opt) {
  if (opt.order != 2 && opt.order != 4) {
    throw input_error("stencil order must be 2 or 4, got " + std::to_string(opt.order));
  }
  check_grid_in_domain(grid, spinor.profile.positivity_domain);

  const std::size_t margin = static_cast<std::size_t>(opt.order) / 2;
  const std::size_t nx = grid.interior_count(0, opt.order);
  const std::size_t ny = grid.interior_count(1, opt.order);
  const std::size_t nz = grid.interior_count(2, opt.order);
  if (nx == 0 || ny == 0 || nz == 0) {
    throw input_error("grid has no interior points for the requested stencil order");
  }
  const std::size_t total = nx * ny * nz;

  const auto& kt = kernels::active();
  const double eta = spinor.eta();
  const double e0 = spinor.energy_e0;
  const double hx = grid.spacing[0];
  const double hy = grid.spacing[1];
  const double hz = grid.spacing[2];
  const double ht = hz;  // time step for the 5-point temporal stencil
  const bool analytic = opt.mode == DerivMode::analytic;

  const std::size_t block = std::min<std::size_t>(kBlock, total);
  std::vector<double> xs(block), ys(block), zs(block);
  Planes psi(block), dt(block), dx(block), dy(block), dz(block);
  Planes sp2(block), sp1(block), sm1(block), sm2(block);  // shifted samples, reused per axis
  Planes out(block);
  std::vector<double> a0(block), a1(block), a2(block), a3(block);

  // Spatial derivative of the sampled spinor along one axis via the
  // selected central stencil, component plane by component plane.
  const auto differentiate = [&](Planes& dst, double h, std::size_t n, const auto& shift) {
    if (opt.order == 2) {
      for (std::size_t i = 0; i < n; ++i) shift(i, +1.0, sp1);
      for (std::size_t i = 0; i < n; ++i) shift(i, -1.0, sm1);
      const double inv_2h = 1.0 / (2.0 * h);
      kt.fd_central2(dst.ur.data(), sp1.ur.data(), sm1.ur.data(), inv_2h, n);
      kt.fd_central2(dst.ui.data(), sp1.ui.data(), sm1.ui.data(), inv_2h, n);
      kt.fd_central2(dst.lr.data(), sp1.lr.data(), sm1.lr.data(), inv_2h, n);
      kt.fd_central2(dst.li.data(), sp1.li.data(), sm1.li.data(), inv_2h, n);
    } else {
      for (std::size_t i = 0; i < n; ++i) shift(i, +2.0, sp2);
      for (std::size_t i = 0; i < n; ++i) shift(i, +1.0, sp1);
      for (std::size_t i = 0; i < n; ++i) shift(i, -1.0, sm1);
      for (std::size_t i = 0; i < n; ++i) shift(i, -2.0, sm2);
      const double inv_12h = 1.0 / (12.0 * h);
      kt.fd_central4(dst.ur.data(), sp2.ur.data(), sp1.ur.data(), sm1.ur.data(), sm2.ur.data(),
                     inv_12h, n);
      kt.fd_central4(dst.ui.data(), sp2.ui.data(), sp1.ui.data(), sm1.ui.data(), sm2.ui.data(),
                     inv_12h, n);
      kt.fd_central4(dst.lr.data(), sp2.lr.data(), sp1.lr.data(), sm1.lr.data(), sm2.lr.data(),
                     inv_12h, n);
      kt.fd_central4(dst.li.data(), sp2.li.data(), sp1.li.data(), sm1.li.data(), sm2.li.data(),
                     inv_12h, n);
    }
  };

  double worst = 0.0;
  std::size_t done = 0;
  while (done < total) {
    const std::size_t n = std::min(block, total - done);

    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t linear = done + i;
      const std::size_t iz = linear % nz;
      const std::size_t iy = (linear / nz) % ny;
      const std::size_t ix = linear / (nz * ny);
      xs[i] = grid.coord(0, ix + margin);
      ys[i] = grid.coord(1, iy + margin);
      zs[i] = grid.coord(2, iz + margin);
    }

    for (std::size_t i = 0; i < n; ++i) {
      sample_spinor(spinor, xs[i], ys[i], zs[i], opt.t, psi, i);
    }

    if (analytic) {
      // d_t psi = -i E0 psi, d_z psi = +i E0 psi, d_{x,y} psi = (f_{x,y}/f) psi;
      // the latter is assembled as f_{x,y} * carrier to avoid dividing by f.
      for (std::size_t i = 0; i < n; ++i) {
        const double f = spinor.profile.evaluate(xs[i], ys[i]);
        const auto grad = profile_gradient(spinor.profile, xs[i], ys[i]);
        const double phase = e0 * (zs[i] - opt.t);
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        const double re = f * c;
        const double im = f * s;
        if (spinor.helicity == Helicity::positive) {
          dt.lr[i] = dt.li[i] = dz.lr[i] = dz.li[i] = 0.0;
          dx.lr[i] = dx.li[i] = dy.lr[i] = dy.li[i] = 0.0;
          dt.ur[i] = e0 * im;
          dt.ui[i] = -e0 * re;
          dz.ur[i] = -e0 * im;
          dz.ui[i] = e0 * re;
          dx.ur[i] = grad[0] * c;
          dx.ui[i] = grad[0] * s;
          dy.ur[i] = grad[1] * c;
          dy.ui[i] = grad[1] * s;
        } else {
          dt.ur[i] = dt.ui[i] = dz.ur[i] = dz.ui[i] = 0.0;
          dx.ur[i] = dx.ui[i] = dy.ur[i] = dy.ui[i] = 0.0;
          dt.lr[i] = e0 * im;
          dt.li[i] = -e0 * re;
          dz.lr[i] = -e0 * im;
          dz.li[i] = e0 * re;
          dx.lr[i] = grad[0] * c;
          dx.li[i] = grad[0] * s;
          dy.lr[i] = grad[1] * c;
          dy.li[i] = grad[1] * s;
        }
      }
    } else {
      differentiate(dx, hx, n, [&](std::size_t i, double k, Planes& p) {
        sample_spinor(spinor, xs[i] + k * hx, ys[i], zs[i], opt.t, p, i);
      });
      differentiate(dy, hy, n, [&](std::size_t i, double k, Planes& p) {
        sample_spinor(spinor, xs[i], ys[i] + k * hy, zs[i], opt.t, p, i);
      });
      differentiate(dz, hz, n, [&](std::size_t i, double k, Planes& p) {
        sample_spinor(spinor, xs[i], ys[i], zs[i] + k * hz, opt.t, p, i);
      });
      // Time: always the 5-point stencil, so spatial truncation dominates.
      for (std::size_t i = 0; i < n; ++i) {
        sample_spinor(spinor, xs[i], ys[i], zs[i], opt.t + 2.0 * ht, sp2, i);
        sample_spinor(spinor, xs[i], ys[i], zs[i], opt.t + ht, sp1, i);
        sample_spinor(spinor, xs[i], ys[i], zs[i], opt.t - ht, sm1, i);
        sample_spinor(spinor, xs[i], ys[i], zs[i], opt.t - 2.0 * ht, sm2, i);
      }
      const double inv_12h = 1.0 / (12.0 * ht);
      kt.fd_central4(dt.ur.data(), sp2.ur.data(), sp1.ur.data(), sm1.ur.data(), sm2.ur.data(),
                     inv_12h, n);
      kt.fd_central4(dt.ui.data(), sp2.ui.data(), sp1.ui.data(), sm1.ui.data(), sm2.ui.data(),
                     inv_12h, n);
      kt.fd_central4(dt.lr.data(), sp2.lr.data(), sp1.lr.data(), sm1.lr.data(), sm2.lr.data(),
                     inv_12h, n);
      kt.fd_central4(dt.li.data(), sp2.li.data(), sp1.li.data(), sm1.li.data(), sm2.li.data(),
                     inv_12h, n);
    }

    for (std::size_t i = 0; i < n; ++i) {
      a0[i] = pot.components[0](xs[i], ys[i], zs[i], opt.t);
      a1[i] = pot.components[1](xs[i], ys[i], zs[i], opt.t);
      a2[i] = pot.components[2](xs[i], ys[i], zs[i], opt.t);
      a3[i] = pot.components[3](xs[i], ys[i], zs[i], opt.t);
    }

    kernels::WeylInputs in{psi.view(), dt.view(),  dx.view(),  dy.view(), dz.view(),
                           a0.data(),  a1.data(),  a2.data(),  a3.data()};
    kt.weyl_combine(out.ur.data(), out.ui.data(), out.lr.data(), out.li.data(), in, eta, n);
    worst = std::max(worst, kt.residual_ratio_max(out.view(), psi.view(), e0, kFloor, n));
    done += n;
  }

  if (!std::isfinite(worst)) {
    throw numeric_error("non-finite residual; spinor or potential produced invalid samples");
  }
  return worst;
}

Grid3 default_grid(const ScalarProfile& profile, double e0, std::size_t interior_per_axis,
                   int order) {
  if (!(e0 > 0.0)) {
    throw input_error("carrier energy must be positive");
  }
  const Rect& d = profile.positivity_domain;
  return make_grid({d.x_lo, d.y_lo, 0.0}, {d.x_hi, d.y_hi, 2.0 * std::numbers::pi / e0},
                   interior_per_axis, order);
}

MaxwellResiduals maxwell_residuals(const EMField& em, const Grid3& grid, double t) {
  MaxwellResiduals r;
  const double hx = grid.spacing[0];
  const double hy = grid.spacing[1];
  const double hz = grid.spacing[2];
  const double ht = hz;

  for (std::size_t ix = 1; ix + 1 < grid.counts[0]; ++ix) {
    for (std::size_t iy = 1; iy + 1 < grid.counts[1]; ++iy) {
      for (std::size_t iz = 1; iz + 1 < grid.counts[2]; ++iz) {
        const double x = grid.coord(0, ix);
        const double y = grid.coord(1, iy);
        const double z = grid.coord(2, iz);

        const auto e_xp = em.e(x + hx, y, z, t), e_xm = em.e(x - hx, y, z, t);
        const auto e_yp = em.e(x, y + hy, z, t), e_ym = em.e(x, y - hy, z, t);
        const auto e_zp = em.e(x, y, z + hz, t), e_zm = em.e(x, y, z - hz, t);
        const auto b_xp = em.b(x + hx, y, z, t), b_xm = em.b(x - hx, y, z, t);
        const auto b_yp = em.b(x, y + hy, z, t), b_ym = em.b(x, y - hy, z, t);
        const auto b_zp = em.b(x, y, z + hz, t), b_zm = em.b(x, y, z - hz, t);
        const auto b_tp = em.b(x, y, z, t + ht), b_tm = em.b(x, y, z, t - ht);

        const double div_b = (b_xp[0] - b_xm[0]) / (2.0 * hx) + (b_yp[1] - b_ym[1]) / (2.0 * hy) +
                             (b_zp[2] - b_zm[2]) / (2.0 * hz);

        const double curl_e_x = (e_yp[2] - e_ym[2]) / (2.0 * hy) - (e_zp[1] - e_zm[1]) / (2.0 * hz);
        const double curl_e_y = (e_zp[0] - e_zm[0]) / (2.0 * hz) - (e_xp[2] - e_xm[2]) / (2.0 * hx);
        const double curl_e_z = (e_xp[1] - e_xm[1]) / (2.0 * hx) - (e_yp[0] - e_ym[0]) / (2.0 * hy);

        const double faraday_x = curl_e_x + (b_tp[0] - b_tm[0]) / (2.0 * ht);
        const double faraday_y = curl_e_y + (b_tp[1] - b_tm[1]) / (2.0 * ht);
        const double faraday_z = curl_e_z + (b_tp[2] - b_tm[2]) / (2.0 * ht);

        r.max_div_b = std::max(r.max_div_b, std::abs(div_b));
        r.max_curl_residual = std::max({r.max_curl_residual, std::abs(faraday_x),
                                        std::abs(faraday_y), std::abs(faraday_z)});

        const auto e_c = em.e(x, y, z, t);
        const auto b_c = em.b(x, y, z, t);
        for (int k = 0; k < 3; ++k) {
          r.field_scale = std::max({r.field_scale, std::abs(e_c[static_cast<std::size_t>(k)]),
                                    std::abs(b_c[static_cast<std::size_t>(k)])});
        }
      }
    }
  }
  return r;
}

}  // namespace wps::fieldkit
