#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "wps/errors.hpp"
#include "wps/fieldkit/fields.hpp"
#include "wps/fieldkit/profile.hpp"
#include "wps/fieldkit/residual.hpp"
#include "wps/grid.hpp"

using namespace wps;
using namespace wps::fieldkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarProfile unit_gaussian() { return supergaussian({0.0, 0.0, 1.0, 1.0, 1.0, 1.0}); }

// Grid whose spacing is only used as a finite-difference step size.
Grid3 step_grid(double h) { return Grid3({-1.0, -1.0, -1.0}, {h, h, h}, {5, 5, 5}); }

}  // namespace

TEST_CASE("super-Gaussian profile values and analytic derivatives") {
  const SuperGaussianParams q{0.1, -0.2, 0.9, 1.2, 2.0, 3.0};
  const ScalarProfile p = supergaussian(q);
  CHECK(p.smooth);

  // Peak value 1 at the center, symmetric falloff.
  CHECK(p.evaluate(0.1, -0.2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.evaluate(0.1 + 0.4, -0.2) == doctest::Approx(p.evaluate(0.1 - 0.4, -0.2)).epsilon(1e-14));

  // Analytic gradient and second derivatives against tight central
  // differences of the evaluate callable.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-0.8, 1.0), uy(-1.2, 0.8);
  const double h = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng), y = uy(rng);
    const auto grad = p.gradient(x, y);
    const auto hess = p.hessian_trace_parts(x, y);
    const double fx = (p.evaluate(x + h, y) - p.evaluate(x - h, y)) / (2 * h);
    const double fy = (p.evaluate(x, y + h) - p.evaluate(x, y - h)) / (2 * h);
    const double fxx =
        (p.evaluate(x + h, y) - 2 * p.evaluate(x, y) + p.evaluate(x - h, y)) / (h * h);
    const double fyy =
        (p.evaluate(x, y + h) - 2 * p.evaluate(x, y) + p.evaluate(x, y - h)) / (h * h);
    CHECK(grad[0] == doctest::Approx(fx).epsilon(1e-8));
    CHECK(grad[1] == doctest::Approx(fy).epsilon(1e-8));
    CHECK(hess[0] == doctest::Approx(fxx).epsilon(1e-5));
    CHECK(hess[1] == doctest::Approx(fyy).epsilon(1e-5));
  }
}

TEST_CASE("positivity domain half-widths per exponent") {
  // Width where exp(-g) reaches 1e-6, capped at the plain-Gaussian 3 sigma.
  const ScalarProfile p1 = supergaussian({0.0, 0.0, 2.0, 1.0, 1.0, 2.0});
  CHECK(p1.positivity_domain.x_hi == doctest::Approx(2.0 * 3.0).epsilon(1e-14));
  CHECK(p1.positivity_domain.x_lo == doctest::Approx(-2.0 * 3.0).epsilon(1e-14));
  CHECK(p1.positivity_domain.y_hi == doctest::Approx(1.9279321017219041).epsilon(1e-14));

  const ScalarProfile p3 = supergaussian({0.5, 0.0, 1.0, 1.0, 3.0, 3.0});
  CHECK(p3.positivity_domain.x_hi == doctest::Approx(0.5 + 1.5490347356476176).epsilon(1e-14));
  CHECK(p3.positivity_domain.x_lo == doctest::Approx(0.5 - 1.5490347356476176).epsilon(1e-14));

  // The bound is honest: f stays above 1e-6 inside, dips below outside.
  CHECK(p3.evaluate(p3.positivity_domain.x_hi * 0.999, 0.0) > 1e-6);
  CHECK(p1.evaluate(0.0, p1.positivity_domain.y_hi * 1.01) < 1e-6);
}

TEST_CASE("exponents below one are flagged and guarded") {
  const ScalarProfile p = supergaussian({0.0, 0.0, 1.0, 1.0, 0.5, 1.0});
  CHECK_FALSE(p.smooth);
  CHECK(p.evaluate(0.3, 0.2) > 0.0);           // values stay fine
  CHECK(p.gradient(0.3, 0.2)[0] < 0.0);        // derivatives off-center too
  CHECK_THROWS_AS(p.gradient(0.0, 0.2), domain_error);  // singular center line
  CHECK_THROWS_AS(p.hessian_trace_parts(0.0, 0.2), domain_error);
}

TEST_CASE("profile parameter validation") {
  CHECK_THROWS_AS(supergaussian({0.0, 0.0, 0.0, 1.0, 1.0, 1.0}), input_error);
  CHECK_THROWS_AS(supergaussian({0.0, 0.0, 1.0, -1.0, 1.0, 1.0}), input_error);
  CHECK_THROWS_AS(supergaussian({0.0, 0.0, 1.0, 1.0, 0.0, 1.0}), input_error);
  CHECK_THROWS_AS(supergaussian({std::nan(""), 0.0, 1.0, 1.0, 1.0, 1.0}), input_error);
  CHECK_THROWS_AS(constant_profile(0.0, {-1, 1, -1, 1}), input_error);
  CHECK_THROWS_AS(constant_profile(1.0, {1, -1, -1, 1}), input_error);
}

TEST_CASE("difference fallbacks for profiles without analytic derivatives") {
  const ScalarProfile full = unit_gaussian();
  ScalarProfile bare = full;
  bare.gradient = nullptr;
  bare.hessian_trace_parts = nullptr;
  for (const auto& pt : {std::array<double, 2>{0.4, -0.6}, {1.2, 0.9}, {-2.0, 0.1}}) {
    const auto ga = full.gradient(pt[0], pt[1]);
    const auto gn = profile_gradient(bare, pt[0], pt[1]);
    CHECK(gn[0] == doctest::Approx(ga[0]).epsilon(1e-9));
    CHECK(gn[1] == doctest::Approx(ga[1]).epsilon(1e-9));
    const auto ha = full.hessian_trace_parts(pt[0], pt[1]);
    const auto hn = profile_hessian_parts(bare, pt[0], pt[1]);
    CHECK(hn[0] == doctest::Approx(ha[0]).epsilon(1e-4));
    CHECK(hn[1] == doctest::Approx(ha[1]).epsilon(1e-4));
  }
}

TEST_CASE("envelope spinor evaluation") {
  const ScalarProfile prof = constant_profile(2.5, {-1, 1, -1, 1});
  const SpinorField up = positive_spinor(prof, 2.0);
  const SpinorField dn = negative_spinor(prof, 2.0);

  const Spinor2 u = up.evaluate(0.0, 0.0, 0.4, 0.1);  // phase = 2 (z - t) = 0.6
  CHECK(u.upper.real() == doctest::Approx(2.5 * std::cos(0.6)).epsilon(1e-15));
  CHECK(u.upper.imag() == doctest::Approx(2.5 * std::sin(0.6)).epsilon(1e-15));
  CHECK(u.lower == cdouble{0.0, 0.0});

  const Spinor2 d = dn.evaluate(0.0, 0.0, 0.4, 0.1);
  CHECK(d.upper == cdouble{0.0, 0.0});
  CHECK(d.lower.real() == doctest::Approx(2.5 * std::cos(0.6)).epsilon(1e-15));

  // The envelope multiplies the carrier pointwise.
  const SpinorField g = positive_spinor(unit_gaussian(), 2.0);
  const double f = unit_gaussian().evaluate(0.7, -0.3);
  CHECK(std::abs(g.evaluate(0.7, -0.3, 0.4, 0.1).upper) == doctest::Approx(f).epsilon(1e-14));

  CHECK_THROWS_AS(positive_spinor(prof, 0.0), input_error);
  CHECK_THROWS_AS(negative_spinor(prof, -1.0), input_error);
}

TEST_CASE("guiding potential components and accessors") {
  const ScalarProfile prof = unit_gaussian();
  for (const Helicity h : {Helicity::positive, Helicity::negative}) {
    const double eta = helicity_sign(h);
    const FourPotential pot = guiding_potential(prof, h);
    const double x = 0.6, y = -0.4;
    const auto grad = prof.gradient(x, y);
    const double f = prof.evaluate(x, y);
    const auto a = pot.evaluate(x, y, 0.3, 0.2);
    CHECK(a[0] == 0.0);
    CHECK(a[3] == 0.0);
    CHECK(a[1] == doctest::Approx(eta * grad[1] / f).epsilon(1e-14));
    CHECK(a[2] == doctest::Approx(-eta * grad[0] / f).epsilon(1e-14));

    // Physical accessors: U = a0/q, A = -(1/q) a_vec.
    CHECK(pot.electric_potential(2.0, x, y, 0, 0) == 0.0);
    const auto vec = pot.vector_potential(-2.0, x, y, 0, 0);
    CHECK(vec[0] == doctest::Approx(a[1] / 2.0).epsilon(1e-14));
    CHECK(vec[1] == doctest::Approx(a[2] / 2.0).epsilon(1e-14));
    CHECK(vec[2] == 0.0);

    CHECK_THROWS_AS(pot.components[1](5.0, 0.0, 0.0, 0.0), domain_error);
    CHECK_THROWS_AS(pot.vector_potential(0.0, x, y, 0, 0), input_error);
  }
}

TEST_CASE("transverse magnetic field: frozen anchor values") {
  // Isotropic Gaussian: the field is uniform, -4 / sigma^2 at sigma = 1.3.
  const EMField iso = supergaussian_bfield({0.0, 0.0, 1.3, 1.3, 1.0, 1.0}, 1.0);
  CHECK(iso.b(0.0, 0.0, 0, 0)[2] == doctest::Approx(-2.3668639053254438).epsilon(1e-13));
  CHECK(iso.b(0.9, -1.1, 0, 0)[2] == doctest::Approx(-2.3668639053254438).epsilon(1e-13));
  CHECK(iso.e(0.9, -1.1, 0, 0)[0] == 0.0);

  // Anisotropic Gaussian, still uniform.
  const EMField aniso = supergaussian_bfield({0.0, 0.0, 1.1, 0.7, 1.0, 1.0}, 1.0);
  CHECK(aniso.b(0.25, -0.4, 0, 0)[2] == doctest::Approx(-5.7345252150446956).epsilon(1e-13));

  // Genuine super-Gaussian: position-dependent.
  const EMField sg = supergaussian_bfield({0.1, -0.2, 0.9, 1.2, 2.0, 3.0}, 1.0);
  CHECK(sg.b(0.6, 0.5, 0, 0)[2] == doctest::Approx(-6.984743834304984).epsilon(1e-13));

  // Charge and helicity scalings.
  const EMField neg = supergaussian_bfield({0.1, -0.2, 0.9, 1.2, 2.0, 3.0}, -2.0);
  CHECK(neg.b(0.6, 0.5, 0, 0)[2] == doctest::Approx(6.984743834304984 / 2).epsilon(1e-13));
  const EMField flip =
      supergaussian_bfield({0.1, -0.2, 0.9, 1.2, 2.0, 3.0}, 1.0, Helicity::negative);
  CHECK(flip.b(0.6, 0.5, 0, 0)[2] == doctest::Approx(6.984743834304984).epsilon(1e-13));
}

TEST_CASE("closed-form field equals envelope-curvature and curl routes") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uc(-0.5, 0.5), us(0.6, 1.6);
  std::uniform_int_distribution<int> up(1, 3);
  for (int trial = 0; trial < 5; ++trial) {
    SuperGaussianParams q{uc(rng), uc(rng), us(rng), us(rng),
                          static_cast<double>(up(rng)), static_cast<double>(up(rng))};
    if (trial == 0) q.p_x = q.p_y = 1.0;  // always cover the Gaussian case
    const double charge = (trial % 2 == 0) ? 1.0 : -2.0;
    const Helicity h = (trial % 2 == 0) ? Helicity::positive : Helicity::negative;
    CAPTURE(trial);

    const ScalarProfile prof = supergaussian(q);
    const EMField closed = supergaussian_bfield(q, charge, h);
    const EMField curvature = guiding_bfield(prof, charge, h);
    const EMField curl = em_from_potential(guiding_potential(prof, h), charge, step_grid(0.01));

    std::uniform_real_distribution<double> ux(q.x0 - us.a(), q.x0 + us.a()),
        uy(q.y0 - us.a(), q.y0 + us.a());
    for (int i = 0; i < 10; ++i) {
      const double x = ux(rng), y = uy(rng);
      const double want = closed.b(x, y, 0, 0)[2];
      const double scale = std::abs(want) + 1.0;
      CHECK(std::abs(curvature.b(x, y, 0, 0)[2] - want) / scale < 1e-10);
      CHECK(std::abs(curl.b(x, y, 0, 0)[2] - want) / scale < 1e-10);
      CHECK(curl.b(x, y, 0, 0)[0] == 0.0);
      CHECK(curl.e(x, y, 0, 0)[1] == 0.0);
    }
  }
}

TEST_CASE("difference-based curl route converges to the closed form") {
  const SuperGaussianParams q{0.1, -0.2, 0.9, 1.2, 2.0, 3.0};
  FourPotential pot = guiding_potential(supergaussian(q), Helicity::positive);
  pot.jacobian = nullptr;  // force the numeric fallback
  const EMField closed = supergaussian_bfield(q, 1.0);
  const double want = closed.b(0.6, 0.5, 0, 0)[2];
  const double err1 = std::abs(em_from_potential(pot, 1.0, step_grid(0.02)).b(0.6, 0.5, 0, 0)[2] - want);
  const double err2 = std::abs(em_from_potential(pot, 1.0, step_grid(0.01)).b(0.6, 0.5, 0, 0)[2] - want);
  CHECK(err1 / std::abs(want) < 1e-3);
  CHECK(err2 < err1 / 3.0);  // second-order step dependence
  CHECK_THROWS_AS(em_from_potential(pot, 0.0, step_grid(0.01)), input_error);
}

TEST_CASE("plane wave is an exact solution at zero potential") {
  const ScalarProfile flat = constant_profile(1.0, {-1, 1, -1, 1});
  const Grid3 grid = default_grid(flat, 5.0, 16, 2);
  for (const Helicity h : {Helicity::positive, Helicity::negative}) {
    const SpinorField sp =
        h == Helicity::positive ? positive_spinor(flat, 5.0) : negative_spinor(flat, 5.0);
    const double r = weyl_residual(sp, zero_potential(), grid, {DerivMode::analytic, 2, 0.0});
    CHECK(r <= 1e-12);
  }
}

TEST_CASE("envelope spinors solve the wave equation with their guiding potential") {
  for (const double p : {1.0, 2.0, 3.0}) {
    const SuperGaussianParams q{0.05, -0.1, 1.0, 1.2, p, p};
    const ScalarProfile prof = supergaussian(q);
    const Grid3 grid = default_grid(prof, 4.0, 32, 2);
    for (const Helicity h : {Helicity::positive, Helicity::negative}) {
      CAPTURE(p);
      const SpinorField sp =
          h == Helicity::positive ? positive_spinor(prof, 4.0) : negative_spinor(prof, 4.0);
      const FourPotential pot = guiding_potential(prof, h);
      CHECK(weyl_residual(sp, pot, grid, {DerivMode::analytic, 2, 0.5}) <= 1e-10);
    }
  }
}

TEST_CASE("mismatched potential sign is loudly rejected") {
  const ScalarProfile prof = unit_gaussian();
  const SpinorField sp = positive_spinor(prof, 4.0);
  const Grid3 grid = default_grid(prof, 4.0, 24, 2);
  // Same magnitude, opposite sign: the residual must be O(1), not small.
  const FourPotential wrong = guiding_potential(prof, Helicity::negative);
  CHECK(weyl_residual(sp, wrong, grid, {DerivMode::analytic, 2, 0.0}) >= 0.1);
}

TEST_CASE("difference-mode residual converges at second order") {
  const ScalarProfile prof = unit_gaussian();
  const double e0 = 6.0;
  const SpinorField sp = positive_spinor(prof, e0);
  const FourPotential pot = guiding_potential(prof, Helicity::positive);

  std::array<double, 3> res{};
  std::array<double, 3> spacing{};
  const std::size_t sizes[] = {24, 48, 96};
  for (int i = 0; i < 3; ++i) {
    const Grid3 g = make_grid({-1.5, -1.5, 0.0}, {1.5, 1.5, 2 * kPi / e0}, sizes[i], 2);
    res[i] = weyl_residual(sp, pot, g, {DerivMode::numeric, 2, 0.0});
    spacing[i] = g.spacing[0];
  }
  for (int i = 0; i + 1 < 3; ++i) {
    const double order =
        std::log(res[i] / res[i + 1]) / std::log(spacing[i] / spacing[i + 1]);
    CAPTURE(i);
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
  }

  // The 4th-order stencil beats the 2nd-order one on the same grid.
  const Grid3 g4 = make_grid({-1.5, -1.5, 0.0}, {1.5, 1.5, 2 * kPi / e0}, 48, 4);
  const double r4 = weyl_residual(sp, pot, g4, {DerivMode::numeric, 4, 0.0});
  CHECK(r4 < res[1] / 5.0);
}

TEST_CASE("default grid covers the profile domain and one carrier wavelength") {
  const ScalarProfile prof = unit_gaussian();
  const Grid3 g = default_grid(prof, 2.0, 48, 2);
  CHECK(g.counts[0] == 50);
  CHECK(g.origin[0] == doctest::Approx(prof.positivity_domain.x_lo).epsilon(1e-14));
  CHECK(g.coord(0, g.counts[0] - 1) == doctest::Approx(prof.positivity_domain.x_hi).epsilon(1e-14));
  CHECK(g.coord(2, g.counts[2] - 1) - g.origin[2] == doctest::Approx(kPi).epsilon(1e-14));

  const Grid3 g4 = default_grid(prof, 2.0, 48, 4);
  CHECK(g4.counts[0] == 52);  // wider stencil margin
}

TEST_CASE("homogeneous field identities and their violation detector") {
  // A standing wave E = (0, sin(t) sin(2x)/2, 0), B = (0, 0, cos(2x) cos(t))
  // satisfies both identities. The x and t wavenumbers differ, so the
  // checker's truncation errors cannot cancel and its second-order
  // differencing is visible in the refinement.
  EMField wave;
  wave.e = [](double x, double, double, double t) -> std::array<double, 3> {
    return {0.0, std::sin(t) * std::sin(2 * x) / 2, 0.0};
  };
  wave.b = [](double x, double, double, double t) -> std::array<double, 3> {
    return {0.0, 0.0, std::cos(2 * x) * std::cos(t)};
  };
  double prev = 0.0;
  for (const std::size_t n : {16u, 32u, 64u}) {
    const Grid3 g = make_grid({-1, -1, -1}, {1, 1, 1}, n, 2);
    const MaxwellResiduals m = maxwell_residuals(wave, g, 0.3);
    CHECK(m.field_scale == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m.max_div_b <= 1e-12);
    if (prev > 0.0) {
      CHECK(m.max_curl_residual < prev / 3.0);  // ~4x per halving
    }
    prev = m.max_curl_residual;
  }

  // A non-solution is flagged at O(1): curl E = (0,0,-1) with B constant.
  EMField bad;
  bad.e = [](double, double y, double, double) -> std::array<double, 3> { return {y, 0.0, 0.0}; };
  bad.b = [](double, double, double, double) -> std::array<double, 3> { return {0.0, 0.0, 1.0}; };
  const MaxwellResiduals mb = maxwell_residuals(bad, make_grid({-1, -1, -1}, {1, 1, 1}, 16, 2), 0.0);
  CHECK(mb.max_curl_residual == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mb.max_div_b <= 1e-12);

  // The guiding field itself is static and z-free: identically clean.
  const MaxwellResiduals mg = maxwell_residuals(
      guiding_bfield(unit_gaussian(), 1.0, Helicity::positive),
      make_grid({-1.4, -1.4, -1.4}, {1.4, 1.4, 1.4}, 16, 2), 0.0);
  CHECK(mg.max_div_b <= 1e-12 * mg.field_scale);
  CHECK(mg.max_curl_residual <= 1e-12 * mg.field_scale);
}
