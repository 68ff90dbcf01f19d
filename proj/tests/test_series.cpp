// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helmbem/series.hpp"

using namespace helmbem;

namespace {

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<Real> gauss;
  Vec3 v(gauss(rng), gauss(rng), gauss(rng));
  while (v.norm() < 1e-3) v = Vec3(gauss(rng), gauss(rng), gauss(rng));
  return v.normalized();
}

// Radial flux (1/eps) du/dr of the series solution, evaluated modally on the
// side of radius r selected by `side` (+1 just outside, -1 just inside).
Complex radial_flux(const SeriesSolution& sol, const Vec3& x, int side) {
  const Real r = x.norm() * (1.0 + side * 1e-12);
  const Real cos_theta = std::clamp(x.normalized().dot(sol.direction), -1.0, 1.0);
  const std::vector<Real> pn = legendre_array(sol.n_max, cos_theta);

  int region;
  if (r >= sol.r_outer) region = 0;
  else if (r >= sol.r_inner) region = 1;
  else region = 2;
  const Real k = sol.k[static_cast<size_t>(region)];
  const Real eps = sol.eps[static_cast<size_t>(region)];
  const SphericalFunctions f = spherical_bessel(sol.n_max, k * r);
  std::vector<Complex> h(static_cast<size_t>(sol.n_max) + 1);
  for (int n = 0; n <= sol.n_max; ++n)
    h[static_cast<size_t>(n)] = Complex(f.j[static_cast<size_t>(n)], f.y[static_cast<size_t>(n)]);

  Complex sum = 0;
  Complex in_power = 1.0;
  for (int n = 0; n <= sol.n_max; ++n) {
    const size_t sn = static_cast<size_t>(n);
    const Complex dj = sph_derivative(f.j, n, k * r);
    const Complex dh = sph_derivative(h, n, k * r);
    Complex radial;
    if (region == 0) radial = dj + sol.coeff[sn][0] * dh;
    else if (region == 1) radial = sol.coeff[sn][1] * dj + sol.coeff[sn][2] * dh;
    else radial = sol.coeff[sn][3] * dj;
    sum += (2.0 * n + 1.0) * in_power * pn[sn] * (k / eps) * radial;
    in_power *= kImag;
  }
  return sum;
}

}  // namespace

TEST_CASE("spherical Bessel Wronskian over the working range") {
  for (Real x : {0.1, 0.5, 1.0, 2.5, 7.0, 13.0, 25.0, 50.0}) {
    const SphericalFunctions f = spherical_bessel(50, x);
    for (int n = 0; n <= 49; ++n) {
      // j_{n+1} y_n - j_n y_{n+1} = 1/x^2
      const Real w = f.j[static_cast<size_t>(n) + 1] * f.y[static_cast<size_t>(n)] -
                     f.j[static_cast<size_t>(n)] * f.y[static_cast<size_t>(n) + 1];
      CHECK(std::abs(w * x * x - 1.0) < 1e-10);
    }
  }
  CHECK_THROWS_AS(spherical_bessel(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_bessel(5, -1.0), std::invalid_argument);
}

TEST_CASE("spherical Bessel closed forms") {
  for (Real x : {0.3, 1.0, 4.0}) {
    const SphericalFunctions f = spherical_bessel(3, x);
    CHECK(f.j[0] == doctest::Approx(std::sin(x) / x).epsilon(1e-13));
    CHECK(f.j[1] == doctest::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-12));
    CHECK(f.y[0] == doctest::Approx(-std::cos(x) / x).epsilon(1e-13));
    CHECK(f.y[1] == doctest::Approx(-std::cos(x) / (x * x) - std::sin(x) / x).epsilon(1e-12));
  }
}

TEST_CASE("Legendre recurrences and spherical harmonics") {
  for (Real t : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
    const std::vector<Real> p = legendre_array(4, t);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(t));
    CHECK(p[2] == doctest::Approx(0.5 * (3 * t * t - 1)).epsilon(1e-14));
    CHECK(p[3] == doctest::Approx(0.5 * (5 * t * t * t - 3 * t)).epsilon(1e-13));
    CHECK(assoc_legendre(2, 0, t) == doctest::Approx(p[2]).epsilon(1e-14));
  }
  // P_1^1 = -sqrt(1-t^2) with the Condon-Shortley phase.
  CHECK(assoc_legendre(1, 1, 0.6) == doctest::Approx(-0.8).epsilon(1e-14));
  // Y_n^0(theta, phi) = P_n(cos theta).
  const Complex y20 = spherical_harmonic(2, 0, 0.7, 1.3);
  CHECK(y20.real() == doctest::Approx(0.5 * (3 * std::pow(std::cos(0.7), 2) - 1)).epsilon(1e-13));
  CHECK(y20.imag() == doctest::Approx(0.0));
  // e^{i m phi} dependence.
  const Complex y11 = spherical_harmonic(1, 1, 0.7, 0.4);
  CHECK(std::arg(y11 / spherical_harmonic(1, 1, 0.7, 0.0)) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("homogeneous media reduce the series to the incident wave") {
  const SeriesSolution sol = series_coefficients(2.0, {1.0, 1.0, 1.0}, 0.5, 1.0, 40);
  for (int n = 0; n <= 40; ++n) {
    CHECK(std::abs(sol.coeff[static_cast<size_t>(n)][0]) < 1e-12);  // no scattering
    CHECK(std::abs(sol.coeff[static_cast<size_t>(n)][2]) < 1e-12);  // no shell outgoing part
  }
  std::mt19937 rng(3);
  std::uniform_real_distribution<Real> uni(0.05, 2.5);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 x = uni(rng) * random_unit(rng);
    const Complex u = eval_analytic(sol, x);
    const Complex incident = std::polar(1.0, 2.0 * x.z());
    CHECK(std::abs(u - incident) < 1e-12);
  }
}

TEST_CASE("series satisfies both transmission conditions at both interfaces") {
  std::mt19937 rng(17);
  const SeriesSolution sol = series_coefficients(5.0, {1.0, 2.0, 3.0}, 0.5, 1.0, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 dir = random_unit(rng);
    for (Real r : {0.5, 1.0}) {
      const Vec3 x = r * dir;
      const Complex u_out = eval_analytic(sol, x * (1 + 1e-12));
      const Complex u_in = eval_analytic(sol, x * (1 - 1e-12));
      CHECK(std::abs(u_out - u_in) <= 1e-8 * std::max(std::abs(u_out), 0.1));
      const Complex w_out = radial_flux(sol, x, +1);
      const Complex w_in = radial_flux(sol, x, -1);
      CHECK(std::abs(w_out - w_in) <= 1e-8 * std::max(std::abs(w_out), 1.0));
    }
  }
}

TEST_CASE("series coefficients decay superexponentially past kr") {
  const SeriesSolution sol = series_coefficients(5.0, {1.0, 2.0, 3.0}, 0.5, 1.0, 50);
  Real amax = 0;
  for (int n = 0; n <= 50; ++n)
    amax = std::max(amax, std::abs(sol.coeff[static_cast<size_t>(n)][0]));
  CHECK(amax > 0);
  CHECK(std::abs(sol.coeff[25][0]) < 1e-20 * amax);
  CHECK(std::abs(sol.coeff[50][0]) < 1e-40 * amax);
}

TEST_CASE("series is stable under truncation-order changes") {
  const SeriesSolution s50 = series_coefficients(5.0, {1.0, 2.0, 3.0}, 0.5, 1.0, 50);
  const SeriesSolution s60 = series_coefficients(5.0, {1.0, 2.0, 3.0}, 0.5, 1.0, 60);
  std::mt19937 rng(23);
  std::uniform_real_distribution<Real> uni(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 x = uni(rng) * random_unit(rng);
    const Complex a = eval_analytic(s50, x);
    const Complex b = eval_analytic(s60, x);
    CHECK(std::abs(a - b) < 1e-10 * std::max(std::abs(a), 1.0));
  }
}

TEST_CASE("scattered far field decays like 1/r") {
  const SeriesSolution sol = series_coefficients(1.0, {1.0, 2.0, 3.0}, 0.5, 1.0, 50);
  const Vec3 ray = Vec3(1, 1, 1).normalized();
  auto scattered = [&](Real r) {
    return eval_analytic(sol, ray * r) - std::polar(1.0, r * ray.z());
  };
  const Real ratio = std::abs(scattered(20.0)) / std::abs(scattered(10.0));
  CHECK(ratio == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("series input validation") {
  CHECK_THROWS_AS(series_coefficients(1.0, {1.0, 2.0}, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(series_coefficients(1.0, {1.0, 2.0, 3.0}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(series_coefficients(0.0, {1.0, 2.0, 3.0}, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("relative l2 error") {
  VectorXc a(3), b(3);
  a << Complex(1, 0), Complex(0, 1), Complex(2, 2);
  b = a;
  CHECK(l2_error(a, b) == doctest::Approx(0.0));
  b *= 1.01;  // uniform 1% scaling
  CHECK(l2_error(b, a) == doctest::Approx(0.01).epsilon(1e-10));

  VectorXc c(2);
  c << Complex(1, 0), Complex(0, 0);
  CHECK_THROWS_AS(l2_error(a, c), std::invalid_argument);
  VectorXc zero = VectorXc::Zero(3);
  CHECK_THROWS_AS(l2_error(a, zero), std::invalid_argument);
}
