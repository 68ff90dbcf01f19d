// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_SERIES_HPP
#define HELMBEM_SERIES_HPP

#include <array>
#include <vector>

#include "helmbem/types.hpp"

namespace helmbem {

// Spherical Bessel values j_0..j_n (downward/Miller recurrence with
// normalization) and y_0..y_n (upward recurrence). h^(1)_n = j_n + i y_n.
struct SphericalFunctions {
  std::vector<Real> j;
  std::vector<Real> y;
};
SphericalFunctions spherical_bessel(int n_max, Real x);

// Derivative from the values via xi'_n = xi_{n-1} - (n+1)/x xi_n (n >= 1),
// xi'_0 = -xi_1; works for j, y and their complex combinations.
template <typename Scalar>
Scalar sph_derivative(const std::vector<Scalar>& xi, int n, Real x) {
  if (n == 0) return -xi[1];
  return xi[static_cast<size_t>(n) - 1] - ((n + 1) / x) * xi[static_cast<size_t>(n)];
}

// Legendre P_0..P_n at t via the three-term recurrence.
std::vector<Real> legendre_array(int n_max, Real t);

// Associated Legendre P_n^m (Condon-Shortley phase) and the spherical
// harmonic sqrt((n-m)!/(n+m)!) P_n^m(cos theta) e^{i m phi}; only m = 0
// enters the axisymmetric benchmark.
Real assoc_legendre(int n, int m, Real t);
Complex spherical_harmonic(int n, int m, Real theta, Real phi);

// Analytic plane-wave scattering by two concentric spheres (inner ball
// Omega_3 of radius r_inner, shell Omega_2 to r_outer, exterior Omega_1).
// The polar axis is the propagation direction, so only m = 0 contributes;
// per mode the fields are
//   region 1: (j_n(k1 r) + a_n h_n(k1 r)) * (2n+1) i^n P_n(cos theta)
//   region 2: (b_n j_n(k2 r) + c_n h_n(k2 r)) * ...
//   region 3: (d_n j_n(k3 r)) * ...
// with continuity of u and (1/eps) du/dr at both radii.
struct SeriesSolution {
  Real r_inner = 0, r_outer = 0;
  std::array<Real, 3> k{};    // k_1, k_2, k_3
  std::array<Real, 3> eps{};  // eps_1, eps_2, eps_3
  Vec3 direction = Vec3(0, 0, 1);
  int n_max = 50;
  std::vector<std::array<Complex, 4>> coeff;  // per mode: a, b, c, d
};

SeriesSolution series_coefficients(Real omega, const std::vector<Real>& epsilons, Real r_inner,
                                   Real r_outer, int n_max = 50,
                                   const Vec3& direction = Vec3(0, 0, 1));

Complex eval_analytic(const SeriesSolution& sol, const Vec3& x);

// sqrt( sum |u_num - u_ana|^2 / sum |u_ana|^2 ).
Real l2_error(const VectorXc& u_num, const VectorXc& u_ana);

}  // namespace helmbem

#endif  // HELMBEM_SERIES_HPP
