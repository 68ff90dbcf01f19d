// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/series.hpp"

#include <cmath>
#include <stdexcept>

namespace helmbem {

namespace {

Complex hankel(const SphericalFunctions& f, int n) {
  return {f.j[static_cast<size_t>(n)], f.y[static_cast<size_t>(n)]};
}

std::vector<Complex> hankel_array(const SphericalFunctions& f) {
  std::vector<Complex> h(f.j.size());
  for (size_t n = 0; n < h.size(); ++n) h[n] = Complex(f.j[n], f.y[n]);
  return h;
}

}  // namespace

SphericalFunctions spherical_bessel(int n_max, Real x) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (!(x > 0)) throw std::invalid_argument("spherical_bessel needs x > 0");
  SphericalFunctions f;
  const size_t count = static_cast<size_t>(n_max) + 2;  // one extra for derivatives
  f.j.resize(count);
  f.y.resize(count);

  // j_n by Miller's downward recurrence, started well above n_max and
  // normalized against the closed forms at n = 0 or 1 (whichever is larger).
  const int start = n_max + 16 + static_cast<int>(1.5 * x);
  Real jp1 = 0.0, jn = 1e-300;
  std::vector<Real> unnormalized(count, 0.0);
  for (int n = start; n >= 0; --n) {
    const Real jm1 = ((2.0 * n + 3.0) / x) * jn - jp1;
    jp1 = jn;
    jn = jm1;
    if (n < static_cast<int>(count)) unnormalized[static_cast<size_t>(n)] = jn;
    if (std::abs(jn) > 1e250) {  // rescale to avoid overflow
      jn *= 1e-250;
      jp1 *= 1e-250;
      for (Real& v : unnormalized) v *= 1e-250;
    }
  }
  const Real j0 = std::sin(x) / x;
  const Real j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const Real scale = std::abs(unnormalized[0]) >= std::abs(unnormalized[1])
                         ? j0 / unnormalized[0]
                         : j1 / unnormalized[1];
  for (size_t n = 0; n < count; ++n) f.j[n] = unnormalized[n] * scale;

  f.y[0] = -std::cos(x) / x;
  if (count > 1) f.y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (size_t n = 2; n < count; ++n)
    f.y[n] = ((2.0 * static_cast<Real>(n) - 1.0) / x) * f.y[n - 1] - f.y[n - 2];
  return f;
}

std::vector<Real> legendre_array(int n_max, Real t) {
  std::vector<Real> p(static_cast<size_t>(n_max) + 1);
  p[0] = 1.0;
  if (n_max >= 1) p[1] = t;
  for (int n = 1; n < n_max; ++n)
    p[static_cast<size_t>(n) + 1] =
        ((2.0 * n + 1.0) * t * p[static_cast<size_t>(n)] - n * p[static_cast<size_t>(n) - 1]) /
        (n + 1.0);
  return p;
}

Real assoc_legendre(int n, int m, Real t) {
  if (m < 0 || m > n) throw std::invalid_argument("assoc_legendre needs 0 <= m <= n");
  // Seed P_m^m = (-1)^m (2m-1)!! (1-t^2)^{m/2}, then climb n with the
  // standard (n-m+1) P_{n+1}^m = (2n+1) t P_n^m - (n+m) P_{n-1}^m.
  Real pmm = 1.0;
  const Real somt2 = std::sqrt(std::max(0.0, 1.0 - t * t));
  for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * somt2;
  if (n == m) return pmm;
  Real pm1 = t * (2.0 * m + 1.0) * pmm;
  if (n == m + 1) return pm1;
  Real result = 0;
  for (int l = m + 2; l <= n; ++l) {
    result = ((2.0 * l - 1.0) * t * pm1 - (l + m - 1.0) * pmm) / (l - m);
    pmm = pm1;
    pm1 = result;
  }
  return result;
}

Complex spherical_harmonic(int n, int m, Real theta, Real phi) {
  const int am = std::abs(m);
  Real ratio = 1.0;  // sqrt((n-|m|)! / (n+|m|)!)
  for (int i = n - am + 1; i <= n + am; ++i) ratio /= static_cast<Real>(i);
  const Real p = assoc_legendre(n, am, std::cos(theta));
  Complex y = std::sqrt(ratio) * p * std::polar(1.0, am * phi);
  if (m < 0) y = std::conj(y) * ((am % 2 == 0) ? 1.0 : -1.0);
  return y;
}

SeriesSolution series_coefficients(Real omega, const std::vector<Real>& epsilons, Real r_inner,
                                   Real r_outer, int n_max, const Vec3& direction) {
  if (!(r_inner > 0 && r_inner < r_outer)) throw std::invalid_argument("need 0 < r_inner < r_outer");
  if (epsilons.size() != 3) throw std::invalid_argument("need three regions");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");

  SeriesSolution sol;
  sol.r_inner = r_inner;
  sol.r_outer = r_outer;
  for (int i = 0; i < 3; ++i) {
    sol.eps[static_cast<size_t>(i)] = epsilons[static_cast<size_t>(i)];
    sol.k[static_cast<size_t>(i)] = omega * std::sqrt(epsilons[static_cast<size_t>(i)]);
  }
  sol.direction = direction.normalized();
  sol.n_max = n_max;
  sol.coeff.resize(static_cast<size_t>(n_max) + 1);

  const Real k1 = sol.k[0], k2 = sol.k[1], k3 = sol.k[2];
  const Real e1 = sol.eps[0], e2 = sol.eps[1], e3 = sol.eps[2];
  const SphericalFunctions f1o = spherical_bessel(n_max, k1 * r_outer);
  const SphericalFunctions f2o = spherical_bessel(n_max, k2 * r_outer);
  const SphericalFunctions f2i = spherical_bessel(n_max, k2 * r_inner);
  const SphericalFunctions f3i = spherical_bessel(n_max, k3 * r_inner);
  const std::vector<Complex> h1o = hankel_array(f1o);
  const std::vector<Complex> h2o = hankel_array(f2o);
  const std::vector<Complex> h2i = hankel_array(f2i);

  for (int n = 0; n <= n_max; ++n) {
    const size_t sn = static_cast<size_t>(n);
    // Unknowns (a, b, c, d); continuity of u and (1/eps) du/dr at both radii.
    Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();

    A(0, 0) = h1o[sn];
    A(0, 1) = -f2o.j[sn];
    A(0, 2) = -h2o[sn];
    rhs(0) = -f1o.j[sn];

    A(1, 0) = (k1 / e1) * sph_derivative(h1o, n, k1 * r_outer);
    A(1, 1) = -(k2 / e2) * sph_derivative(f2o.j, n, k2 * r_outer);
    A(1, 2) = -(k2 / e2) * sph_derivative(h2o, n, k2 * r_outer);
    rhs(1) = -(k1 / e1) * sph_derivative(f1o.j, n, k1 * r_outer);

    A(2, 1) = f2i.j[sn];
    A(2, 2) = h2i[sn];
    A(2, 3) = -f3i.j[sn];

    A(3, 1) = (k2 / e2) * sph_derivative(f2i.j, n, k2 * r_inner);
    A(3, 2) = (k2 / e2) * sph_derivative(h2i, n, k2 * r_inner);
    A(3, 3) = -(k3 / e3) * sph_derivative(f3i.j, n, k3 * r_inner);

    // Column equilibration keeps the solve well-scaled when y_n blows up.
    Eigen::Vector4d colscale;
    for (int c = 0; c < 4; ++c) {
      const Real m = A.col(c).cwiseAbs().maxCoeff();
      colscale(c) = m > 0 ? 1.0 / m : 1.0;
      A.col(c) *= colscale(c);
    }
    const Eigen::Vector4cd scaled = A.fullPivLu().solve(rhs);
    if (!scaled.allFinite())
      throw std::runtime_error("singular series system at mode " + std::to_string(n));
    for (int c = 0; c < 4; ++c) sol.coeff[sn][static_cast<size_t>(c)] = scaled(c) * colscale(c);
  }
  return sol;
}

Complex eval_analytic(const SeriesSolution& sol, const Vec3& x) {
  const Real r = x.norm();
  if (r < 1e-14) return sol.coeff[0][3];  // only the n = 0 interior mode survives

  const Real cos_theta = std::clamp(x.dot(sol.direction) / r, -1.0, 1.0);
  const std::vector<Real> pn = legendre_array(sol.n_max, cos_theta);

  Complex u = 0;
  Complex in_power = 1.0;  // i^n
  if (r >= sol.r_outer) {
    const SphericalFunctions f = spherical_bessel(sol.n_max, sol.k[0] * r);
    for (int n = 0; n <= sol.n_max; ++n) {
      const size_t sn = static_cast<size_t>(n);
      u += (2.0 * n + 1.0) * in_power * pn[sn] * (f.j[sn] + sol.coeff[sn][0] * hankel(f, n));
      in_power *= kImag;
    }
  } else if (r >= sol.r_inner) {
    const SphericalFunctions f = spherical_bessel(sol.n_max, sol.k[1] * r);
    for (int n = 0; n <= sol.n_max; ++n) {
      const size_t sn = static_cast<size_t>(n);
      u += (2.0 * n + 1.0) * in_power * pn[sn] *
           (sol.coeff[sn][1] * f.j[sn] + sol.coeff[sn][2] * hankel(f, n));
      in_power *= kImag;
    }
  } else {
    const SphericalFunctions f = spherical_bessel(sol.n_max, sol.k[2] * r);
    for (int n = 0; n <= sol.n_max; ++n) {
      const size_t sn = static_cast<size_t>(n);
      u += (2.0 * n + 1.0) * in_power * pn[sn] * sol.coeff[sn][3] * f.j[sn];
      in_power *= kImag;
    }
  }
  return u;
}

Real l2_error(const VectorXc& u_num, const VectorXc& u_ana) {
  if (u_num.size() != u_ana.size()) throw std::invalid_argument("l2_error: length mismatch");
  const Real denom = u_ana.squaredNorm();
  if (!(denom > 0)) throw std::invalid_argument("l2_error: zero reference");
  return std::sqrt((u_num - u_ana).squaredNorm() / denom);
}

}  // namespace helmbem
