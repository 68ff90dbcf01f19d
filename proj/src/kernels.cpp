// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace helmbem {

namespace {

const TriangleRule& rule16() {
  static const TriangleRule rule = duffy_rule(4);
  return rule;
}

const Rule1D& edge_rule10() {
  static const Rule1D rule = gauss_legendre(10);
  return rule;
}

Real diameter(const Element& e) {
  return std::sqrt(std::max({(e.v1 - e.v0).squaredNorm(), (e.v2 - e.v0).squaredNorm(),
                             (e.v2 - e.v1).squaredNorm()}));
}

// grad_y G = (y - x) (ikr - 1) e^{ikr} / (4 pi r^3).
Eigen::Vector3cd grad_green_y(Real k, const Vec3& x, const Vec3& y) {
  const Vec3 rho = y - x;
  const Real r2 = rho.squaredNorm();
  const Real r = std::sqrt(r2);
  const Complex g = std::polar(1.0 / (4.0 * kPi * r), k * r);
  return rho * ((kImag * (k * r) - 1.0) * g / r2);
}

// Edge contours of the Stokes-regularised hypersingular identity:
//   int_E d2G/dnx dny dS = k^2 (nx.nE) int_E G dS + oint_dE (nx x grad_y G).dl,
// with dl running counterclockwise w.r.t. the element normal. Valid for any
// x off the closed panel boundary; for the self element x is the centroid,
// strictly inside, so the contour integrand stays regular.
Complex hypersingular_contour(Real k, const Element& e, const Vec3& x, const Vec3& nx) {
  const Rule1D& gl = edge_rule10();
  const std::array<std::pair<Vec3, Vec3>, 3> edges = {
      std::make_pair(e.v0, e.v1), std::make_pair(e.v1, e.v2), std::make_pair(e.v2, e.v0)};
  Complex total = 0;
  for (const auto& [p, q] : edges) {
    const Vec3 seg = q - p;
    Complex line = 0;
    for (int i = 0; i < gl.nodes.size(); ++i) {
      const Vec3 y = p + gl.nodes[i] * seg;
      line += gl.weights[i] * nx.cross(grad_green_y(k, x, y)).dot(seg);
    }
    total += line;
  }
  return total;
}

// Smooth remainder (G_k - G_0) = (e^{ikr} - 1)/(4 pi r) integrated over the
// self element by splitting it into three sub-triangles apexed at the
// centroid, with the Duffy corner at the apex.
Complex self_single_layer_remainder(Real k, const Element& e) {
  const TriangleRule& rule = rule16();
  const std::array<std::pair<Vec3, Vec3>, 3> rims = {
      std::make_pair(e.v0, e.v1), std::make_pair(e.v1, e.v2), std::make_pair(e.v2, e.v0)};
  Complex total = 0;
  for (const auto& [a, b] : rims) {
    const Real area2 = (a - e.centroid).cross(b - e.centroid).norm();  // 2 * sub-area
    Complex sum = 0;
    for (const TrianglePoint& tp : rule) {
      const Vec3 y = e.centroid + tp.u * (a - e.centroid) + tp.v * (b - e.centroid);
      const Real r = (y - e.centroid).norm();
      sum += tp.w * (std::polar(1.0, k * r) - 1.0) / (4.0 * kPi * r);
    }
    total += area2 * sum;
  }
  return total;
}

}  // namespace

Complex green(Real k, const Vec3& x, const Vec3& y) {
  const Real r = (x - y).norm();
  if (!(r > 0)) throw std::invalid_argument("green: coincident points");
  return std::polar(1.0 / (4.0 * kPi * r), k * r);
}

IncidentField incident_plane_wave(Real k1, Real eps1, const Vec3& direction, const Vec3& x,
                                  const Vec3& n) {
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("incident direction must be a unit vector");
  IncidentField f;
  f.u = std::polar(1.0, k1 * x.dot(direction));
  f.w = (kImag * k1 / eps1) * n.dot(direction) * f.u;
  return f;
}

PanelQuadrature panel_quadrature(const Element& e) {
  const TriangleRule& rule = rule16();
  PanelQuadrature pq;
  const Real area2 = 2.0 * e.area;
  for (size_t q = 0; q < rule.size(); ++q) {
    pq.y[q] = e.v0 + rule[q].u * (e.v1 - e.v0) + rule[q].v * (e.v2 - e.v0);
    pq.w[q] = rule[q].w * area2;
  }
  return pq;
}

ElementIntegrals element_integrals(Real k, const Element& e, const PanelQuadrature& pq,
                                   const Vec3& x, const Vec3& nx) {
  const Real diam = diameter(e);
  const Real dist = (x - e.centroid).norm();
  ElementIntegrals out{0, 0, 0, 0};

  if (dist < 1e-9 * diam) {  // self element (centroid collocation)
    const Complex s = static_single_layer_inplane(e, e.centroid) + self_single_layer_remainder(k, e);
    out.S = s;
    out.D = 0;      // (y - x).n = 0 on a flat element
    out.Dstar = 0;  // likewise
    out.N = k * k * nx.dot(e.normal) * s + hypersingular_contour(k, e, e.centroid, nx);
    return out;
  }

  for (size_t q = 0; q < pq.y.size(); ++q) {
    const KernelValues v = point_kernels(k, x, nx, pq.y[q], e.normal);
    out.S += pq.w[q] * v.S;
    out.D += pq.w[q] * v.D;
    out.Dstar += pq.w[q] * v.Dstar;
    if (dist >= 2.0 * diam) out.N += pq.w[q] * v.N;
  }
  if (dist < 2.0 * diam)  // near pair: keep N bounded via the contour identity
    out.N = k * k * nx.dot(e.normal) * out.S + hypersingular_contour(k, e, x, nx);
  return out;
}

Complex element_integral(KernelKind kind, Real k, const Element& e, const Vec3& x,
                         const Vec3& nx) {
  if (!(k > 0)) throw std::invalid_argument("wavenumber must be positive");
  const ElementIntegrals all = element_integrals(k, e, panel_quadrature(e), x, nx);
  switch (kind) {
    case KernelKind::S: return all.S;
    case KernelKind::D: return all.D;
    case KernelKind::Dstar: return all.Dstar;
    case KernelKind::N: return all.N;
  }
  throw std::logic_error("unreachable");
}

Complex element_integral_with_rule(KernelKind kind, Real k, const Element& e, const Vec3& x,
                                   const Vec3& nx, const TriangleRule& rule) {
  const Real area2 = 2.0 * e.area;
  Complex sum = 0;
  for (const TrianglePoint& tp : rule) {
    const Vec3 y = e.v0 + tp.u * (e.v1 - e.v0) + tp.v * (e.v2 - e.v0);
    const KernelValues v = point_kernels(k, x, nx, y, e.normal);
    switch (kind) {
      case KernelKind::S: sum += tp.w * v.S; break;
      case KernelKind::D: sum += tp.w * v.D; break;
      case KernelKind::Dstar: sum += tp.w * v.Dstar; break;
      case KernelKind::N: sum += tp.w * v.N; break;
    }
  }
  return area2 * sum;
}

Real static_single_layer_inplane(const Element& e, const Vec3& x) {
  // Closed-form flat-triangle potential: sum over edges of
  // h_e * ln((R2 + s2)/(R1 + s1)) / (4 pi), h_e the signed in-plane distance
  // from x to the edge line (positive when x lies on the interior side).
  const std::array<std::pair<Vec3, Vec3>, 3> edges = {
      std::make_pair(e.v0, e.v1), std::make_pair(e.v1, e.v2), std::make_pair(e.v2, e.v0)};
  Real sum = 0;
  for (const auto& [p, q] : edges) {
    const Vec3 t = (q - p).normalized();
    const Real s1 = (p - x).dot(t);
    const Real s2 = (q - x).dot(t);
    const Real r1 = (p - x).norm();
    const Real r2 = (q - x).norm();
    const Vec3 m = t.cross(e.normal);  // outward in-plane edge normal
    const Real h = (p - x).dot(m);
    if (std::abs(h) < 1e-14 * diameter(e)) continue;  // x on the edge line
    sum += h * std::log((r2 + s2) / (r1 + s1));
  }
  return sum / (4.0 * kPi);
}

Real static_single_layer_element(const Element& e, const Vec3& x) {
  if ((x - e.centroid).norm() < 1e-9 * diameter(e)) return static_single_layer_inplane(e, x);
  const PanelQuadrature pq = panel_quadrature(e);
  Real sum = 0;
  for (size_t q = 0; q < pq.y.size(); ++q) sum += pq.w[q] / (4.0 * kPi * (pq.y[q] - x).norm());
  return sum;
}

Real static_double_layer_element(const Element& e, const Vec3& x) {
  if ((x - e.centroid).norm() < 1e-9 * diameter(e)) return 0.0;  // flat element
  const PanelQuadrature pq = panel_quadrature(e);
  Real sum = 0;
  for (size_t q = 0; q < pq.y.size(); ++q) {
    const Vec3 rho = pq.y[q] - x;
    const Real r = rho.norm();
    sum += pq.w[q] * (-e.normal.dot(rho)) / (4.0 * kPi * r * r * r);
  }
  return sum;
}

}  // namespace helmbem
