// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_KERNELS_HPP
#define HELMBEM_KERNELS_HPP

#include <array>

#include "helmbem/mesh.hpp"
#include "helmbem/quadrature.hpp"
#include "helmbem/types.hpp"

namespace helmbem {

// The four layer-potential kernels: single layer S, double layer D, adjoint
// double layer D*, and hypersingular N.
enum class KernelKind { S, D, Dstar, N };

// Fundamental solution e^{ikr} / (4 pi r), r = |x - y|.
Complex green(Real k, const Vec3& x, const Vec3& y);

// Plane wave u_in = e^{i k1 x.d} and its flux w_in = (i k1 / eps1)(n.d) u_in.
struct IncidentField {
  Complex u;
  Complex w;
};
IncidentField incident_plane_wave(Real k1, Real eps1, const Vec3& direction, const Vec3& x,
                                  const Vec3& n);

// Pointwise kernel values at a source point y with normal ny, observed from x
// with normal nx. One complex exponential per call.
struct KernelValues {
  Complex S, D, Dstar, N;
};
inline KernelValues point_kernels(Real k, const Vec3& x, const Vec3& nx, const Vec3& y,
                                  const Vec3& ny) {
  const Vec3 rho = y - x;
  const Real r2 = rho.squaredNorm();
  const Real r = std::sqrt(r2);
  const Complex g = std::polar(1.0 / (4.0 * kPi * r), k * r);  // e^{ikr}/(4 pi r)
  const Complex a = (kImag * (k * r) - 1.0) * g / r2;          // grad_y G = rho * a
  const Complex c = (k * k * r2 + 3.0 * kImag * (k * r) - 3.0) * g / (r2 * r2);
  KernelValues v;
  v.S = g;
  v.D = ny.dot(rho) * a;
  v.Dstar = -nx.dot(rho) * a;
  v.N = -a * nx.dot(ny) + nx.dot(rho) * ny.dot(rho) * c;
  return v;
}

// Cached 16-point Duffy quadrature of one element (physical points, weights
// premultiplied by the area Jacobian).
struct PanelQuadrature {
  std::array<Vec3, 16> y;
  std::array<Real, 16> w;
};
PanelQuadrature panel_quadrature(const Element& element);

// All four element integrals of the kernels applied to the constant density 1
// over `element`, seen from collocation point x with normal nx:
//   well-separated  -> 16-point Duffy quadrature of the raw kernels;
//   near (dist < 2 diam) -> same for S, D, D*; N via the Stokes-regularised
//                      identity (weakly singular surface term + edge contours
//                      with 10-point GL), which stays bounded near the panel;
//   self            -> S by analytic static part + smooth remainder; D and D*
//                      vanish on flat panels; N by the regularised identity.
struct ElementIntegrals {
  Complex S, D, Dstar, N;
};
ElementIntegrals element_integrals(Real k, const Element& element, const PanelQuadrature& pq,
                                   const Vec3& x, const Vec3& nx);

// Single-kernel convenience wrapper with the same dispatch.
Complex element_integral(KernelKind kind, Real k, const Element& element, const Vec3& x,
                         const Vec3& nx = Vec3::Zero());

// Raw-kernel quadrature with an arbitrary triangle rule (no singular
// handling); oracle/diagnostic path.
Complex element_integral_with_rule(KernelKind kind, Real k, const Element& element, const Vec3& x,
                                   const Vec3& nx, const TriangleRule& rule);

// Static (Laplace) pieces. The in-plane single layer is the closed-form
// integral of 1/(4 pi r) over the flat triangle, valid for x in the element
// plane off the edges; the others are 16-point quadratures of the static
// kernels (the self double layer is exactly zero on a flat element).
Real static_single_layer_inplane(const Element& element, const Vec3& x);
Real static_single_layer_element(const Element& element, const Vec3& x);
Real static_double_layer_element(const Element& element, const Vec3& x);

}  // namespace helmbem

#endif  // HELMBEM_KERNELS_HPP
