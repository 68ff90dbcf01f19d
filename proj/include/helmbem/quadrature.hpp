// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_QUADRATURE_HPP
#define HELMBEM_QUADRATURE_HPP

#include <vector>

#include "helmbem/types.hpp"

namespace helmbem {

// Gauss-Legendre rule on [0,1].
struct Rule1D {
  VectorXr nodes;
  VectorXr weights;
};
Rule1D gauss_legendre(int n);

// Quadrature on the unit reference triangle {(u,v): u,v >= 0, u+v <= 1},
// weights summing to 1/2. Physical integrals use
//   int_T f dS = 2*area * sum_q w_q f(v0 + u_q*(v1-v0) + v_q*(v2-v0)).
struct TrianglePoint {
  Real u, v, w;
};
using TriangleRule = std::vector<TrianglePoint>;

// Tensor Gauss-Legendre collapsed onto the triangle (Duffy map); n*n points
// clustering toward the corner (u,v) = (0,0). n = 4 gives the 16-point rule.
TriangleRule duffy_rule(int n);

}  // namespace helmbem

#endif  // HELMBEM_QUADRATURE_HPP
