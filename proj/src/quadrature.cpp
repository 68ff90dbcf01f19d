// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace helmbem {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n over [-1,1], then map to [0,1]. Nodes are the
  // roots of the Legendre polynomial; weights 2 / ((1-x^2) P_n'(x)^2).
  for (int i = 0; i < n; ++i) {
    Real x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (1 + x);
    rule.weights[i] = 1.0 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

TriangleRule duffy_rule(int n) {
  const Rule1D gl = gauss_legendre(n);
  TriangleRule rule;
  rule.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  // Square (s,t) -> triangle (u,v) = (s(1-t), st); Jacobian s concentrates
  // points toward the collapsed corner (0,0).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Real s = gl.nodes[a], t = gl.nodes[b];
      rule.push_back({s * (1 - t), s * t, gl.weights[a] * gl.weights[b] * s});
    }
  return rule;
}

}  // namespace helmbem
