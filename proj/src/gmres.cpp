// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/gmres.hpp"

#include <cmath>
#include <stdexcept>

namespace helmbem {

namespace {

// Grow the Krylov basis in chunks to avoid both per-iteration reallocation
// and a full max_iter-sized upfront allocation.
void ensure_columns(MatrixXc& basis, Index needed) {
  if (basis.cols() >= needed) return;
  const Index chunk = 128;
  basis.conservativeResize(Eigen::NoChange, ((needed + chunk - 1) / chunk) * chunk);
}

}  // namespace

SolveReport gmres(const ApplyFn& apply_A, const VectorXc& rhs,
                  const VectorXc* right_precond_diagonal, Real tol, int max_iter) {
  if (max_iter < 1) throw std::invalid_argument("gmres: max_iter must be positive");
  if (!(tol > 0)) throw std::invalid_argument("gmres: tolerance must be positive");
  if (right_precond_diagonal && right_precond_diagonal->size() != rhs.size())
    throw std::invalid_argument("gmres: preconditioner size mismatch");
  const Index n = rhs.size();

  SolveReport report;
  const Real beta = rhs.norm();
  if (beta == 0) {
    report.solution = VectorXc::Zero(n);
    report.converged = true;
    report.true_relative_residual = 0;
    return report;
  }

  MatrixXc basis(n, 0);
  ensure_columns(basis, 1);
  basis.col(0) = rhs / beta;

  MatrixXc hess(max_iter + 1, max_iter);  // upper Hessenberg, column j filled at step j
  VectorXc g = VectorXc::Zero(max_iter + 1);
  g[0] = beta;
  std::vector<Complex> cs(static_cast<size_t>(max_iter));
  std::vector<Complex> sn(static_cast<size_t>(max_iter));

  int steps = 0;
  for (int j = 0; j < max_iter; ++j) {
    VectorXc z = basis.col(j);
    if (right_precond_diagonal) z.array() *= right_precond_diagonal->array();
    VectorXc w = apply_A(z);
    if (!w.allFinite()) throw std::runtime_error("gmres: operator produced a non-finite vector");

    // Modified Gram-Schmidt with a single reorthogonalization pass.
    const Real norm_before = w.norm();
    for (int i = 0; i <= j; ++i) {
      const Complex h = basis.col(i).dot(w);
      hess(i, j) = h;
      w -= h * basis.col(i);
    }
    if (w.norm() < Real(0.7) * norm_before) {
      for (int i = 0; i <= j; ++i) {
        const Complex correction = basis.col(i).dot(w);
        hess(i, j) += correction;
        w -= correction * basis.col(i);
      }
    }
    const Real h_next = w.norm();
    hess(j + 1, j) = h_next;

    // Apply the accumulated Givens rotations, then annihilate hess(j+1, j).
    for (int i = 0; i < j; ++i) {
      const Complex t = cs[static_cast<size_t>(i)] * hess(i, j) + sn[static_cast<size_t>(i)] * hess(i + 1, j);
      hess(i + 1, j) = -std::conj(sn[static_cast<size_t>(i)]) * hess(i, j) +
                       std::conj(cs[static_cast<size_t>(i)]) * hess(i + 1, j);
      hess(i, j) = t;
    }
    const Real denom = std::hypot(std::abs(hess(j, j)), h_next);
    if (denom == 0) {
      cs[static_cast<size_t>(j)] = 1;
      sn[static_cast<size_t>(j)] = 0;
    } else {
      cs[static_cast<size_t>(j)] = std::conj(hess(j, j)) / denom;
      sn[static_cast<size_t>(j)] = h_next / denom;
    }
    hess(j, j) = cs[static_cast<size_t>(j)] * hess(j, j) + sn[static_cast<size_t>(j)] * hess(j + 1, j);
    hess(j + 1, j) = 0;
    g[j + 1] = -std::conj(sn[static_cast<size_t>(j)]) * g[j];
    g[j] = cs[static_cast<size_t>(j)] * g[j];

    steps = j + 1;
    const Real rel = std::abs(g[j + 1]) / beta;
    report.residual_history.push_back(rel);
    if (rel <= tol) {
      report.converged = true;
      break;
    }
    if (h_next == 0) {  // happy breakdown: the Krylov space is invariant
      report.converged = true;
      break;
    }
    if (j + 1 < max_iter) {
      ensure_columns(basis, j + 2);
      basis.col(j + 1) = w / h_next;
    }
  }
  report.iterations = steps;

  // Back-substitute the triangular least-squares system.
  VectorXc y(steps);
  for (int i = steps - 1; i >= 0; --i) {
    Complex acc = g[i];
    for (int l = i + 1; l < steps; ++l) acc -= hess(i, l) * y[l];
    if (hess(i, i) == Complex(0, 0)) throw std::runtime_error("gmres: singular projected system");
    y[i] = acc / hess(i, i);
  }
  VectorXc x = basis.leftCols(steps) * y;
  if (right_precond_diagonal) x.array() *= right_precond_diagonal->array();
  report.solution = x;

  VectorXc residual = rhs - apply_A(x);
  report.true_relative_residual = residual.norm() / beta;
  return report;
}

}  // namespace helmbem
