// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_GMRES_HPP
#define HELMBEM_GMRES_HPP

#include <functional>
#include <vector>

#include "helmbem/types.hpp"

namespace helmbem {

struct SolveReport {
  int iterations = 0;
  std::vector<Real> residual_history;  // relative residual after each iteration
  VectorXc solution;
  bool converged = false;
  Real true_relative_residual = -1;  // ||b - A x|| / ||b||, recomputed once at exit
};

using ApplyFn = std::function<VectorXc(const VectorXc&)>;

// Full (non-restarted) GMRES with zero initial guess, modified Gram-Schmidt
// with one reorthogonalization pass, and Givens-rotation least squares. When
// right_precond_diagonal is non-null the system A M^{-1} z = b is solved and
// x = M^{-1} z returned; the monitored residual equals the residual of the
// original system. Stops when the relative residual drops to `tol` or after
// max_iter iterations.
SolveReport gmres(const ApplyFn& apply_A, const VectorXc& rhs,
                  const VectorXc* right_precond_diagonal, Real tol, int max_iter);

}  // namespace helmbem

#endif  // HELMBEM_GMRES_HPP
