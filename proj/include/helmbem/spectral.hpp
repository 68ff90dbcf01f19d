// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_SPECTRAL_HPP
#define HELMBEM_SPECTRAL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "helmbem/scene.hpp"
#include "helmbem/types.hpp"

namespace helmbem {

// Coupling-parameter patterns for a region i owning Burton-Miller equations.
// With gamma_i := alpha_i / alpha_1:
//   P1: gamma_i = 1 / eps_i
//   P2 (reference pair (k,l)): gamma_i = eps_l / (eps_k eps_j), j = partner across (i,j)
//   P3 (reference pair (k,l)): positive root of eps_i^2 g^2 + eps_j g - (1 + eps_l/eps_k) = 0
enum class PatternKind { P1, P2, P3 };

struct Pattern {
  PatternKind kind = PatternKind::P1;
  int ref = -1;  // interface index of the reference pair (P2/P3 only)
};

// A full preconditioning configuration for a base domain graph: which
// interfaces to flip, and the pattern of each region that owns BM equations
// in the resulting orientation.
struct BieConfig {
  std::vector<bool> flipped;
  std::map<int, Pattern> patterns;

  int flip_count() const;
  DomainGraph apply(const DomainGraph& base) const;  // flips only; patterns are metadata
};

// gamma of `region` under the configuration (graph must already carry the
// orientation the patterns refer to). Region 1 always has gamma = 1.
Real region_gamma(const DomainGraph& graph, const std::map<int, Pattern>& patterns, int region);

// gamma entering interface `pair`'s BM equation, i.e. of its from-region.
Real gamma_for_pattern(const DomainGraph& graph, const std::map<int, Pattern>& patterns, int pair);

// Map region -> alpha_i = gamma_i alpha_1 for assembly.
std::map<int, Complex> coupling_alphas(const DomainGraph& graph,
                                       const std::map<int, Pattern>& patterns);

// Predicted eigenvalue accumulation points of the preconditioned operator.
// For interface b = (i,j): lambda_b = (alpha_1^2/4)(1 + gamma_i eps_j) and
// lambda_{b+N_B} = (alpha_1^2/4)(gamma_i^2 eps_i^2 + gamma_i eps_j).
struct ClusterReport {
  std::vector<Complex> lambdas;   // 2 N_B values, u blocks then w blocks
  std::vector<Complex> distinct;  // deduplicated within relative tolerance 1e-9
  Real max_ratio = 1;             // max |lambda_a| / |lambda_b| over all pairs
};
ClusterReport accumulation_points(const DomainGraph& graph,
                                  const std::map<int, Pattern>& patterns);

// Admissibility of a configuration against the oriented graph. Returns a list
// of human-readable violations (empty when admissible):
//  - every BM region needs a pattern, and patterns of non-BM regions are
//    rejected;
//  - a region whose outward normals point into two or more regions must use
//    P1;
//  - a P2/P3 reference pair (k,l) must be an existing interface whose regions
//    k and l use P1 (or are region 1, whose coupling is fixed), except where
//    they coincide with the pattern's own region or its partner.
std::vector<std::string> check_constraints(const DomainGraph& graph, const BieConfig& config);

// All admissible configurations of the base graph: every subset of interior
// interfaces flipped, crossed with every admissible pattern assignment.
// Deterministic order: flip masks by increasing binary code (no-flip first),
// patterns per region P1, then P2 by reference index, then P3.
std::vector<BieConfig> enumerate_configs(const DomainGraph& base);

// Exhaustive tuning: minimize max_ratio over enumerate_configs; ties prefer
// fewer flips, then P1 over P2 over P3 region by region, then smaller
// reference indices, then the earlier flip mask.
std::pair<BieConfig, ClusterReport> tune(const DomainGraph& base);

// Per-block scales 1/sqrt(lambda) of the point-Jacobi-type preconditioner
// (principal square root; lambda = -1 gives -i).
std::vector<Complex> jacobi_block_scales(const ClusterReport& clusters);

// All eigenvalues of a dense complex matrix (Schur-based; intended for
// moderate dimensions, a few thousand).
std::vector<Complex> dense_eigenvalues(const MatrixXc& matrix);

}  // namespace helmbem

#endif  // HELMBEM_SPECTRAL_HPP
