// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_ASSEMBLY_HPP
#define HELMBEM_ASSEMBLY_HPP

#include <map>
#include <vector>

#include "helmbem/kernels.hpp"
#include "helmbem/mesh.hpp"
#include "helmbem/scene.hpp"
#include "helmbem/types.hpp"

namespace helmbem {

enum class EquationKind { standard, bm };
enum class DensityKind { u, w };

// Row/column layout of the discretized system. Columns are always (u_B, w_B)
// in interface order. Rows are the standard equations in B order followed by
// the Burton-Miller equations (calderon layout, standard rows scaled by
// -alpha_1), or the two halves interchanged with unscaled standard rows
// (conventional layout).
enum class Layout { calderon, conventional };

struct BlockIndexMap {
  Layout layout = Layout::calderon;
  Index n_total = 0;          // total element count
  std::vector<Index> first;   // per-interface element offsets, size N_B + 1

  Index dimension() const { return 2 * n_total; }
  int num_pairs() const { return static_cast<int>(first.size()) - 1; }
  Index count(int pair) const { return first[static_cast<size_t>(pair) + 1] - first[static_cast<size_t>(pair)]; }
  Index row_offset(EquationKind kind, int pair) const;
  Index col_offset(DensityKind kind, int pair) const;
};

// One symbolic block entry of a BIE row: the named operator of the kernel
// region, times a scalar coefficient, applied to one density block.
enum class OperatorKind { Identity, S, D, Dstar, N };
struct BlockTerm {
  int col_pair = 0;
  DensityKind density = DensityKind::u;
  OperatorKind op = OperatorKind::Identity;
  int kernel_region = 0;  // region whose wavenumber evaluates the kernel
  Complex coeff = 0;      // sign, eps and alpha factors included
};

// Symbolic content of the block row of equation `kind` on interface `pair`:
// the standard equation collects the trace from the to-region, the BM
// equation the trace plus alpha_i times the flux equation from the
// from-region. `standard_scale` multiplies standard rows (-alpha_1 in the
// calderon layout, 1 in the conventional layout). bm_alphas maps each region
// to its coupling alpha_i (region 1 must map to alpha_1).
std::vector<BlockTerm> bie_row_terms(const DomainGraph& graph, int pair, EquationKind kind,
                                     const std::map<int, Complex>& bm_alphas,
                                     Complex standard_scale);

template <typename StorageScalar>
struct SystemMatrixT {
  Matrix<StorageScalar> entries;
  BlockIndexMap blocks;
};
using SystemMatrix = SystemMatrixT<Complex>;
using SystemMatrixF = SystemMatrixT<std::complex<float>>;

struct AssemblyOptions {
  Layout layout = Layout::calderon;
};

// Dense collocation assembly. bm_alphas must provide alpha_i for every region
// owning a BM equation (every from-region; region 1 defaults to -i/k_1 if
// absent). Entries are computed in double precision and stored in
// StorageScalar (complex<float> keeps the largest benchmark level in memory).
template <typename StorageScalar = Complex>
SystemMatrixT<StorageScalar> assemble_system(const DomainGraph& graph, const ElementSet& elements,
                                             const std::map<int, Complex>& bm_alphas,
                                             const AssemblyOptions& options = {});

template <typename StorageScalar = Complex>
SystemMatrixT<StorageScalar> assemble_system(const DomainGraph& graph,
                                             const std::vector<TriangleMesh>& meshes,
                                             const std::map<int, Complex>& bm_alphas,
                                             const AssemblyOptions& options = {});

// Right-hand side for the incident plane wave: u_in + alpha_1 eps_1 w_in on
// the BM rows of exterior interfaces, -alpha_1 u_in-style entries never occur
// because interfaces into region 1 are rejected; all standard rows are zero.
VectorXc assemble_rhs(const DomainGraph& graph, const ElementSet& elements,
                      const Vec3& incident_direction, const AssemblyOptions& options = {});

// y = A x. The complex<float> overload accumulates in double.
VectorXc matvec(const SystemMatrix& system, const VectorXc& x);
VectorXc matvec(const SystemMatrixF& system, const VectorXc& x);

// Expands per-block scales (u blocks then w blocks, 2 N_B values) to a full
// diagonal of length 2 N_total.
VectorXc expand_block_diagonal(const BlockIndexMap& blocks, const std::vector<Complex>& scales);

}  // namespace helmbem

#endif  // HELMBEM_ASSEMBLY_HPP
