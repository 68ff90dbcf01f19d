// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/assembly.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace helmbem {

Index BlockIndexMap::row_offset(EquationKind kind, int pair) const {
  const bool upper = (layout == Layout::calderon) == (kind == EquationKind::standard);
  return (upper ? 0 : n_total) + first[static_cast<size_t>(pair)];
}

Index BlockIndexMap::col_offset(DensityKind kind, int pair) const {
  return (kind == DensityKind::u ? 0 : n_total) + first[static_cast<size_t>(pair)];
}

namespace {

Complex alpha_of(const DomainGraph& graph, const std::map<int, Complex>& bm_alphas, int region) {
  auto it = bm_alphas.find(region);
  if (it != bm_alphas.end()) return it->second;
  if (region == 1) return graph.alpha1();
  throw std::invalid_argument("assembly: missing coupling alpha for region " + std::to_string(region));
}

}  // namespace

std::vector<BlockTerm> bie_row_terms(const DomainGraph& graph, int pair, EquationKind kind,
                                     const std::map<int, Complex>& bm_alphas,
                                     Complex standard_scale) {
  if (pair < 0 || pair >= static_cast<int>(graph.num_interfaces()))
    throw std::invalid_argument("bie_row_terms: interface index out of range");
  const Interface& iface = graph.interfaces[static_cast<size_t>(pair)];
  std::vector<BlockTerm> terms;
  if (kind == EquationKind::standard) {
    // Trace of the representation formula in the to-region j, exterior limit:
    //   u/2 - sum_{(a,j)} D^j u + sum_{(j,a)} D^j u
    //       + sum_{(a,j)} eps_j S^j w - sum_{(j,a)} eps_j S^j w = delta_{j1} u_in,
    // all multiplied by standard_scale.
    const int j = iface.to;
    const Real eps_j = graph.epsilon(j);
    const Complex sc = standard_scale;
    terms.push_back({pair, DensityKind::u, OperatorKind::Identity, j, sc * Real(0.5)});
    for (int q : graph.incoming_pairs(j)) {
      terms.push_back({q, DensityKind::u, OperatorKind::D, j, -sc});
      terms.push_back({q, DensityKind::w, OperatorKind::S, j, sc * eps_j});
    }
    for (int q : graph.outgoing_pairs(j)) {
      terms.push_back({q, DensityKind::u, OperatorKind::D, j, sc});
      terms.push_back({q, DensityKind::w, OperatorKind::S, j, -sc * eps_j});
    }
  } else {
    // Trace plus alpha_i times the flux equation in the from-region i:
    //   u/2 + alpha_i eps_i w/2
    //     + sum_{(i,a)} (D^i + alpha_i N^i) u - sum_{(a,i)} (D^i + alpha_i N^i) u
    //     - sum_{(i,a)} eps_i (S^i + alpha_i D*^i) w
    //     + sum_{(a,i)} eps_i (S^i + alpha_i D*^i) w = delta_{i1} (u_in + alpha_1 eps_1 w_in).
    const int i = iface.from;
    const Real eps_i = graph.epsilon(i);
    const Complex alpha = alpha_of(graph, bm_alphas, i);
    terms.push_back({pair, DensityKind::u, OperatorKind::Identity, i, Real(0.5)});
    terms.push_back({pair, DensityKind::w, OperatorKind::Identity, i, alpha * eps_i * Real(0.5)});
    for (int q : graph.outgoing_pairs(i)) {
      terms.push_back({q, DensityKind::u, OperatorKind::D, i, Real(1)});
      terms.push_back({q, DensityKind::u, OperatorKind::N, i, alpha});
      terms.push_back({q, DensityKind::w, OperatorKind::S, i, -eps_i});
      terms.push_back({q, DensityKind::w, OperatorKind::Dstar, i, -eps_i * alpha});
    }
    for (int q : graph.incoming_pairs(i)) {
      terms.push_back({q, DensityKind::u, OperatorKind::D, i, Real(-1)});
      terms.push_back({q, DensityKind::u, OperatorKind::N, i, -alpha});
      terms.push_back({q, DensityKind::w, OperatorKind::S, i, eps_i});
      terms.push_back({q, DensityKind::w, OperatorKind::Dstar, i, eps_i * alpha});
    }
  }
  return terms;
}

namespace {

// Per-column-pair accumulated coefficients of the four integral operators.
struct PairCoeffs {
  Complex cD{0, 0}, cN{0, 0}, cS{0, 0}, cDstar{0, 0};
  bool any() const { return cD != Complex(0, 0) || cN != Complex(0, 0) || cS != Complex(0, 0) || cDstar != Complex(0, 0); }
};

struct RowPlan {
  int kernel_region = 0;
  std::vector<std::pair<int, PairCoeffs>> pairs;           // column interface -> coefficients
  std::vector<std::pair<DensityKind, Complex>> identity;   // diagonal terms on the row's own pair
};

RowPlan make_row_plan(const DomainGraph& graph, int pair, EquationKind kind,
                      const std::map<int, Complex>& bm_alphas, Complex standard_scale) {
  RowPlan plan;
  plan.kernel_region = (kind == EquationKind::standard) ? graph.interfaces[static_cast<size_t>(pair)].to
                                                        : graph.interfaces[static_cast<size_t>(pair)].from;
  std::map<int, PairCoeffs> by_pair;
  for (const BlockTerm& t : bie_row_terms(graph, pair, kind, bm_alphas, standard_scale)) {
    if (t.op == OperatorKind::Identity) {
      plan.identity.emplace_back(t.density, t.coeff);
      continue;
    }
    PairCoeffs& c = by_pair[t.col_pair];
    switch (t.op) {
      case OperatorKind::S: c.cS += t.coeff; break;
      case OperatorKind::D: c.cD += t.coeff; break;
      case OperatorKind::Dstar: c.cDstar += t.coeff; break;
      case OperatorKind::N: c.cN += t.coeff; break;
      case OperatorKind::Identity: break;
    }
  }
  for (auto& kv : by_pair)
    if (kv.second.any()) plan.pairs.emplace_back(kv.first, kv.second);
  return plan;
}

BlockIndexMap make_block_map(const ElementSet& elements, Layout layout) {
  BlockIndexMap blocks;
  blocks.layout = layout;
  blocks.n_total = elements.total();
  blocks.first = elements.first;
  return blocks;
}

void check_inputs(const DomainGraph& graph, const ElementSet& elements) {
  if (static_cast<int>(elements.first.size()) != graph.num_interfaces() + 1)
    throw std::invalid_argument("assembly: element set does not match the interface list");
  for (int b = 0; b < graph.num_interfaces(); ++b)
    if (elements.count(b) == 0)
      throw std::invalid_argument("assembly: interface " + std::to_string(b) + " has no elements");
}

}  // namespace

template <typename StorageScalar>
SystemMatrixT<StorageScalar> assemble_system(const DomainGraph& graph, const ElementSet& elements,
                                             const std::map<int, Complex>& bm_alphas,
                                             const AssemblyOptions& options) {
  check_inputs(graph, elements);
  const Index n = elements.total();
  const int n_pairs = static_cast<int>(graph.num_interfaces());

  SystemMatrixT<StorageScalar> system;
  system.blocks = make_block_map(elements, options.layout);
  system.entries.resize(2 * n, 2 * n);

  std::vector<PanelQuadrature> panels;
  panels.reserve(static_cast<size_t>(n));
  for (const Element& e : elements.elements) panels.push_back(panel_quadrature(e));

  const Complex standard_scale =
      (options.layout == Layout::calderon) ? -graph.alpha1() : Complex(1, 0);

  VectorXc row(2 * n);
  for (EquationKind kind : {EquationKind::standard, EquationKind::bm}) {
    for (int p = 0; p < n_pairs; ++p) {
      const RowPlan plan = make_row_plan(graph, p, kind, bm_alphas, standard_scale);
      const Real k = graph.wavenumber(plan.kernel_region);
      const Index row0 = system.blocks.row_offset(kind, p);
      const Index row_elem0 = elements.first[static_cast<size_t>(p)];
      const Index m = elements.count(p);
      for (Index t = 0; t < m; ++t) {
        const Element& ce = elements.elements[static_cast<size_t>(row_elem0 + t)];
        const Vec3 x = ce.centroid;
        const Vec3 nx = ce.normal;
        row.setZero();
        for (const auto& [q, c] : plan.pairs) {
          const Index col_u = system.blocks.col_offset(DensityKind::u, q);
          const Index col_w = system.blocks.col_offset(DensityKind::w, q);
          const Index src0 = elements.first[static_cast<size_t>(q)];
          const Index mq = elements.count(q);
          for (Index s = 0; s < mq; ++s) {
            const size_t g = static_cast<size_t>(src0 + s);
            const ElementIntegrals integ = element_integrals(k, elements.elements[g], panels[g], x, nx);
            row[col_u + s] += c.cD * integ.D + c.cN * integ.N;
            row[col_w + s] += c.cS * integ.S + c.cDstar * integ.Dstar;
          }
        }
        for (const auto& [density, coeff] : plan.identity)
          row[system.blocks.col_offset(density, p) + t] += coeff;
        if constexpr (std::is_same_v<StorageScalar, Complex>)
          system.entries.row(row0 + t) = row;
        else
          system.entries.row(row0 + t) = row.cast<StorageScalar>();
      }
    }
  }
  return system;
}

template <typename StorageScalar>
SystemMatrixT<StorageScalar> assemble_system(const DomainGraph& graph,
                                             const std::vector<TriangleMesh>& meshes,
                                             const std::map<int, Complex>& bm_alphas,
                                             const AssemblyOptions& options) {
  return assemble_system<StorageScalar>(graph, build_elements(graph, meshes), bm_alphas, options);
}

template SystemMatrixT<Complex> assemble_system<Complex>(const DomainGraph&, const ElementSet&,
                                                         const std::map<int, Complex>&,
                                                         const AssemblyOptions&);
template SystemMatrixT<std::complex<float>> assemble_system<std::complex<float>>(
    const DomainGraph&, const ElementSet&, const std::map<int, Complex>&, const AssemblyOptions&);
template SystemMatrixT<Complex> assemble_system<Complex>(const DomainGraph&,
                                                         const std::vector<TriangleMesh>&,
                                                         const std::map<int, Complex>&,
                                                         const AssemblyOptions&);
template SystemMatrixT<std::complex<float>> assemble_system<std::complex<float>>(
    const DomainGraph&, const std::vector<TriangleMesh>&, const std::map<int, Complex>&,
    const AssemblyOptions&);

VectorXc assemble_rhs(const DomainGraph& graph, const ElementSet& elements,
                      const Vec3& incident_direction, const AssemblyOptions& options) {
  check_inputs(graph, elements);
  const BlockIndexMap blocks = make_block_map(elements, options.layout);
  const Real k1 = graph.wavenumber(1);
  const Real eps1 = graph.epsilon(1);
  const Complex a1e1 = graph.alpha1() * eps1;

  VectorXc rhs = VectorXc::Zero(blocks.dimension());
  for (int p = 0; p < blocks.num_pairs(); ++p) {
    if (graph.interfaces[static_cast<size_t>(p)].from != 1) continue;
    const Index row0 = blocks.row_offset(EquationKind::bm, p);
    const Index elem0 = elements.first[static_cast<size_t>(p)];
    for (Index t = 0; t < blocks.count(p); ++t) {
      const Element& e = elements.elements[static_cast<size_t>(elem0 + t)];
      const IncidentField f = incident_plane_wave(k1, eps1, incident_direction, e.centroid, e.normal);
      rhs[row0 + t] = f.u + a1e1 * f.w;
    }
  }
  return rhs;
}

VectorXc matvec(const SystemMatrix& system, const VectorXc& x) {
  if (x.size() != system.entries.cols()) throw std::invalid_argument("matvec: size mismatch");
  return system.entries * x;
}

VectorXc matvec(const SystemMatrixF& system, const VectorXc& x) {
  const Index n = system.entries.rows();
  if (x.size() != system.entries.cols()) throw std::invalid_argument("matvec: size mismatch");
  VectorXr yr = VectorXr::Zero(n);
  VectorXr yi = VectorXr::Zero(n);
  for (Index j = 0; j < system.entries.cols(); ++j) {
    const float* a = reinterpret_cast<const float*>(system.entries.col(j).data());
    const Real xr = x[j].real();
    const Real xi = x[j].imag();
    for (Index i = 0; i < n; ++i) {
      const Real ar = a[2 * i];
      const Real ai = a[2 * i + 1];
      yr[i] += ar * xr - ai * xi;
      yi[i] += ar * xi + ai * xr;
    }
  }
  VectorXc y(n);
  y.real() = yr;
  y.imag() = yi;
  return y;
}

VectorXc expand_block_diagonal(const BlockIndexMap& blocks, const std::vector<Complex>& scales) {
  const int nb = blocks.num_pairs();
  if (static_cast<int>(scales.size()) != 2 * nb)
    throw std::invalid_argument("expand_block_diagonal: expected one scale per density block");
  VectorXc diag(blocks.dimension());
  for (int b = 0; b < nb; ++b) {
    const Index m = blocks.count(b);
    diag.segment(blocks.col_offset(DensityKind::u, b), m).setConstant(scales[static_cast<size_t>(b)]);
    diag.segment(blocks.col_offset(DensityKind::w, b), m).setConstant(scales[static_cast<size_t>(b + nb)]);
  }
  return diag;
}

}  // namespace helmbem
