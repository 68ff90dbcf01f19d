// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helmbem {

int BieConfig::flip_count() const {
  return static_cast<int>(std::count(flipped.begin(), flipped.end(), true));
}

DomainGraph BieConfig::apply(const DomainGraph& base) const {
  if (!flipped.empty() && static_cast<int>(flipped.size()) != base.num_interfaces())
    throw std::invalid_argument("BieConfig: flip vector does not match the interface list");
  DomainGraph oriented = base;
  for (size_t b = 0; b < flipped.size(); ++b)
    if (flipped[b]) oriented = flip_interface(oriented, static_cast<int>(b));
  return oriented;
}

namespace {

// Partner region across the (unique) interface carrying region i's BM
// equation. Regions with several outgoing interfaces are P1-only (C1), so
// P2/P3 formulas may assume uniqueness.
int unique_partner(const DomainGraph& graph, int region) {
  const std::vector<int> out = graph.outgoing_pairs(region);
  if (out.size() != 1)
    throw std::invalid_argument("pattern: region " + std::to_string(region) +
                                " does not have a unique partner interface");
  return graph.interfaces[static_cast<size_t>(out.front())].to;
}

}  // namespace

Real region_gamma(const DomainGraph& graph, const std::map<int, Pattern>& patterns, int region) {
  if (region == 1) return 1;
  auto it = patterns.find(region);
  if (it == patterns.end())
    throw std::invalid_argument("pattern: no pattern assigned to region " + std::to_string(region));
  const Pattern& pat = it->second;
  const Real eps_i = graph.epsilon(region);
  if (pat.kind == PatternKind::P1) return 1 / eps_i;

  if (pat.ref < 0 || pat.ref >= static_cast<int>(graph.num_interfaces()))
    throw std::invalid_argument("pattern: reference interface out of range");
  const Interface& ref = graph.interfaces[static_cast<size_t>(pat.ref)];
  const Real eps_k = graph.epsilon(ref.from);
  const Real eps_l = graph.epsilon(ref.to);
  const Real eps_j = graph.epsilon(unique_partner(graph, region));
  if (pat.kind == PatternKind::P2) return eps_l / (eps_k * eps_j);
  // P3: positive root of eps_i^2 g^2 + eps_j g - (1 + eps_l/eps_k) = 0.
  const Real gamma =
      (-eps_j + std::sqrt(eps_j * eps_j + 4 * eps_i * eps_i * (1 + eps_l / eps_k))) /
      (2 * eps_i * eps_i);
  if (!(gamma > 0)) throw std::invalid_argument("pattern: nonpositive gamma");
  return gamma;
}

Real gamma_for_pattern(const DomainGraph& graph, const std::map<int, Pattern>& patterns, int pair) {
  if (pair < 0 || pair >= static_cast<int>(graph.num_interfaces()))
    throw std::invalid_argument("gamma_for_pattern: interface index out of range");
  return region_gamma(graph, patterns, graph.interfaces[static_cast<size_t>(pair)].from);
}

std::map<int, Complex> coupling_alphas(const DomainGraph& graph,
                                       const std::map<int, Pattern>& patterns) {
  std::map<int, Complex> alphas;
  alphas[1] = graph.alpha1();
  for (int r : graph.bm_regions()) alphas[r] = graph.alpha1() * region_gamma(graph, patterns, r);
  return alphas;
}

ClusterReport accumulation_points(const DomainGraph& graph,
                                  const std::map<int, Pattern>& patterns) {
  const int nb = static_cast<int>(graph.num_interfaces());
  const Complex c = graph.alpha1() * graph.alpha1() / Real(4);
  ClusterReport report;
  report.lambdas.resize(2 * static_cast<size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    const Interface& iface = graph.interfaces[static_cast<size_t>(b)];
    const Real gamma = region_gamma(graph, patterns, iface.from);
    const Real eps_i = graph.epsilon(iface.from);
    const Real eps_j = graph.epsilon(iface.to);
    report.lambdas[static_cast<size_t>(b)] = c * (1 + gamma * eps_j);
    report.lambdas[static_cast<size_t>(b + nb)] = c * (gamma * gamma * eps_i * eps_i + gamma * eps_j);
  }

  Real max_abs = 0, min_abs = 0;
  for (const Complex& lam : report.lambdas) {
    const Real a = std::abs(lam);
    max_abs = std::max(max_abs, a);
    min_abs = (min_abs == 0) ? a : std::min(min_abs, a);
  }
  if (!(min_abs > 0)) throw std::invalid_argument("accumulation_points: zero cluster point");
  report.max_ratio = max_abs / min_abs;

  std::vector<Complex> sorted = report.lambdas;
  std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const Real tol = Real(1e-9) * max_abs;
  for (const Complex& lam : sorted)
    if (report.distinct.empty() || std::abs(lam - report.distinct.back()) > tol)
      report.distinct.push_back(lam);
  return report;
}

std::vector<std::string> check_constraints(const DomainGraph& base, const BieConfig& config) {
  std::vector<std::string> violations;
  if (!config.flipped.empty() &&
      static_cast<int>(config.flipped.size()) != base.num_interfaces()) {
    violations.push_back("flip vector does not match the interface list");
    return violations;
  }
  for (size_t b = 0; b < config.flipped.size(); ++b)
    if (config.flipped[b] && base.interfaces[b].from == 1) {
      violations.push_back("exterior interface " + std::to_string(b) + " must not be flipped");
      return violations;
    }
  const DomainGraph graph = config.apply(base);
  const std::vector<int> bm_regions = graph.bm_regions();

  for (int r : bm_regions)
    if (!config.patterns.count(r))
      violations.push_back("region " + std::to_string(r) + " owns BM equations but has no pattern");
  for (const auto& [r, pat] : config.patterns) {
    if (std::find(bm_regions.begin(), bm_regions.end(), r) == bm_regions.end()) {
      violations.push_back("region " + std::to_string(r) + " has a pattern but owns no BM equations");
      continue;
    }
    const std::vector<int> out = graph.outgoing_pairs(r);
    if (out.size() >= 2 && pat.kind != PatternKind::P1) {
      violations.push_back("C1: region " + std::to_string(r) +
                           " faces several regions and must use P1");
      continue;
    }
    if (pat.kind == PatternKind::P1) continue;

    if (pat.ref < 0 || pat.ref >= static_cast<int>(graph.num_interfaces())) {
      violations.push_back("region " + std::to_string(r) + ": reference interface out of range");
      continue;
    }
    const Interface& ref = graph.interfaces[static_cast<size_t>(pat.ref)];
    const int partner = graph.interfaces[static_cast<size_t>(out.front())].to;
    // The reference alpha_k must be fixed a priori: by convention for region 1,
    // by P1 otherwise.
    if (ref.from != 1) {
      auto it = config.patterns.find(ref.from);
      if (it == config.patterns.end() || it->second.kind != PatternKind::P1)
        violations.push_back("region " + std::to_string(r) + ": reference region " +
                             std::to_string(ref.from) + " is not fixed by P1");
    }
    // C2: a foreign region whose permittivity enters this gamma must itself
    // use P1. The region's own eps, its partner's, and eps_1 are exempt.
    for (int t : {ref.from, ref.to}) {
      if (t == 1 || t == r || t == partner) continue;
      auto it = config.patterns.find(t);
      if (it != config.patterns.end() && it->second.kind != PatternKind::P1)
        violations.push_back("C2: region " + std::to_string(t) + " appears in gamma_" +
                             std::to_string(r) + " and must use P1");
    }
  }
  return violations;
}

namespace {

std::vector<Pattern> pattern_candidates(const DomainGraph& oriented, int region) {
  std::vector<Pattern> out;
  out.push_back({PatternKind::P1, -1});
  if (oriented.outgoing_pairs(region).size() >= 2) return out;  // C1: P1 only
  const int nb = static_cast<int>(oriented.num_interfaces());
  for (PatternKind kind : {PatternKind::P2, PatternKind::P3})
    for (int ref = 0; ref < nb; ++ref)
      if (oriented.interfaces[static_cast<size_t>(ref)].from != region)
        out.push_back({kind, ref});
  return out;
}

}  // namespace

std::vector<BieConfig> enumerate_configs(const DomainGraph& base) {
  const int nb = static_cast<int>(base.num_interfaces());
  std::vector<int> flippable;
  for (int b = 0; b < nb; ++b)
    if (base.interfaces[static_cast<size_t>(b)].from != 1) flippable.push_back(b);

  std::vector<BieConfig> result;
  const size_t n_masks = size_t{1} << flippable.size();
  for (size_t mask = 0; mask < n_masks; ++mask) {
    BieConfig config;
    config.flipped.assign(static_cast<size_t>(nb), false);
    for (size_t t = 0; t < flippable.size(); ++t)
      if (mask & (size_t{1} << t)) config.flipped[static_cast<size_t>(flippable[t])] = true;
    const DomainGraph oriented = config.apply(base);

    const std::vector<int> regions = oriented.bm_regions();
    std::vector<std::vector<Pattern>> candidates;
    candidates.reserve(regions.size());
    for (int r : regions) candidates.push_back(pattern_candidates(oriented, r));

    std::vector<size_t> choice(regions.size(), 0);
    while (true) {
      config.patterns.clear();
      for (size_t t = 0; t < regions.size(); ++t)
        config.patterns[regions[t]] = candidates[t][choice[t]];
      if (check_constraints(base, config).empty()) result.push_back(config);
      size_t t = 0;
      for (; t < regions.size(); ++t) {
        if (++choice[t] < candidates[t].size()) break;
        choice[t] = 0;
      }
      if (t == regions.size()) break;
    }
  }
  return result;
}

namespace {

// Deterministic tie-break key: fewer flips, then per region (ascending id)
// P1 before P2 before P3 and smaller reference index, then the flip mask.
std::vector<int> tie_key(const BieConfig& config) {
  std::vector<int> key;
  key.push_back(config.flip_count());
  for (const auto& [r, pat] : config.patterns) {
    key.push_back(static_cast<int>(pat.kind));
    key.push_back(pat.ref);
  }
  for (bool f : config.flipped) key.push_back(f ? 1 : 0);
  return key;
}

}  // namespace

std::pair<BieConfig, ClusterReport> tune(const DomainGraph& base) {
  const std::vector<BieConfig> configs = enumerate_configs(base);
  if (configs.empty()) throw std::runtime_error("tune: no admissible configuration");

  bool have_best = false;
  BieConfig best;
  ClusterReport best_report;
  std::vector<int> best_key;
  for (const BieConfig& config : configs) {
    const ClusterReport report = accumulation_points(config.apply(base), config.patterns);
    const std::vector<int> key = tie_key(config);
    const Real tol = Real(1e-9) * std::max(report.max_ratio, best_report.max_ratio);
    const bool better =
        !have_best || report.max_ratio < best_report.max_ratio - tol ||
        (std::abs(report.max_ratio - best_report.max_ratio) <= tol && key < best_key);
    if (better) {
      have_best = true;
      best = config;
      best_report = report;
      best_key = key;
    }
  }
  return {best, best_report};
}

std::vector<Complex> jacobi_block_scales(const ClusterReport& clusters) {
  std::vector<Complex> scales;
  scales.reserve(clusters.lambdas.size());
  for (const Complex& lam : clusters.lambdas) {
    if (lam == Complex(0, 0)) throw std::invalid_argument("jacobi: zero cluster point");
    const Complex s = Real(1) / std::sqrt(lam);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::invalid_argument("jacobi: non-finite scale");
    scales.push_back(s);
  }
  return scales;
}

std::vector<Complex> dense_eigenvalues(const MatrixXc& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  Eigen::ComplexEigenSolver<MatrixXc> solver(matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_eigenvalues: eigen-iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

}  // namespace helmbem
