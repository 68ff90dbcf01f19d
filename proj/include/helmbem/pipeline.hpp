// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_PIPELINE_HPP
#define HELMBEM_PIPELINE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helmbem/assembly.hpp"
#include "helmbem/gmres.hpp"
#include "helmbem/mesh.hpp"
#include "helmbem/scene.hpp"
#include "helmbem/spectral.hpp"
#include "helmbem/types.hpp"

namespace helmbem {

enum class SolveMode { conventional, calderon, param, jacobi, ppm };
SolveMode parse_mode(const std::string& name);
std::string mode_name(SolveMode mode);

struct RunOptions {
  SolveMode mode = SolveMode::ppm;
  Real tol = 1e-5;
  int max_iter = 2000;
  int subdiv = -1;  // override the scene's refinement level when >= 0
  std::optional<BieConfig> force_config;
};

// Scene with geometry materialized (generator-built or loaded from files),
// still in the base interface orientation.
struct PreparedScene {
  DomainGraph graph;
  std::vector<TriangleMesh> meshes;
  Vec3 incident = Vec3(0, 0, 1);
  bool has_oracle = false;  // analytic series available (concentric spheres)
  Real r_inner = 0, r_outer = 0;
};
PreparedScene prepare_scene(const Scene& scene, int subdiv_override = -1);

// Everything derived from the mode choice before assembly. For conventional
// mode the config is empty (base orientation, alpha_i = 0 beyond region 1)
// and no clusters are predicted.
struct ModePlan {
  SolveMode mode = SolveMode::calderon;
  Layout layout = Layout::calderon;
  BieConfig config;
  std::map<int, Complex> alphas;
  bool use_jacobi = false;
  ClusterReport clusters;
};
ModePlan plan_mode(const DomainGraph& base, SolveMode mode,
                   const std::optional<BieConfig>& forced);

struct SolveArtifacts {
  ModePlan plan;
  SolveReport report;
  Index n_elements = 0;
  Index dimension = 0;
  std::string storage;  // "double" or "float" system-matrix entries
  Real l2 = -1;         // vs. the analytic series, when available
  double assemble_seconds = 0;
  double solve_seconds = 0;
};
SolveArtifacts run_solve(const PreparedScene& prepared, const RunOptions& options);

struct SpectrumResult {
  std::vector<Complex> eigenvalues;  // of the (preconditioned) matrix
  std::vector<Complex> squared;
  std::vector<Complex> predicted;  // cluster points of the squared operator
};
SpectrumResult run_spectrum(const PreparedScene& prepared, const RunOptions& options);

struct SweepSpec {
  std::string parameter;     // "omega" or "epsK" (K = region id >= 2)
  std::vector<Real> values;  // evaluation points, in output order
  std::string link;          // optional "epsA=1/epsB" constraint
  std::vector<SolveMode> modes;
};
struct SweepRow {
  Real value = 0;
  SolveMode mode = SolveMode::calderon;
  int iterations = -1;
  bool converged = false;
  Real l2 = -1;
  double seconds = 0;
  std::string error;  // nonempty when this point failed
};
std::vector<SweepRow> run_sweep(const Scene& scene, const SweepSpec& spec,
                                const RunOptions& base_options);

// Artifact writers (deterministic text except for timing fields).
void write_report_json(const std::filesystem::path& path, const SolveArtifacts& artifacts);
void write_residuals_csv(const std::filesystem::path& path, const SolveReport& report);
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumResult& result);
void write_clusters_json(const std::filesystem::path& path, const SpectrumResult& result);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

// BieConfig JSON: {"flips": [interface indices], "patterns":
// {"<region>": {"kind": "P1"|"P2"|"P3", "ref": j}}}.
std::string config_to_json(const BieConfig& config);
BieConfig config_from_json(const std::string& text, const DomainGraph& base);

// One-line human-readable description, e.g. "flips[(3,2)] region3:P3(ref 0)".
std::string config_label(const DomainGraph& base, const BieConfig& config);

}  // namespace helmbem

#endif  // HELMBEM_PIPELINE_HPP
