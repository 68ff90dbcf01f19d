// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "helmbem/series.hpp"

namespace helmbem {

namespace {

using OrderedJson = nlohmann::ordered_json;

// Benchmark radii of the concentric-spheres generator.
constexpr Real kSphereInner = 0.5;
constexpr Real kSphereOuter = 1.0;
// Above this dimension the system matrix is stored in complex<float>
// (assembled and multiplied with double accumulation) to fit in memory.
constexpr Index kFloatStorageDim = 14000;

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_real(Real value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void require_same_topology(const DomainGraph& scene_graph, const DomainGraph& built) {
  bool same = scene_graph.num_interfaces() == built.num_interfaces() &&
              scene_graph.num_regions() == built.num_regions();
  for (int b = 0; same && b < built.num_interfaces(); ++b)
    same = scene_graph.interfaces[static_cast<size_t>(b)].from ==
               built.interfaces[static_cast<size_t>(b)].from &&
           scene_graph.interfaces[static_cast<size_t>(b)].to ==
               built.interfaces[static_cast<size_t>(b)].to;
  if (!same)
    throw std::invalid_argument("scene: interface list does not match the generator topology");
}

std::vector<Real> graph_epsilons(const DomainGraph& graph) {
  std::vector<Real> eps;
  for (int r = 1; r <= graph.num_regions(); ++r) eps.push_back(graph.epsilon(r));
  return eps;
}

BieConfig all_p1_config(const DomainGraph& base) {
  BieConfig config;
  config.flipped.assign(static_cast<size_t>(base.num_interfaces()), false);
  for (int r : base.bm_regions()) config.patterns[r] = Pattern{PatternKind::P1, -1};
  return config;
}

void validate_config(const DomainGraph& base, const BieConfig& config) {
  const std::vector<std::string> violations = check_constraints(base, config);
  if (violations.empty()) return;
  std::string msg = "configuration rejected:";
  for (const std::string& v : violations) msg += "\n  - " + v;
  throw std::invalid_argument(msg);
}

std::vector<TriangleMesh> flipped_meshes(const std::vector<TriangleMesh>& meshes,
                                         const BieConfig& config) {
  std::vector<TriangleMesh> out = meshes;
  for (size_t b = 0; b < config.flipped.size(); ++b)
    if (config.flipped[b])
      for (TriangleMesh& mesh : out) reverse_winding(mesh, static_cast<int>(b));
  return out;
}

template <typename Storage>
std::pair<SolveReport, double> assemble_and_solve(const DomainGraph& graph,
                                                  const ElementSet& elements,
                                                  const ModePlan& plan, const VectorXc& rhs,
                                                  const RunOptions& options,
                                                  double& assemble_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const AssemblyOptions assembly{plan.layout};
  const SystemMatrixT<Storage> system =
      assemble_system<Storage>(graph, elements, plan.alphas, assembly);
  assemble_seconds = seconds_since(t0);

  VectorXc diag;
  const VectorXc* precond = nullptr;
  if (plan.use_jacobi) {
    diag = expand_block_diagonal(system.blocks, jacobi_block_scales(plan.clusters));
    precond = &diag;
  }
  const auto t1 = std::chrono::steady_clock::now();
  SolveReport report = gmres([&](const VectorXc& x) { return matvec(system, x); }, rhs, precond,
                             options.tol, options.max_iter);
  return {std::move(report), seconds_since(t1)};
}

}  // namespace

SolveMode parse_mode(const std::string& name) {
  if (name == "conventional") return SolveMode::conventional;
  if (name == "calderon") return SolveMode::calderon;
  if (name == "param") return SolveMode::param;
  if (name == "jacobi") return SolveMode::jacobi;
  if (name == "ppm") return SolveMode::ppm;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (expected conventional|calderon|param|jacobi|ppm)");
}

std::string mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::conventional: return "conventional";
    case SolveMode::calderon: return "calderon";
    case SolveMode::param: return "param";
    case SolveMode::jacobi: return "jacobi";
    case SolveMode::ppm: return "ppm";
  }
  return "?";
}

PreparedScene prepare_scene(const Scene& scene, int subdiv_override) {
  PreparedScene prepared;
  prepared.incident = scene.incident_direction;
  const int subdiv = subdiv_override >= 0 ? subdiv_override : scene.subdiv;
  const std::vector<Real> eps = graph_epsilons(scene.graph);

  if (scene.generator.empty()) {
    prepared.graph = scene.graph;
    for (int b = 0; b < scene.graph.num_interfaces(); ++b) {
      const std::filesystem::path path =
          scene.base_dir / scene.graph.interfaces[static_cast<size_t>(b)].patch;
      TriangleMesh mesh = load_mesh(path);
      mesh.tags.setConstant(b);
      prepared.meshes.push_back(std::move(mesh));
    }
    return prepared;
  }

  std::pair<DomainGraph, std::vector<TriangleMesh>> built;
  if (scene.generator == "concentric_spheres") {
    built = build_scene_spheres(kSphereInner, kSphereOuter, subdiv, eps, scene.graph.omega);
    prepared.has_oracle = true;
    prepared.r_inner = kSphereInner;
    prepared.r_outer = kSphereOuter;
  } else if (scene.generator == "stacked_cuboids") {
    built = build_scene_stacked_cuboids(subdiv, eps, scene.graph.omega);
  } else if (scene.generator == "crossed_boxes") {
    built = build_scene_crossed_boxes(subdiv, eps, scene.graph.omega);
  } else {
    throw std::invalid_argument("unknown generator '" + scene.generator + "'");
  }
  require_same_topology(scene.graph, built.first);
  prepared.graph = std::move(built.first);
  prepared.meshes = std::move(built.second);
  return prepared;
}

ModePlan plan_mode(const DomainGraph& base, SolveMode mode,
                   const std::optional<BieConfig>& forced) {
  ModePlan plan;
  plan.mode = mode;
  if (mode == SolveMode::conventional) {
    plan.layout = Layout::conventional;
    plan.config.flipped.assign(static_cast<size_t>(base.num_interfaces()), false);
    plan.alphas[1] = base.alpha1();
    for (int r : base.bm_regions()) plan.alphas[r] = Complex(0, 0);
    return plan;
  }

  plan.layout = Layout::calderon;
  plan.use_jacobi = (mode == SolveMode::jacobi || mode == SolveMode::ppm);
  if (forced)
    plan.config = *forced;
  else if (mode == SolveMode::param || mode == SolveMode::ppm)
    plan.config = tune(base).first;
  else
    plan.config = all_p1_config(base);
  if (plan.config.flipped.empty())
    plan.config.flipped.assign(static_cast<size_t>(base.num_interfaces()), false);
  validate_config(base, plan.config);

  const DomainGraph oriented = plan.config.apply(base);
  plan.alphas = coupling_alphas(oriented, plan.config.patterns);
  plan.clusters = accumulation_points(oriented, plan.config.patterns);
  return plan;
}

SolveArtifacts run_solve(const PreparedScene& prepared, const RunOptions& options) {
  SolveArtifacts artifacts;
  artifacts.plan = plan_mode(prepared.graph, options.mode, options.force_config);

  const DomainGraph graph = artifacts.plan.config.apply(prepared.graph);
  const ElementSet elements =
      build_elements(graph, flipped_meshes(prepared.meshes, artifacts.plan.config));
  artifacts.n_elements = elements.total();
  artifacts.dimension = 2 * elements.total();

  const VectorXc rhs =
      assemble_rhs(graph, elements, prepared.incident, AssemblyOptions{artifacts.plan.layout});

  std::pair<SolveReport, double> solved;
  if (artifacts.dimension >= kFloatStorageDim) {
    artifacts.storage = "float";
    solved = assemble_and_solve<std::complex<float>>(graph, elements, artifacts.plan, rhs, options,
                                                     artifacts.assemble_seconds);
  } else {
    artifacts.storage = "double";
    solved = assemble_and_solve<Complex>(graph, elements, artifacts.plan, rhs, options,
                                         artifacts.assemble_seconds);
  }
  artifacts.report = std::move(solved.first);
  artifacts.solve_seconds = solved.second;

  if (prepared.has_oracle) {
    const SeriesSolution series =
        series_coefficients(graph.omega, graph_epsilons(graph), prepared.r_inner,
                            prepared.r_outer, 50, prepared.incident);
    VectorXc u_ana(elements.total());
    for (Index t = 0; t < elements.total(); ++t)
      u_ana[t] = eval_analytic(series, elements.elements[static_cast<size_t>(t)].centroid);
    artifacts.l2 = l2_error(artifacts.report.solution.head(elements.total()), u_ana);
  }
  return artifacts;
}

SpectrumResult run_spectrum(const PreparedScene& prepared, const RunOptions& options) {
  const ModePlan plan = plan_mode(prepared.graph, options.mode, options.force_config);
  const DomainGraph graph = plan.config.apply(prepared.graph);
  const ElementSet elements = build_elements(graph, flipped_meshes(prepared.meshes, plan.config));
  if (2 * elements.total() > 6500)
    throw std::runtime_error("spectrum: dimension too large for a dense eigendecomposition");

  SystemMatrix system = assemble_system<Complex>(graph, elements, plan.alphas,
                                                 AssemblyOptions{plan.layout});
  SpectrumResult result;
  if (plan.use_jacobi) {
    const VectorXc diag = expand_block_diagonal(system.blocks, jacobi_block_scales(plan.clusters));
    for (Index j = 0; j < system.entries.cols(); ++j) system.entries.col(j) *= diag[j];
  }
  result.eigenvalues = dense_eigenvalues(system.entries);
  result.squared.reserve(result.eigenvalues.size());
  for (const Complex& ev : result.eigenvalues) result.squared.push_back(ev * ev);

  if (plan.mode != SolveMode::conventional) {
    std::vector<Complex> points = plan.clusters.lambdas;
    if (plan.use_jacobi) {
      const std::vector<Complex> scales = jacobi_block_scales(plan.clusters);
      for (size_t b = 0; b < points.size(); ++b) points[b] *= scales[b] * scales[b];
    }
    Real max_abs = 0;
    for (const Complex& p : points) max_abs = std::max(max_abs, std::abs(p));
    std::sort(points.begin(), points.end(), [](const Complex& a, const Complex& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const Complex& p : points)
      if (result.predicted.empty() || std::abs(p - result.predicted.back()) > 1e-9 * max_abs)
        result.predicted.push_back(p);
  }
  return result;
}

namespace {

void apply_sweep_point(std::vector<Real>& eps, Real& omega, const SweepSpec& spec, Real value) {
  if (spec.parameter == "omega") {
    omega = value;
  } else if (spec.parameter.rfind("eps", 0) == 0) {
    const int region = std::stoi(spec.parameter.substr(3));
    if (region < 1 || region > static_cast<int>(eps.size()))
      throw std::invalid_argument("sweep: unknown region in parameter '" + spec.parameter + "'");
    eps[static_cast<size_t>(region) - 1] = value;
  } else {
    throw std::invalid_argument("sweep: unknown parameter '" + spec.parameter + "'");
  }
  if (spec.link.empty()) return;

  std::string link = spec.link;
  link.erase(std::remove(link.begin(), link.end(), ' '), link.end());
  const size_t eq = link.find('=');
  if (eq == std::string::npos || link.rfind("eps", 0) != 0)
    throw std::invalid_argument("sweep: malformed link '" + spec.link + "' (want epsA=1/epsB)");
  const int target = std::stoi(link.substr(3, eq - 3));
  if (target < 1 || target > static_cast<int>(eps.size()))
    throw std::invalid_argument("sweep: unknown region in link '" + spec.link + "'");
  const std::string rhs = link.substr(eq + 1);
  Real resolved;
  if (rhs.rfind("1/eps", 0) == 0) {
    const int source = std::stoi(rhs.substr(5));
    if (source < 1 || source > static_cast<int>(eps.size()))
      throw std::invalid_argument("sweep: unknown region in link '" + spec.link + "'");
    resolved = 1 / eps[static_cast<size_t>(source) - 1];
  } else if (rhs.rfind("eps", 0) == 0) {
    const int source = std::stoi(rhs.substr(3));
    if (source < 1 || source > static_cast<int>(eps.size()))
      throw std::invalid_argument("sweep: unknown region in link '" + spec.link + "'");
    resolved = eps[static_cast<size_t>(source) - 1];
  } else {
    resolved = std::stod(rhs);
  }
  eps[static_cast<size_t>(target) - 1] = resolved;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Scene& scene, const SweepSpec& spec,
                                const RunOptions& base_options) {
  if (spec.modes.empty()) throw std::invalid_argument("sweep: at least one mode is required");
  const PreparedScene prepared = prepare_scene(scene, base_options.subdiv);

  std::vector<SweepRow> rows;
  for (Real value : spec.values) {
    std::vector<Real> eps = graph_epsilons(scene.graph);
    Real omega = scene.graph.omega;
    PreparedScene point = prepared;
    std::string setup_error;
    try {
      apply_sweep_point(eps, omega, spec, value);
      point.graph = build_domain_graph(eps, scene.graph.interfaces, omega);
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (SolveMode mode : spec.modes) {
      SweepRow row;
      row.value = value;
      row.mode = mode;
      if (!setup_error.empty()) {
        row.error = setup_error;
        rows.push_back(row);
        continue;
      }
      RunOptions options = base_options;
      options.mode = mode;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SolveArtifacts artifacts = run_solve(point, options);
        row.iterations = artifacts.report.iterations;
        row.converged = artifacts.report.converged;
        row.l2 = artifacts.l2;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.seconds = seconds_since(t0);
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

OrderedJson config_json(const BieConfig& config) {
  OrderedJson flips = OrderedJson::array();
  for (size_t b = 0; b < config.flipped.size(); ++b)
    if (config.flipped[b]) flips.push_back(static_cast<int>(b));
  OrderedJson patterns = OrderedJson::object();
  for (const auto& [region, pat] : config.patterns) {
    OrderedJson p;
    p["kind"] = pat.kind == PatternKind::P1 ? "P1" : (pat.kind == PatternKind::P2 ? "P2" : "P3");
    if (pat.kind != PatternKind::P1) p["ref"] = pat.ref;
    patterns[std::to_string(region)] = p;
  }
  return OrderedJson{{"flips", flips}, {"patterns", patterns}};
}

}  // namespace

void write_report_json(const std::filesystem::path& path, const SolveArtifacts& artifacts) {
  OrderedJson j;
  j["mode"] = mode_name(artifacts.plan.mode);
  j["layout"] = artifacts.plan.layout == Layout::calderon ? "calderon" : "conventional";
  j["n_elements"] = artifacts.n_elements;
  j["dimension"] = artifacts.dimension;
  j["storage"] = artifacts.storage;
  j["iterations"] = artifacts.report.iterations;
  j["converged"] = artifacts.report.converged;
  j["relative_residual"] = artifacts.report.residual_history.empty()
                               ? 0.0
                               : artifacts.report.residual_history.back();
  j["true_relative_residual"] = artifacts.report.true_relative_residual;
  if (artifacts.l2 >= 0)
    j["l2_error"] = artifacts.l2;
  else
    j["l2_error"] = nullptr;
  j["config"] = config_json(artifacts.plan.config);
  if (!artifacts.plan.clusters.lambdas.empty()) {
    OrderedJson points = OrderedJson::array();
    for (const Complex& p : artifacts.plan.clusters.distinct)
      points.push_back({p.real(), p.imag()});
    j["clusters"] = {{"points", points}, {"max_ratio", artifacts.plan.clusters.max_ratio}};
  }
  j["assemble_seconds"] = artifacts.assemble_seconds;
  j["solve_seconds"] = artifacts.solve_seconds;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void write_residuals_csv(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "iter,relative_residual\n";
  for (size_t i = 0; i < report.residual_history.size(); ++i)
    out << (i + 1) << "," << fmt_real(report.residual_history[i]) << "\n";
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "re,im\n";
  for (const Complex& ev : result.squared)
    out << fmt_real(ev.real()) << "," << fmt_real(ev.imag()) << "\n";
}

void write_clusters_json(const std::filesystem::path& path, const SpectrumResult& result) {
  OrderedJson points = OrderedJson::array();
  for (const Complex& p : result.predicted) points.push_back({p.real(), p.imag()});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << OrderedJson{{"predicted", points}}.dump(2) << "\n";
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "value,mode,iterations,converged,l2_error,wall_seconds,error\n";
  for (const SweepRow& row : rows) {
    out << fmt_real(row.value) << "," << mode_name(row.mode) << "," << row.iterations << ","
        << (row.converged ? 1 : 0) << "," << (row.l2 >= 0 ? fmt_real(row.l2) : "") << ","
        << row.seconds << "," << row.error << "\n";
  }
}

std::string config_to_json(const BieConfig& config) { return config_json(config).dump(); }

BieConfig config_from_json(const std::string& text, const DomainGraph& base) {
  const nlohmann::json j = nlohmann::json::parse(text);
  BieConfig config;
  config.flipped.assign(static_cast<size_t>(base.num_interfaces()), false);
  if (j.contains("flips")) {
    for (const auto& f : j.at("flips")) {
      const int b = f.get<int>();
      if (b < 0 || b >= base.num_interfaces())
        throw std::invalid_argument("config: flip index out of range");
      config.flipped[static_cast<size_t>(b)] = true;
    }
  }
  if (j.contains("patterns")) {
    for (const auto& [key, value] : j.at("patterns").items()) {
      const int region = std::stoi(key);
      Pattern pat;
      const std::string kind = value.at("kind").get<std::string>();
      if (kind == "P1")
        pat.kind = PatternKind::P1;
      else if (kind == "P2")
        pat.kind = PatternKind::P2;
      else if (kind == "P3")
        pat.kind = PatternKind::P3;
      else
        throw std::invalid_argument("config: unknown pattern kind '" + kind + "'");
      if (pat.kind != PatternKind::P1) pat.ref = value.at("ref").get<int>();
      config.patterns[region] = pat;
    }
  }
  return config;
}

std::string config_label(const DomainGraph& base, const BieConfig& config) {
  std::ostringstream out;
  bool any_flip = false;
  for (size_t b = 0; b < config.flipped.size(); ++b) {
    if (!config.flipped[b]) continue;
    const Interface& iface = base.interfaces[b];
    out << (any_flip ? "," : "flip[") << "(" << iface.from << "," << iface.to << ")";
    any_flip = true;
  }
  out << (any_flip ? "] " : "no-flip ");
  if (config.patterns.empty()) out << "fixed";
  for (const auto& [region, pat] : config.patterns) {
    out << "region" << region << ":";
    if (pat.kind == PatternKind::P1)
      out << "P1 ";
    else
      out << (pat.kind == PatternKind::P2 ? "P2" : "P3") << "(ref " << pat.ref << ") ";
  }
  std::string label = out.str();
  while (!label.empty() && label.back() == ' ') label.pop_back();
  return label;
}

}  // namespace helmbem
