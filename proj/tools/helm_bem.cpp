// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
//
// helm-bem: boundary-element solver for 3D multi-material Helmholtz
// transmission problems with Calderon/Burton-Miller preconditioning.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helmbem/pipeline.hpp"
#include "helmbem/series.hpp"

namespace {

using namespace helmbem;

namespace fs = std::filesystem;

struct CommonArgs {
  std::string scene_path;
  std::string out_dir;
  int subdiv = -1;
  std::string mode = "ppm";
  double tol = 1e-5;
  int max_iter = 2000;
  std::string force_config;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mode) {
  cmd->add_option("--scene", args.scene_path, "Scene JSON file")->required();
  cmd->add_option("--out", args.out_dir, "Output directory for artifacts");
  cmd->add_option("--subdiv", args.subdiv, "Override the scene's mesh refinement level");
  if (with_mode) {
    cmd->add_option("--mode", args.mode, "conventional|calderon|param|jacobi|ppm");
    cmd->add_option("--tol", args.tol, "GMRES relative-residual tolerance");
    cmd->add_option("--max-iter", args.max_iter, "GMRES iteration cap");
    cmd->add_option("--force-config", args.force_config,
                    "BieConfig JSON (inline or a file path) overriding tuning/defaults");
  }
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

RunOptions make_options(const CommonArgs& args, const DomainGraph& base) {
  RunOptions options;
  options.mode = parse_mode(args.mode);
  options.tol = args.tol;
  options.max_iter = args.max_iter;
  options.subdiv = args.subdiv;
  if (!args.force_config.empty()) {
    std::string text = args.force_config;
    if (fs::exists(text)) {
      std::ifstream file(text);
      std::ostringstream buffer;
      buffer << file.rdbuf();
      text = buffer.str();
    }
    options.force_config = config_from_json(text, base);
  }
  return options;
}

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

int cmd_mesh(const CommonArgs& args) {
  const Scene scene = load_scene(args.scene_path);
  const PreparedScene prepared = prepare_scene(scene, args.subdiv);
  const ElementSet elements = build_elements(prepared.graph, prepared.meshes);
  for (int b = 0; b < prepared.graph.num_interfaces(); ++b) {
    const Interface& iface = prepared.graph.interfaces[static_cast<size_t>(b)];
    double area = 0;
    for (Index t = elements.first[static_cast<size_t>(b)];
         t < elements.first[static_cast<size_t>(b) + 1]; ++t)
      area += elements.elements[static_cast<size_t>(t)].area;
    std::cout << "interface " << b << " (" << iface.from << "," << iface.to
              << "): " << elements.count(b) << " elements, area " << fmt(area) << "\n";
  }
  std::cout << "total elements: " << elements.total() << "\n";
  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    for (size_t m = 0; m < prepared.meshes.size(); ++m) {
      const fs::path path = out / ("mesh_" + std::to_string(m) + ".json");
      save_mesh(prepared.meshes[m], path);
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  return 0;
}

int cmd_solve(const CommonArgs& args) {
  const Scene scene = load_scene(args.scene_path);
  const PreparedScene prepared = prepare_scene(scene, args.subdiv);
  const RunOptions options = make_options(args, prepared.graph);
  const SolveArtifacts artifacts = run_solve(prepared, options);

  std::cout << "mode " << mode_name(artifacts.plan.mode) << ", config "
            << config_label(prepared.graph, artifacts.plan.config) << "\n";
  std::cout << "dimension " << artifacts.dimension << " (" << artifacts.storage << " storage)\n";
  std::cout << "iterations " << artifacts.report.iterations
            << (artifacts.report.converged ? "" : " (NOT converged)") << ", residual "
            << fmt(artifacts.report.residual_history.empty()
                       ? 0.0
                       : artifacts.report.residual_history.back())
            << ", true residual " << fmt(artifacts.report.true_relative_residual) << "\n";
  if (artifacts.l2 >= 0) std::cout << "l2 error vs analytic series: " << fmt(artifacts.l2) << "\n";
  std::cout << "assembly " << fmt(artifacts.assemble_seconds) << " s, solve "
            << fmt(artifacts.solve_seconds) << " s\n";

  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    write_report_json(out / "report.json", artifacts);
    write_residuals_csv(out / "residuals.csv", artifacts.report);
    std::cout << "wrote " << (out / "report.json").string() << ", "
              << (out / "residuals.csv").string() << "\n";
  }
  return artifacts.report.converged ? 0 : 3;
}

int cmd_tune(const CommonArgs& args) {
  const Scene scene = load_scene(args.scene_path);
  const DomainGraph& base = scene.graph;
  const std::vector<BieConfig> configs = enumerate_configs(base);
  const auto [best, best_report] = tune(base);
  const std::string best_json = config_to_json(best);

  std::cout << configs.size() << " admissible configurations\n";
  for (size_t c = 0; c < configs.size(); ++c) {
    const ClusterReport report =
        accumulation_points(configs[c].apply(base), configs[c].patterns);
    std::cout << (config_to_json(configs[c]) == best_json ? "* " : "  ");
    std::cout << c << ": " << config_label(base, configs[c]) << " | clusters";
    for (const Complex& p : report.distinct)
      std::cout << " (" << fmt(p.real()) << "," << fmt(p.imag()) << ")";
    std::cout << " | max_ratio " << fmt(report.max_ratio) << "\n";
  }
  std::cout << "selected: " << config_label(base, best) << " with max_ratio "
            << fmt(best_report.max_ratio) << "\n";
  std::cout << "config JSON: " << best_json << "\n";
  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    std::ofstream file(out / "tuned_config.json");
    file << best_json << "\n";
    std::cout << "wrote " << (out / "tuned_config.json").string() << "\n";
  }
  return 0;
}

int cmd_spectrum(const CommonArgs& args) {
  const Scene scene = load_scene(args.scene_path);
  const PreparedScene prepared = prepare_scene(scene, args.subdiv);
  const RunOptions options = make_options(args, prepared.graph);
  const SpectrumResult result = run_spectrum(prepared, options);

  std::cout << result.eigenvalues.size() << " eigenvalues; predicted clusters:";
  for (const Complex& p : result.predicted)
    std::cout << " (" << fmt(p.real()) << "," << fmt(p.imag()) << ")";
  std::cout << "\n";
  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    write_spectrum_csv(out / "spectrum.csv", result);
    write_clusters_json(out / "clusters.json", result);
    std::cout << "wrote " << (out / "spectrum.csv").string() << ", "
              << (out / "clusters.json").string() << "\n";
  }
  return 0;
}

struct SweepArgs {
  std::string parameter = "omega";
  double from = 1, to = 5;
  int steps = 5;
  std::string values;
  std::string link;
  std::string modes = "calderon";
};

int cmd_sweep(const CommonArgs& args, const SweepArgs& sweep_args) {
  const Scene scene = load_scene(args.scene_path);
  SweepSpec spec;
  spec.parameter = sweep_args.parameter;
  spec.link = sweep_args.link;
  if (!sweep_args.values.empty()) {
    std::stringstream ss(sweep_args.values);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.values.push_back(std::stod(item));
  } else if (sweep_args.steps > 0) {
    for (int s = 0; s < sweep_args.steps; ++s)
      spec.values.push_back(sweep_args.steps == 1 ? sweep_args.from
                                                  : sweep_args.from +
                                                        (sweep_args.to - sweep_args.from) * s /
                                                            (sweep_args.steps - 1));
  }
  {
    std::stringstream ss(sweep_args.modes);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.modes.push_back(parse_mode(item));
  }

  CommonArgs solve_args = args;
  solve_args.mode = "calderon";  // per-row mode comes from spec.modes
  const RunOptions options = make_options(solve_args, scene.graph);
  const std::vector<SweepRow> rows = run_sweep(scene, spec, options);
  for (const SweepRow& row : rows) {
    std::cout << spec.parameter << "=" << fmt(row.value) << " " << mode_name(row.mode);
    if (!row.error.empty())
      std::cout << " FAILED: " << row.error << "\n";
    else
      std::cout << " iterations " << row.iterations
                << (row.l2 >= 0 ? " l2 " + fmt(row.l2) : std::string()) << " ("
                << fmt(row.seconds) << " s)\n";
  }
  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    write_sweep_csv(out / "sweep.csv", rows);
    std::cout << "wrote " << (out / "sweep.csv").string() << "\n";
  }
  return 0;
}

int cmd_oracle(const CommonArgs& args, const std::string& points_path, int n_max) {
  const Scene scene = load_scene(args.scene_path);
  if (scene.generator != "concentric_spheres")
    throw std::invalid_argument("oracle: the analytic series needs a concentric_spheres scene");
  const PreparedScene prepared = prepare_scene(scene, 0);
  const SeriesSolution series =
      series_coefficients(prepared.graph.omega, {prepared.graph.epsilon(1),
                                                 prepared.graph.epsilon(2),
                                                 prepared.graph.epsilon(3)},
                          prepared.r_inner, prepared.r_outer, n_max, prepared.incident);

  std::ifstream in(points_path);
  if (!in) throw std::runtime_error("cannot read points file " + points_path);
  std::ostringstream csv;
  csv << "x,y,z,re,im\n";
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y, z;
    if (!(row >> x >> y >> z)) throw std::runtime_error("oracle: malformed point line: " + line);
    const Complex u = eval_analytic(series, Vec3(x, y, z));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e,%.16e,%.16e\n", x, y, z, u.real(),
                  u.imag());
    csv << buf;
    ++count;
  }
  if (!args.out_dir.empty()) {
    const fs::path out = ensure_out_dir(args.out_dir);
    std::ofstream file(out / "oracle.csv");
    file << csv.str();
    std::cout << "wrote " << (out / "oracle.csv").string() << " (" << count << " points)\n";
  } else {
    std::cout << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-element Helmholtz transmission solver"};
  app.require_subcommand(1);

  CommonArgs mesh_args, solve_args, tune_args, spectrum_args, sweep_common, oracle_args;
  SweepArgs sweep_args;
  std::string points_path;
  int oracle_n_max = 50;

  add_common(app.add_subcommand("mesh", "Materialize and validate scene meshes"), mesh_args,
             false);
  add_common(app.add_subcommand("solve", "Assemble and solve one configuration"), solve_args,
             true);
  add_common(app.add_subcommand("tune", "Enumerate configurations and pick the best clusters"),
             tune_args, false);
  add_common(app.add_subcommand("spectrum", "Dense eigenvalues vs. predicted clusters"),
             spectrum_args, true);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Solve across a parameter range");
  add_common(sweep_cmd, sweep_common, true);
  sweep_cmd->add_option("--param", sweep_args.parameter, "omega or eps<region>");
  sweep_cmd->add_option("--from", sweep_args.from, "First value");
  sweep_cmd->add_option("--to", sweep_args.to, "Last value");
  sweep_cmd->add_option("--steps", sweep_args.steps, "Number of linear steps");
  sweep_cmd->add_option("--values", sweep_args.values, "Explicit comma-separated values");
  sweep_cmd->add_option("--link", sweep_args.link, "Constraint, e.g. eps2=1/eps3");
  sweep_cmd->add_option("--modes", sweep_args.modes, "Comma-separated mode list");
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Analytic series values at supplied points");
  add_common(oracle_cmd, oracle_args, false);
  oracle_cmd->add_option("--points", points_path, "CSV of x,y,z points")->required();
  oracle_cmd->add_option("--n-max", oracle_n_max, "Series truncation order");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("mesh")) return cmd_mesh(mesh_args);
    if (app.got_subcommand("solve")) return cmd_solve(solve_args);
    if (app.got_subcommand("tune")) return cmd_tune(tune_args);
    if (app.got_subcommand("spectrum")) return cmd_spectrum(spectrum_args);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_common, sweep_args);
    if (app.got_subcommand("oracle")) return cmd_oracle(oracle_args, points_path, oracle_n_max);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
