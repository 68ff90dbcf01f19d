// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace helmbem {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

Real DomainGraph::epsilon(int i) const {
  if (!has_region(i)) fail("unknown region id " + std::to_string(i));
  return materials[static_cast<size_t>(i)].epsilon;
}

Real DomainGraph::wavenumber(int i) const { return omega * std::sqrt(epsilon(i)); }

Complex DomainGraph::alpha1() const { return -kImag / wavenumber(1); }

std::vector<int> DomainGraph::outgoing_pairs(int i) const {
  std::vector<int> out;
  for (int b = 0; b < num_interfaces(); ++b)
    if (interfaces[static_cast<size_t>(b)].from == i) out.push_back(b);
  return out;
}

std::vector<int> DomainGraph::incoming_pairs(int i) const {
  std::vector<int> in;
  for (int b = 0; b < num_interfaces(); ++b)
    if (interfaces[static_cast<size_t>(b)].to == i) in.push_back(b);
  return in;
}

std::vector<int> DomainGraph::bm_regions() const {
  std::set<int> regions;
  for (const Interface& f : interfaces)
    if (f.from != 1) regions.insert(f.from);
  return {regions.begin(), regions.end()};
}

int DomainGraph::find_pair(int i, int j) const {
  for (int b = 0; b < num_interfaces(); ++b) {
    const Interface& f = interfaces[static_cast<size_t>(b)];
    if (f.from == i && f.to == j) return b;
  }
  return -1;
}

DomainGraph build_domain_graph(const std::vector<Real>& epsilons,
                               const std::vector<Interface>& interface_specs,
                               Real omega) {
  if (epsilons.size() < 2) fail("need at least two regions");
  if (!(omega > 0)) fail("omega must be positive");

  DomainGraph graph;
  graph.omega = omega;
  graph.materials.resize(epsilons.size() + 1);
  for (size_t r = 0; r < epsilons.size(); ++r) {
    if (!(epsilons[r] > 0)) fail("epsilon must be positive for region " + std::to_string(r + 1));
    graph.materials[r + 1].epsilon = epsilons[r];
  }

  for (const Interface& f : interface_specs) {
    if (!graph.has_region(f.from) || !graph.has_region(f.to))
      fail("interface references unknown region");
    if (f.from == f.to) fail("interface is a self-loop");
    if (f.to == 1) fail("interface oriented into region 1");
    for (const Interface& g : graph.interfaces)
      if ((g.from == f.from && g.to == f.to) || (g.from == f.to && g.to == f.from))
        fail("duplicate interface between regions " + std::to_string(f.from) + " and " +
             std::to_string(f.to));
    graph.interfaces.push_back(f);
  }
  return graph;
}

AdjacencySets adjacency_sets(const DomainGraph& graph, int region) {
  if (!graph.has_region(region)) fail("unknown region id " + std::to_string(region));
  AdjacencySets sets;
  for (const Interface& f : graph.interfaces) {
    if (f.from == region) sets.outward.insert(f.to);
    if (f.to == region) sets.inward.insert(f.from);
  }
  sets.all = sets.outward;
  sets.all.insert(sets.inward.begin(), sets.inward.end());
  return sets;
}

DomainGraph flip_interface(const DomainGraph& graph, int index) {
  if (index < 0 || index >= graph.num_interfaces()) fail("interface index out of range");
  const Interface& f = graph.interfaces[static_cast<size_t>(index)];
  if (f.from == 1) fail("cannot flip an exterior interface");
  DomainGraph flipped = graph;
  std::swap(flipped.interfaces[static_cast<size_t>(index)].from,
            flipped.interfaces[static_cast<size_t>(index)].to);
  return flipped;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file " + path.string());
  nlohmann::json j;
  in >> j;

  const auto& jregions = j.at("regions");
  int max_id = 0;
  for (const auto& r : jregions) max_id = std::max(max_id, r.at("id").get<int>());
  std::vector<Real> epsilons(static_cast<size_t>(max_id), -1.0);
  for (const auto& r : jregions) {
    int id = r.at("id").get<int>();
    if (id < 1) fail("region ids must be >= 1");
    epsilons[static_cast<size_t>(id - 1)] = r.at("epsilon").get<Real>();
  }
  for (size_t r = 0; r < epsilons.size(); ++r)
    if (epsilons[r] < 0) fail("region ids must be contiguous from 1; missing " + std::to_string(r + 1));

  std::vector<Interface> specs;
  for (const auto& f : j.at("interfaces")) {
    Interface spec;
    spec.from = f.at("from").get<int>();
    spec.to = f.at("to").get<int>();
    spec.patch = f.at("mesh").get<std::string>();
    specs.push_back(spec);
  }

  Scene scene;
  scene.graph = build_domain_graph(epsilons, specs, j.at("omega").get<Real>());
  if (j.contains("incident")) {
    const auto& d = j.at("incident").at("direction");
    scene.incident_direction = Vec3(d.at(0).get<Real>(), d.at(1).get<Real>(), d.at(2).get<Real>());
    if (scene.incident_direction.norm() == 0) fail("incident direction must be nonzero");
    scene.incident_direction.normalize();
  }
  if (j.contains("generator")) {
    scene.generator = j.at("generator").at("kind").get<std::string>();
    if (j.at("generator").contains("subdiv")) scene.subdiv = j.at("generator").at("subdiv").get<int>();
  }
  scene.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return scene;
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  nlohmann::json j;
  j["omega"] = scene.graph.omega;
  j["regions"] = nlohmann::json::array();
  for (int r = 1; r <= scene.graph.num_regions(); ++r)
    j["regions"].push_back({{"id", r}, {"epsilon", scene.graph.epsilon(r)}});
  j["interfaces"] = nlohmann::json::array();
  for (const Interface& f : scene.graph.interfaces)
    j["interfaces"].push_back({{"from", f.from}, {"to", f.to}, {"mesh", f.patch}});
  j["incident"] = {{"direction", {scene.incident_direction.x(), scene.incident_direction.y(),
                                  scene.incident_direction.z()}}};
  if (!scene.generator.empty())
    j["generator"] = {{"kind", scene.generator}, {"subdiv", scene.subdiv}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace helmbem
