// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_SCENE_HPP
#define HELMBEM_SCENE_HPP

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "helmbem/types.hpp"

namespace helmbem {

// Material constant of one region; the wavenumber is k_i = omega * sqrt(eps_i).
struct Material {
  Real epsilon = 1.0;
};

// Oriented material interface: the unit normal points from region `from` into
// region `to`. `patch` names the mesh patch carrying the geometry (a file path
// or a generator label); topology never depends on it.
struct Interface {
  int from = 0;
  int to = 0;
  std::string patch;
};

// Region adjacency around one region i, stored as region ids:
// outward = {j : (i,j) in B}, inward = {j : (j,i) in B}.
struct AdjacencySets {
  std::set<int> all;
  std::set<int> outward;
  std::set<int> inward;
};

// Multi-material domain decomposition: M regions (region 1 is the unbounded
// exterior) and the ordered interface list B. Immutable once built; the order
// of B fixes the block order of every downstream matrix and cluster report.
struct DomainGraph {
  Real omega = 1.0;
  std::vector<Material> materials;  // 1-based; materials[0] is unused
  std::vector<Interface> interfaces;

  int num_regions() const { return static_cast<int>(materials.size()) - 1; }
  int num_interfaces() const { return static_cast<int>(interfaces.size()); }
  bool has_region(int i) const { return i >= 1 && i <= num_regions(); }

  Real epsilon(int i) const;
  Real wavenumber(int i) const;  // k_i = omega * sqrt(eps_i)
  Complex alpha1() const;        // -i / k_1, the fixed exterior BM coupling

  // Indices into B with from == i (resp. to == i), in B order.
  std::vector<int> outgoing_pairs(int i) const;
  std::vector<int> incoming_pairs(int i) const;
  // Distinct from-regions other than region 1, ascending: the regions whose
  // BM coupling alpha_i is tunable.
  std::vector<int> bm_regions() const;
  // Index of (i,j) in B, or -1.
  int find_pair(int i, int j) const;
};

// Validates and freezes a domain graph. epsilons[r-1] is the material constant
// of region r = 1..M. Throws std::invalid_argument on: M < 2, nonpositive
// epsilon or omega, self-loops, duplicate interfaces (orientation-insensitive),
// interfaces oriented into region 1, or unknown region ids.
DomainGraph build_domain_graph(const std::vector<Real>& epsilons,
                               const std::vector<Interface>& interface_specs,
                               Real omega);

AdjacencySets adjacency_sets(const DomainGraph& graph, int region);

// Returns a copy with interface `index` reversed in place ((i,j) -> (j,i)).
// Exterior interfaces (from == 1) cannot be flipped.
DomainGraph flip_interface(const DomainGraph& graph, int index);

// A solvable scene: topology plus incident plane wave and mesh bindings.
struct Scene {
  DomainGraph graph;
  Vec3 incident_direction = Vec3(0, 0, 1);  // unit propagation direction
  // Optional builtin geometry ("concentric_spheres", "stacked_cuboids",
  // "crossed_boxes"); empty means every interface patch names a mesh file.
  std::string generator;
  int subdiv = 2;                   // refinement level for generated meshes
  std::filesystem::path base_dir;   // directory mesh paths resolve against
};

// Scene JSON:
// { "omega": w,
//   "regions": [{"id": 1, "epsilon": 1.0}, ...],
//   "interfaces": [{"from": 1, "to": 2, "mesh": "outer.json"}, ...],
//   "incident": {"direction": [0, 0, 1]},
//   "generator": {"kind": "concentric_spheres", "subdiv": 2} }   (optional)
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

}  // namespace helmbem

#endif  // HELMBEM_SCENE_HPP
