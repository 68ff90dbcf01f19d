// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_MESH_HPP
#define HELMBEM_MESH_HPP

#include <array>
#include <filesystem>
#include <utility>
#include <vector>

#include "helmbem/scene.hpp"
#include "helmbem/types.hpp"

namespace helmbem {

// Triangle surface mesh with one interface tag per triangle. The right-hand
// winding normal of every triangle points from the owning interface's
// from-region into its to-region.
struct TriangleMesh {
  Eigen::Matrix<Real, Eigen::Dynamic, 3> vertices;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;
  Eigen::VectorXi tags;  // interface index into B, one per triangle

  Index num_vertices() const { return vertices.rows(); }
  Index num_triangles() const { return triangles.rows(); }
};

// One constant boundary element: geometry plus its interface index.
struct Element {
  Vec3 v0, v1, v2;
  Vec3 centroid;  // collocation point
  Vec3 normal;    // unit, right-hand rule from the stored winding
  Real area = 0;
  int pair = 0;  // interface index into B
};

// All elements of a scene grouped contiguously by interface:
// elements[first[b] .. first[b+1]) belong to pair b, in mesh order.
struct ElementSet {
  std::vector<Element> elements;
  std::vector<Index> first;  // size N_B + 1

  Index count(int b) const { return first[static_cast<size_t>(b) + 1] - first[static_cast<size_t>(b)]; }
  Index total() const { return static_cast<Index>(elements.size()); }
};

// Unit-ish icosphere: subdivided icosahedron projected to the sphere.
// 20 * 4^subdivisions triangles, outward winding, tags all zero.
TriangleMesh icosphere(const Vec3& center, Real radius, int subdivisions);

// Closed axis-aligned box surface; each face is gridded into
// divisions[u] x divisions[v] quads split into two triangles, outward winding.
TriangleMesh cuboid_mesh(const Vec3& min_corner, const Vec3& max_corner,
                         const std::array<int, 3>& divisions);

// Reverses the winding (and hence the normals) of every triangle with the
// given tag; tag < 0 reverses the whole mesh.
void reverse_winding(TriangleMesh& mesh, int tag = -1);

// Concentric-spheres benchmark: inner ball Omega_3 of radius r_inner inside
// shell Omega_2 of radius r_outer, exterior Omega_1. B = [(1,2),(3,2)]:
// the outer sphere's normals point inward (region 1 -> 2), the inner sphere's
// outward (region 3 -> 2). Returns one mesh per interface.
std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_spheres(
    Real r_inner, Real r_outer, int subdivisions, const std::vector<Real>& epsilons, Real omega);

// Two stacked unit cuboids sharing a horizontal face: Omega_2 below, Omega_3
// above, B = [(1,2),(1,3),(3,2)]. The shared face is meshed once and assigned
// to (3,2); all patches are vertex-conforming. `divisions` grids each unit
// face into divisions^2 quads.
std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_stacked_cuboids(
    int divisions, const std::vector<Real>& epsilons, Real omega);

// Four unit boxes in two layers: the lower pair (Omega_2, Omega_3) aligned
// along the x2-axis, the upper pair (Omega_4, Omega_5) along the x1-axis, so
// every pair of boxes touches. B = [(1,2),(1,3),(1,4),(1,5),(2,3),(2,4),
// (3,4),(4,5),(5,2),(5,3)].
std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_crossed_boxes(
    int divisions, const std::vector<Real>& epsilons, Real omega);

// Mesh JSON: { "vertices": [[x,y,z],...], "triangles": [[a,b,c],...],
// "tags": [int,...] }. Loading validates index ranges, rejects empty meshes
// and unreferenced vertices.
TriangleMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);

// Flattens the meshes of a scene into per-interface element groups. Requires
// every triangle tag to name a valid interface. Degenerate triangles throw.
ElementSet build_elements(const DomainGraph& graph, const std::vector<TriangleMesh>& meshes);

Real total_area(const TriangleMesh& mesh);

}  // namespace helmbem

#endif  // HELMBEM_MESH_HPP
