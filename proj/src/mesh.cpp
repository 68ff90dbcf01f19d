// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#include "helmbem/mesh.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace helmbem {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

Element make_element(const Vec3& v0, const Vec3& v1, const Vec3& v2, int pair) {
  Element e;
  e.v0 = v0;
  e.v1 = v1;
  e.v2 = v2;
  e.centroid = (v0 + v1 + v2) / 3.0;
  const Vec3 cross = (v1 - v0).cross(v2 - v0);
  e.area = 0.5 * cross.norm();
  const Real scale = std::max({(v1 - v0).squaredNorm(), (v2 - v0).squaredNorm(),
                               (v2 - v1).squaredNorm()});
  if (!(e.area > 1e-12 * scale)) fail("degenerate triangle");
  e.normal = cross.normalized();
  e.pair = pair;
  return e;
}

// Accumulates triangles into growing vertex/index buffers with exact-position
// vertex deduplication on an integer lattice.
struct LatticeMeshBuilder {
  std::map<std::array<int, 3>, int> vertex_ids;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  Vec3 origin;
  Real spacing = 1.0;

  int vertex(const std::array<int, 3>& key) {
    auto it = vertex_ids.find(key);
    if (it != vertex_ids.end()) return it->second;
    const int id = static_cast<int>(vertices.size());
    vertex_ids.emplace(key, id);
    vertices.push_back(origin + spacing * Vec3(key[0], key[1], key[2]));
    return id;
  }

  void triangle(const std::array<int, 3>& a, const std::array<int, 3>& b,
                const std::array<int, 3>& c) {
    triangles.push_back({vertex(a), vertex(b), vertex(c)});
  }

  TriangleMesh finish(int tag) const {
    TriangleMesh mesh;
    mesh.vertices.resize(static_cast<Index>(vertices.size()), 3);
    for (size_t i = 0; i < vertices.size(); ++i) mesh.vertices.row(static_cast<Index>(i)) = vertices[i];
    mesh.triangles.resize(static_cast<Index>(triangles.size()), 3);
    for (size_t i = 0; i < triangles.size(); ++i)
      for (int c = 0; c < 3; ++c) mesh.triangles(static_cast<Index>(i), c) = triangles[i][static_cast<size_t>(c)];
    mesh.tags = Eigen::VectorXi::Constant(mesh.num_triangles(), tag);
    return mesh;
  }
};

// Meshes every material interface of a composite of axis-aligned unit cells.
// region_of(cx,cy,cz) maps a lattice cell to its region (1 = outside; out of
// range cells are outside). Each unit face becomes an n x n quad grid; all
// vertices live on the fine lattice, so neighboring patches conform exactly.
std::vector<TriangleMesh> voxel_interface_meshes(
    const DomainGraph& graph, const Vec3& origin, const std::array<int, 3>& dims, int n,
    const std::function<int(int, int, int)>& region_of) {
  if (n < 1) fail("divisions must be >= 1");
  std::vector<LatticeMeshBuilder> builders(static_cast<size_t>(graph.num_interfaces()));
  for (auto& b : builders) {
    b.origin = origin;
    b.spacing = 1.0 / n;
  }

  auto region_at = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= dims[0] || y >= dims[1] || z >= dims[2]) return 1;
    return region_of(x, y, z);
  };

  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;  // e_u x e_v = e_axis
    std::array<int, 3> c{};
    for (c[axis] = -1; c[axis] < dims[axis]; ++c[axis])
      for (c[u] = 0; c[u] < dims[u]; ++c[u])
        for (c[v] = 0; c[v] < dims[v]; ++c[v]) {
          std::array<int, 3> d = c;
          d[axis] += 1;
          const int lo = region_at(c[0], c[1], c[2]);
          const int hi = region_at(d[0], d[1], d[2]);
          if (lo == hi) continue;
          int pair = graph.find_pair(lo, hi);
          bool along_axis = true;  // normal +e_axis points lo -> hi
          if (pair < 0) {
            pair = graph.find_pair(hi, lo);
            along_axis = false;
          }
          if (pair < 0)
            fail("cell adjacency (" + std::to_string(lo) + "," + std::to_string(hi) +
                 ") not declared in the domain graph");

          // Fine-lattice corner of the face: the face sits at the +axis side
          // of cell c, spanning the u and v axes.
          std::array<int, 3> base{};
          base[axis] = (c[axis] + 1) * n;
          base[u] = c[u] * n;
          base[v] = c[v] * n;
          auto at = [&](int i, int j) {
            std::array<int, 3> key = base;
            key[u] += i;
            key[v] += j;
            return key;
          };
          LatticeMeshBuilder& patch = builders[static_cast<size_t>(pair)];
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              if (along_axis) {
                patch.triangle(at(i, j), at(i + 1, j), at(i + 1, j + 1));
                patch.triangle(at(i, j), at(i + 1, j + 1), at(i, j + 1));
              } else {
                patch.triangle(at(i, j), at(i + 1, j + 1), at(i + 1, j));
                patch.triangle(at(i, j), at(i, j + 1), at(i + 1, j + 1));
              }
            }
        }
  }

  std::vector<TriangleMesh> meshes;
  for (int b = 0; b < graph.num_interfaces(); ++b) {
    if (builders[static_cast<size_t>(b)].triangles.empty())
      fail("interface " + std::to_string(b) + " has no geometry in the cell complex");
    meshes.push_back(builders[static_cast<size_t>(b)].finish(b));
  }
  return meshes;
}

}  // namespace

TriangleMesh icosphere(const Vec3& center, Real radius, int subdivisions) {
  if (!(radius > 0)) fail("radius must be positive");
  if (subdivisions < 0) fail("subdivisions must be >= 0");

  const Real phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(verts.size());
      verts.push_back((verts[static_cast<size_t>(a)] + verts[static_cast<size_t>(b)]).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }

  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<Index>(verts.size()), 3);
  for (size_t i = 0; i < verts.size(); ++i)
    mesh.vertices.row(static_cast<Index>(i)) = center + radius * verts[i];
  mesh.triangles.resize(static_cast<Index>(faces.size()), 3);
  for (size_t i = 0; i < faces.size(); ++i) {
    // Enforce outward winding regardless of the base table's orientation.
    std::array<int, 3> f = faces[i];
    const Vec3 a = verts[static_cast<size_t>(f[0])], b = verts[static_cast<size_t>(f[1])],
               c = verts[static_cast<size_t>(f[2])];
    if ((b - a).cross(c - a).dot(a + b + c) < 0) std::swap(f[1], f[2]);
    for (int col = 0; col < 3; ++col) mesh.triangles(static_cast<Index>(i), col) = f[static_cast<size_t>(col)];
  }
  mesh.tags = Eigen::VectorXi::Zero(mesh.num_triangles());
  return mesh;
}

TriangleMesh cuboid_mesh(const Vec3& min_corner, const Vec3& max_corner,
                         const std::array<int, 3>& divisions) {
  for (int a = 0; a < 3; ++a) {
    if (!(max_corner[a] > min_corner[a])) fail("degenerate box");
    if (divisions[static_cast<size_t>(a)] < 1) fail("divisions must be >= 1");
  }

  // A box is a 1x1x1 cell complex with anisotropic spacing; reuse the lattice
  // builder with per-axis scaling applied afterwards.
  LatticeMeshBuilder builder;
  builder.origin = Vec3::Zero();
  builder.spacing = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    const int nu = divisions[static_cast<size_t>(u)], nv = divisions[static_cast<size_t>(v)];
    for (int side = 0; side < 2; ++side) {  // side 0: -axis face, side 1: +axis face
      std::array<int, 3> base{};
      base[axis] = side == 0 ? 0 : divisions[static_cast<size_t>(axis)];
      auto at = [&](int i, int j) {
        std::array<int, 3> key = base;
        key[u] = i;
        key[v] = j;
        return key;
      };
      for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
          if (side == 1) {  // outward normal +e_axis
            builder.triangle(at(i, j), at(i + 1, j), at(i + 1, j + 1));
            builder.triangle(at(i, j), at(i + 1, j + 1), at(i, j + 1));
          } else {  // outward normal -e_axis
            builder.triangle(at(i, j), at(i + 1, j + 1), at(i + 1, j));
            builder.triangle(at(i, j), at(i, j + 1), at(i + 1, j + 1));
          }
        }
    }
  }

  TriangleMesh mesh = builder.finish(0);
  for (Index i = 0; i < mesh.num_vertices(); ++i)
    for (int a = 0; a < 3; ++a)
      mesh.vertices(i, a) = min_corner[a] + (max_corner[a] - min_corner[a]) *
                                                mesh.vertices(i, a) / divisions[static_cast<size_t>(a)];
  return mesh;
}

void reverse_winding(TriangleMesh& mesh, int tag) {
  for (Index t = 0; t < mesh.num_triangles(); ++t)
    if (tag < 0 || mesh.tags[t] == tag) std::swap(mesh.triangles(t, 1), mesh.triangles(t, 2));
}

std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_spheres(
    Real r_inner, Real r_outer, int subdivisions, const std::vector<Real>& epsilons, Real omega) {
  if (!(r_inner > 0 && r_inner < r_outer)) fail("need 0 < r_inner < r_outer");
  if (epsilons.size() != 3) fail("spheres scene needs three regions");
  DomainGraph graph = build_domain_graph(
      epsilons, {{1, 2, "sphere_outer"}, {3, 2, "sphere_inner"}}, omega);

  TriangleMesh outer = icosphere(Vec3::Zero(), r_outer, subdivisions);
  reverse_winding(outer);  // normal from region 1 into region 2
  outer.tags.setConstant(0);
  TriangleMesh inner = icosphere(Vec3::Zero(), r_inner, subdivisions);
  inner.tags.setConstant(1);  // outward = from region 3 into region 2
  return {graph, {outer, inner}};
}

std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_stacked_cuboids(
    int divisions, const std::vector<Real>& epsilons, Real omega) {
  if (epsilons.size() != 3) fail("stacked cuboids scene needs three regions");
  DomainGraph graph = build_domain_graph(
      epsilons, {{1, 2, "lower_exterior"}, {1, 3, "upper_exterior"}, {3, 2, "shared_face"}},
      omega);
  auto region_of = [](int, int, int z) { return z == 0 ? 2 : 3; };
  return {graph, voxel_interface_meshes(graph, Vec3(-0.5, -0.5, -1.0), {1, 1, 2}, divisions,
                                        region_of)};
}

std::pair<DomainGraph, std::vector<TriangleMesh>> build_scene_crossed_boxes(
    int divisions, const std::vector<Real>& epsilons, Real omega) {
  if (epsilons.size() != 5) fail("crossed boxes scene needs five regions");
  DomainGraph graph = build_domain_graph(epsilons,
                                         {{1, 2, "box2_exterior"},
                                          {1, 3, "box3_exterior"},
                                          {1, 4, "box4_exterior"},
                                          {1, 5, "box5_exterior"},
                                          {2, 3, "face_23"},
                                          {2, 4, "face_24"},
                                          {3, 4, "face_34"},
                                          {4, 5, "face_45"},
                                          {5, 2, "face_52"},
                                          {5, 3, "face_53"}},
                                         omega);
  // Lower layer split along x2, upper layer split along x1.
  auto region_of = [](int x, int y, int z) { return z == 0 ? (y == 0 ? 2 : 3) : (x == 0 ? 4 : 5); };
  return {graph, voxel_interface_meshes(graph, Vec3(-1.0, -1.0, -1.0), {2, 2, 2}, divisions,
                                        region_of)};
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file " + path.string());
  nlohmann::json j;
  in >> j;

  const auto& jv = j.at("vertices");
  const auto& jt = j.at("triangles");
  if (jv.empty() || jt.empty()) fail("empty mesh file " + path.string());

  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<Index>(jv.size()), 3);
  for (size_t i = 0; i < jv.size(); ++i)
    for (int c = 0; c < 3; ++c) mesh.vertices(static_cast<Index>(i), c) = jv[i].at(static_cast<size_t>(c)).get<Real>();
  mesh.triangles.resize(static_cast<Index>(jt.size()), 3);
  for (size_t i = 0; i < jt.size(); ++i)
    for (int c = 0; c < 3; ++c) mesh.triangles(static_cast<Index>(i), c) = jt[i].at(static_cast<size_t>(c)).get<int>();
  mesh.tags = Eigen::VectorXi::Zero(mesh.num_triangles());
  if (j.contains("tags")) {
    const auto& jtags = j.at("tags");
    if (jtags.size() != jt.size()) fail("tags length mismatch in " + path.string());
    for (size_t i = 0; i < jtags.size(); ++i) mesh.tags[static_cast<Index>(i)] = jtags[i].get<int>();
  }

  std::vector<bool> referenced(static_cast<size_t>(mesh.num_vertices()), false);
  for (Index t = 0; t < mesh.num_triangles(); ++t)
    for (int c = 0; c < 3; ++c) {
      const int v = mesh.triangles(t, c);
      if (v < 0 || v >= mesh.num_vertices()) fail("triangle references vertex out of range");
      referenced[static_cast<size_t>(v)] = true;
    }
  for (size_t v = 0; v < referenced.size(); ++v)
    if (!referenced[v]) fail("vertex " + std::to_string(v) + " is not referenced by any triangle");
  return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (Index v = 0; v < mesh.num_vertices(); ++v)
    j["vertices"].push_back({mesh.vertices(v, 0), mesh.vertices(v, 1), mesh.vertices(v, 2)});
  j["triangles"] = nlohmann::json::array();
  for (Index t = 0; t < mesh.num_triangles(); ++t)
    j["triangles"].push_back({mesh.triangles(t, 0), mesh.triangles(t, 1), mesh.triangles(t, 2)});
  j["tags"] = nlohmann::json::array();
  for (Index t = 0; t < mesh.num_triangles(); ++t) j["tags"].push_back(mesh.tags[t]);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file " + path.string());
  out << j.dump() << "\n";
}

ElementSet build_elements(const DomainGraph& graph, const std::vector<TriangleMesh>& meshes) {
  const int nb = graph.num_interfaces();
  std::vector<std::vector<Element>> groups(static_cast<size_t>(nb));
  for (const TriangleMesh& mesh : meshes)
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
      const int tag = mesh.tags[t];
      if (tag < 0 || tag >= nb) fail("triangle tag " + std::to_string(tag) + " is not an interface");
      groups[static_cast<size_t>(tag)].push_back(
          make_element(mesh.vertices.row(mesh.triangles(t, 0)), mesh.vertices.row(mesh.triangles(t, 1)),
                       mesh.vertices.row(mesh.triangles(t, 2)), tag));
    }

  ElementSet set;
  set.first.assign(static_cast<size_t>(nb) + 1, 0);
  for (int b = 0; b < nb; ++b) {
    set.first[static_cast<size_t>(b) + 1] =
        set.first[static_cast<size_t>(b)] + static_cast<Index>(groups[static_cast<size_t>(b)].size());
    set.elements.insert(set.elements.end(), groups[static_cast<size_t>(b)].begin(),
                        groups[static_cast<size_t>(b)].end());
  }
  return set;
}

Real total_area(const TriangleMesh& mesh) {
  Real area = 0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 a = mesh.vertices.row(mesh.triangles(t, 0));
    const Vec3 b = mesh.vertices.row(mesh.triangles(t, 1));
    const Vec3 c = mesh.vertices.row(mesh.triangles(t, 2));
    area += 0.5 * (b - a).cross(c - a).norm();
  }
  return area;
}

}  // namespace helmbem
