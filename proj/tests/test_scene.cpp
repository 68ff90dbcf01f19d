// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helmbem/scene.hpp"

using namespace helmbem;

namespace {

DomainGraph spheres_graph(std::vector<Real> eps = {1.0, 2.0, 3.0}, Real omega = 1.0) {
  return build_domain_graph(eps, {{1, 2, "outer"}, {3, 2, "inner"}}, omega);
}

DomainGraph four_domain_graph() {
  return build_domain_graph({1.0, 2.0, 3.0, 4.0},
                            {{1, 2, "a"}, {1, 3, "b"}, {3, 2, "c"}, {4, 3, "d"}}, 1.0);
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("domain graph preserves the interface order") {
  const DomainGraph g = spheres_graph();
  REQUIRE(g.num_regions() == 3);
  REQUIRE(g.num_interfaces() == 2);
  CHECK(g.interfaces[0].from == 1);
  CHECK(g.interfaces[0].to == 2);
  CHECK(g.interfaces[1].from == 3);
  CHECK(g.interfaces[1].to == 2);

  const DomainGraph g4 = four_domain_graph();
  CHECK(g4.num_interfaces() == 4);
  CHECK(g4.find_pair(1, 3) == 1);
  CHECK(g4.find_pair(3, 2) == 2);
  CHECK(g4.find_pair(2, 3) == -1);
}

TEST_CASE("domain graph validation rejects bad input") {
  CHECK_THROWS_AS(build_domain_graph({1.0}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0}, {}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_domain_graph({1.0, -2.0}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_domain_graph({1.0, 0.0}, {}, 1.0), std::invalid_argument);
  // oriented into region 1
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0}, {{2, 1, "x"}}, 1.0), std::invalid_argument);
  // self-loop
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0}, {{2, 2, "x"}}, 1.0), std::invalid_argument);
  // unknown region
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0}, {{1, 7, "x"}}, 1.0), std::invalid_argument);
  // duplicate, same orientation
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0, 3.0}, {{2, 3, "x"}, {2, 3, "y"}}, 1.0),
                  std::invalid_argument);
  // duplicate, opposite orientation: same geometric interface
  CHECK_THROWS_AS(build_domain_graph({1.0, 2.0, 3.0}, {{2, 3, "x"}, {3, 2, "y"}}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("material accessors") {
  const DomainGraph g = spheres_graph({1.0, 2.0, 3.0}, 2.0);
  CHECK(g.epsilon(2) == doctest::Approx(2.0));
  CHECK(g.wavenumber(1) == doctest::Approx(2.0));
  CHECK(g.wavenumber(3) == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK_THROWS_AS(g.epsilon(0), std::invalid_argument);
  CHECK_THROWS_AS(g.epsilon(4), std::invalid_argument);

  // alpha_1 = -i / k_1
  CHECK(g.alpha1().real() == doctest::Approx(0.0));
  CHECK(g.alpha1().imag() == doctest::Approx(-0.5));
  const DomainGraph g2 = spheres_graph({4.0, 2.0, 3.0}, 1.0);  // k_1 = 2
  CHECK(g2.alpha1().imag() == doctest::Approx(-0.5));
}

TEST_CASE("adjacency sets match the interface list") {
  const DomainGraph g4 = four_domain_graph();
  const AdjacencySets t3 = adjacency_sets(g4, 3);
  CHECK(t3.all == std::set<int>{1, 2, 4});
  CHECK(t3.outward == std::set<int>{2});
  CHECK(t3.inward == std::set<int>{1, 4});

  const DomainGraph g = spheres_graph();
  const AdjacencySets t2 = adjacency_sets(g, 2);
  CHECK(t2.outward.empty());
  CHECK(t2.inward == std::set<int>{1, 3});
  const AdjacencySets t1 = adjacency_sets(g, 1);
  CHECK(t1.outward == std::set<int>{2});
  CHECK(t1.inward.empty());

  CHECK_THROWS_AS(adjacency_sets(g, 9), std::invalid_argument);

  // Sum over regions of |outward| equals N_B, likewise for |inward|.
  for (const DomainGraph& graph : {g, g4}) {
    size_t outward = 0, inward = 0;
    for (int r = 1; r <= graph.num_regions(); ++r) {
      outward += adjacency_sets(graph, r).outward.size();
      inward += adjacency_sets(graph, r).inward.size();
    }
    CHECK(outward == static_cast<size_t>(graph.num_interfaces()));
    CHECK(inward == static_cast<size_t>(graph.num_interfaces()));
  }
}

TEST_CASE("pair queries") {
  const DomainGraph g4 = four_domain_graph();
  CHECK(g4.outgoing_pairs(1) == std::vector<int>{0, 1});
  CHECK(g4.outgoing_pairs(3) == std::vector<int>{2});
  CHECK(g4.incoming_pairs(3) == std::vector<int>{1, 3});
  CHECK(g4.incoming_pairs(4).empty());
  CHECK(g4.bm_regions() == std::vector<int>{3, 4});
  CHECK(spheres_graph().bm_regions() == std::vector<int>{3});
}

TEST_CASE("flip_interface reverses one pair and is an involution") {
  const DomainGraph g = spheres_graph();
  const DomainGraph flipped = flip_interface(g, 1);
  CHECK(flipped.interfaces[1].from == 2);
  CHECK(flipped.interfaces[1].to == 3);
  CHECK(flipped.interfaces[0].from == 1);  // untouched
  CHECK(flipped.interfaces[1].patch == g.interfaces[1].patch);

  const DomainGraph back = flip_interface(flipped, 1);
  CHECK(back.interfaces[1].from == 3);
  CHECK(back.interfaces[1].to == 2);

  CHECK_THROWS_AS(flip_interface(g, 0), std::invalid_argument);   // exterior
  CHECK_THROWS_AS(flip_interface(g, -1), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(flip_interface(g, 2), std::invalid_argument);
}

TEST_CASE("scene JSON round-trip") {
  Scene scene;
  scene.graph = spheres_graph({1.0, 0.5, 10.0}, 3.5);
  scene.incident_direction = Vec3(1, 2, 2).normalized();
  scene.generator = "concentric_spheres";
  scene.subdiv = 3;

  const auto path = temp_file("helmbem_scene_roundtrip.json");
  save_scene(scene, path);
  const Scene loaded = load_scene(path);
  std::filesystem::remove(path);

  CHECK(loaded.graph.omega == doctest::Approx(3.5));
  REQUIRE(loaded.graph.num_regions() == 3);
  CHECK(loaded.graph.epsilon(2) == doctest::Approx(0.5));
  REQUIRE(loaded.graph.num_interfaces() == 2);
  CHECK(loaded.graph.interfaces[0].from == 1);
  CHECK(loaded.graph.interfaces[1].from == 3);
  CHECK(loaded.graph.interfaces[0].patch == "outer");
  CHECK((loaded.incident_direction - scene.incident_direction).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(loaded.generator == "concentric_spheres");
  CHECK(loaded.subdiv == 3);
}

TEST_CASE("scene loading errors") {
  CHECK_THROWS(load_scene(temp_file("helmbem_does_not_exist.json")));

  const auto bad = temp_file("helmbem_scene_bad.json");
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK_THROWS(load_scene(bad));

  {
    std::ofstream out(bad);
    out << R"({"omega": 1.0, "regions": [{"id": 1, "epsilon": 1.0}, {"id": 3, "epsilon": 2.0}],
               "interfaces": []})";
  }
  CHECK_THROWS(load_scene(bad));  // region ids not contiguous

  {
    std::ofstream out(bad);
    out << R"({"omega": 1.0, "regions": [{"id": 1, "epsilon": 1.0}, {"id": 2, "epsilon": 2.0}],
               "interfaces": [{"from": 2, "to": 1, "mesh": "m"}]})";
  }
  CHECK_THROWS_AS(load_scene(bad), std::invalid_argument);  // oriented into region 1

  {
    std::ofstream out(bad);
    out << R"({"omega": 1.0, "regions": [{"id": 1, "epsilon": 1.0}, {"id": 2, "epsilon": 2.0}],
               "interfaces": [{"from": 1, "to": 2, "mesh": "m"}],
               "incident": {"direction": [0, 0, 0]}})";
  }
  CHECK_THROWS_AS(load_scene(bad), std::invalid_argument);  // zero incident direction
  std::filesystem::remove(bad);
}

TEST_CASE("loaded incident direction is normalized") {
  const auto path = temp_file("helmbem_scene_dir.json");
  {
    std::ofstream out(path);
    out << R"({"omega": 1.0, "regions": [{"id": 1, "epsilon": 1.0}, {"id": 2, "epsilon": 2.0}],
               "interfaces": [{"from": 1, "to": 2, "mesh": "m"}],
               "incident": {"direction": [0, 0, 5]}})";
  }
  const Scene scene = load_scene(path);
  std::filesystem::remove(path);
  CHECK(scene.incident_direction.norm() == doctest::Approx(1.0));
  CHECK(scene.incident_direction.z() == doctest::Approx(1.0));
}
