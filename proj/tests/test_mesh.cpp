#include <cmath>
#include <stdexcept>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "logfem/mesh.hpp"
#include "logfem/rng.hpp"

using logfem::Mesh;
using logfem::structured_triangulation;
using logfem::uniform_interval;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("two-element interval") {
  const Mesh mesh = uniform_interval(-1.0, 1.0, 2);
  REQUIRE(mesh.num_nodes() == 3);
  CHECK(mesh.nodes[0][0] == -1.0);
  CHECK(mesh.nodes[1][0] == 0.0);
  CHECK(mesh.nodes[2][0] == 1.0);
  CHECK(mesh.h == 1.0);
  CHECK(mesh.boundary_nodes == std::vector<int>{0, 2});
  CHECK(mesh.degree_support == 2);
}

TEST_CASE("benchmark mesh size h = 2^-5") {
  const Mesh mesh = uniform_interval(-1.0, 1.0, 64);
  CHECK(mesh.h == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-15));
}

TEST_CASE("single element is all boundary") {
  const Mesh mesh = uniform_interval(0.0, 1.0, 1);
  CHECK(mesh.num_elements() == 1);
  CHECK(mesh.num_nodes() == 2);
  CHECK(mesh.boundary_nodes.size() == 2);
}

TEST_CASE("invalid intervals rejected") {
  CHECK_THROWS_AS(uniform_interval(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(uniform_interval(2.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(uniform_interval(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("unit square single cell") {
  const Mesh mesh = structured_triangulation(0.0, 1.0, 0.0, 1.0, 1, 1);
  CHECK(mesh.num_elements() == 2);
  CHECK(mesh.num_nodes() == 4);
  CHECK(mesh.boundary_nodes.size() == 4);
  CHECK(mesh.degree_support == 1);
  CHECK(mesh.h == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("2D h is the cell diagonal") {
  const Mesh mesh = structured_triangulation(-1.0, 1.0, -1.0, 1.0, 64, 64);
  CHECK(mesh.h == doctest::Approx(std::sqrt(2.0) / 32.0).epsilon(1e-14));

  const Mesh fine = structured_triangulation(-10.0, 10.0, -10.0, 10.0, 200, 200);
  // cell side 0.1
  CHECK(fine.nodes[1][0] - fine.nodes[0][0] == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(fine.num_elements() == 2 * 200 * 200);
}

TEST_CASE("degenerate rectangles rejected") {
  CHECK_THROWS_AS(structured_triangulation(0.0, 0.0, 0.0, 1.0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(structured_triangulation(0.0, 1.0, 0.0, 1.0, 0, 2), std::invalid_argument);
}

TEST_CASE("element measures tile the domain") {
  logfem::SplitMix64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rng.uniform(-5.0, 0.0);
    const double b = a + rng.uniform(0.1, 10.0);
    const int n = 1 + static_cast<int>(rng.uniform() * 40);
    const Mesh mesh = uniform_interval(a, b, n);
    double total = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) total += mesh.element_measure(e);
    CHECK(total == doctest::Approx(b - a).epsilon(1e-12));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const double ax = rng.uniform(-3.0, 0.0), bx = ax + rng.uniform(0.5, 4.0);
    const double ay = rng.uniform(-3.0, 0.0), by = ay + rng.uniform(0.5, 4.0);
    const int nx = 1 + static_cast<int>(rng.uniform() * 12);
    const int ny = 1 + static_cast<int>(rng.uniform() * 12);
    const Mesh mesh = structured_triangulation(ax, bx, ay, by, nx, ny);
    double total = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) total += mesh.element_measure(e);
    CHECK(total == doctest::Approx((bx - ax) * (by - ay)).epsilon(1e-12));
  }
}

TEST_CASE("interior incidence counts") {
  const Mesh line = uniform_interval(0.0, 1.0, 7);
  std::map<int, int> node_count;
  for (const auto& el : line.elements) {
    ++node_count[el[0]];
    ++node_count[el[1]];
  }
  for (int k = 0; k < line.num_nodes(); ++k) {
    CHECK(node_count[k] == (line.is_boundary_node(k) ? 1 : 2));
  }

  const Mesh tri = structured_triangulation(0.0, 1.0, 0.0, 2.0, 5, 4);
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& el : tri.elements) {
    for (int a = 0; a < 3; ++a) {
      const int u = el[a], v = el[(a + 1) % 3];
      ++edge_count[{std::min(u, v), std::max(u, v)}];
    }
  }
  for (const auto& [edge, count] : edge_count) {
    const bool both_boundary = tri.is_boundary_node(edge.first) && tri.is_boundary_node(edge.second);
    if (count == 1) {
      CHECK(both_boundary);  // perimeter edge
    } else {
      CHECK(count == 2);  // interior edge shared by exactly two triangles
    }
  }
}

TEST_CASE("element node indices distinct and in range") {
  const Mesh tri = structured_triangulation(-2.0, 2.0, -1.0, 1.0, 6, 3);
  std::set<int> used;
  for (const auto& el : tri.elements) {
    CHECK(el[0] != el[1]);
    CHECK(el[1] != el[2]);
    CHECK(el[0] != el[2]);
    for (int a = 0; a < 3; ++a) {
      CHECK(el[a] >= 0);
      CHECK(el[a] < tri.num_nodes());
      used.insert(el[a]);
    }
  }
  CHECK(static_cast<int>(used.size()) == tri.num_nodes());
}

TEST_CASE("h equals the max element diameter") {
  const Mesh tri = structured_triangulation(0.0, 3.0, 0.0, 1.0, 6, 5);
  double max_diam = 0.0;
  for (int e = 0; e < tri.num_elements(); ++e) max_diam = std::max(max_diam, tri.element_diameter(e));
  CHECK(tri.h == doctest::Approx(max_diam).epsilon(1e-14));
}

TEST_CASE("checkerboard split is reflection symmetric") {
  // even cell counts on a symmetric rectangle: the triangle set must be
  // invariant under x -> -x
  const Mesh tri = structured_triangulation(-1.0, 1.0, -1.0, 1.0, 4, 4);
  auto key = [](double x, double y) { return std::make_pair(std::lround(x * 1e6), std::lround(y * 1e6)); };
  std::map<std::pair<long, long>, int> node_at;
  for (int k = 0; k < tri.num_nodes(); ++k) node_at[key(tri.nodes[k][0], tri.nodes[k][1])] = k;

  std::set<std::set<int>> element_sets;
  for (const auto& el : tri.elements) element_sets.insert({el[0], el[1], el[2]});
  for (const auto& el : tri.elements) {
    std::set<int> mirrored;
    for (int a = 0; a < 3; ++a) {
      const auto& p = tri.nodes[el[a]];
      mirrored.insert(node_at.at(key(-p[0], p[1])));
    }
    CHECK(element_sets.count(mirrored) == 1);
  }
}

TEST_CASE("mesh dump lists nodes then elements") {
  const Mesh mesh = uniform_interval(0.0, 1.0, 2);
  std::ostringstream out;
  logfem::write_mesh_dump(mesh, out);
  CHECK(out.str() ==
        "node 0 0\n"
        "node 1 0.5\n"
        "node 2 1\n"
        "element 0 0 1\n"
        "element 1 1 2\n");
}

TEST_SUITE_END();
