#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace logfem {

// Conforming partition of an interval (dim 1) or structured triangulation of
// an axis-aligned rectangle (dim 2). Immutable after construction and safe to
// share across concurrent workers.
struct Mesh {
  int dim = 1;
  std::vector<std::array<double, 2>> nodes;    // coordinates; [1] unused in 1D
  std::vector<std::array<int, 3>> elements;    // node indices; [2] == -1 in 1D
  std::vector<int> boundary_nodes;             // ascending
  std::vector<std::uint8_t> node_on_boundary;  // mask over all nodes
  double h = 0.0;                              // max element diameter
  int degree_support = 1;                      // 2 in 1D, 1 in 2D

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  int nodes_per_element() const { return dim == 1 ? 2 : 3; }
  bool is_boundary_node(int k) const { return node_on_boundary[static_cast<std::size_t>(k)] != 0; }

  double element_measure(int e) const;   // length (1D) or area (2D)
  double element_diameter(int e) const;
};

// n_elements equal subintervals of (a, b); boundary nodes are the endpoints.
Mesh uniform_interval(double a, double b, int n_elements);

// nx-by-ny grid of rectangles, each split into two triangles. The diagonal
// direction alternates in a checkerboard pattern, so meshes of rectangles
// centred at the origin (with even nx, ny) are invariant under the
// reflections x -> -x and y -> -y. h is the cell diagonal.
Mesh structured_triangulation(double ax, double bx, double ay, double by, int nx, int ny);

// Plain-text listing for debugging: one node per line (index, coords), then
// one element per line (index, node indices).
void write_mesh_dump(const Mesh& mesh, std::ostream& out);

}  // namespace logfem
