#include "logfem/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace logfem {

double Mesh::element_measure(int e) const {
  const auto& el = elements[static_cast<std::size_t>(e)];
  if (dim == 1) {
    return std::abs(nodes[el[1]][0] - nodes[el[0]][0]);
  }
  const auto& p0 = nodes[el[0]];
  const auto& p1 = nodes[el[1]];
  const auto& p2 = nodes[el[2]];
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  return 0.5 * std::abs(det);
}

double Mesh::element_diameter(int e) const {
  const auto& el = elements[static_cast<std::size_t>(e)];
  if (dim == 1) return element_measure(e);
  double d = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double dx = nodes[el[a]][0] - nodes[el[b]][0];
      const double dy = nodes[el[a]][1] - nodes[el[b]][1];
      d = std::max(d, std::hypot(dx, dy));
    }
  }
  return d;
}

Mesh uniform_interval(double a, double b, int n_elements) {
  if (!(a < b)) throw std::invalid_argument("uniform_interval: requires a < b");
  if (n_elements < 1) throw std::invalid_argument("uniform_interval: requires n_elements >= 1");

  Mesh mesh;
  mesh.dim = 1;
  mesh.degree_support = 2;
  mesh.h = (b - a) / n_elements;
  mesh.nodes.resize(static_cast<std::size_t>(n_elements) + 1);
  for (int i = 0; i <= n_elements; ++i) {
    // endpoints exact, interior nodes by convex combination
    const double t = static_cast<double>(i) / n_elements;
    mesh.nodes[static_cast<std::size_t>(i)] = {(1.0 - t) * a + t * b, 0.0};
  }
  mesh.elements.resize(static_cast<std::size_t>(n_elements));
  for (int e = 0; e < n_elements; ++e) mesh.elements[static_cast<std::size_t>(e)] = {e, e + 1, -1};
  mesh.boundary_nodes = {0, n_elements};
  mesh.node_on_boundary.assign(mesh.nodes.size(), 0);
  mesh.node_on_boundary.front() = 1;
  mesh.node_on_boundary.back() = 1;
  return mesh;
}

Mesh structured_triangulation(double ax, double bx, double ay, double by, int nx, int ny) {
  if (!(ax < bx) || !(ay < by))
    throw std::invalid_argument("structured_triangulation: degenerate rectangle");
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("structured_triangulation: requires nx, ny >= 1");

  Mesh mesh;
  mesh.dim = 2;
  mesh.degree_support = 1;
  const double dx = (bx - ax) / nx;
  const double dy = (by - ay) / ny;
  mesh.h = std::hypot(dx, dy);

  mesh.nodes.resize(static_cast<std::size_t>(nx + 1) * (ny + 1));
  auto node_id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    const double ty = static_cast<double>(j) / ny;
    const double y = (1.0 - ty) * ay + ty * by;
    for (int i = 0; i <= nx; ++i) {
      const double tx = static_cast<double>(i) / nx;
      mesh.nodes[static_cast<std::size_t>(node_id(i, j))] = {(1.0 - tx) * ax + tx * bx, y};
    }
  }

  mesh.elements.reserve(static_cast<std::size_t>(2) * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = node_id(i, j);
      const int v10 = node_id(i + 1, j);
      const int v01 = node_id(i, j + 1);
      const int v11 = node_id(i + 1, j + 1);
      if ((i + j) % 2 == 0) {
        mesh.elements.push_back({v00, v10, v11});
        mesh.elements.push_back({v00, v11, v01});
      } else {
        mesh.elements.push_back({v00, v10, v01});
        mesh.elements.push_back({v10, v11, v01});
      }
    }
  }

  mesh.node_on_boundary.assign(mesh.nodes.size(), 0);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (i == 0 || i == nx || j == 0 || j == ny) {
        const int k = node_id(i, j);
        mesh.node_on_boundary[static_cast<std::size_t>(k)] = 1;
        mesh.boundary_nodes.push_back(k);
      }
    }
  }
  return mesh;
}

void write_mesh_dump(const Mesh& mesh, std::ostream& out) {
  for (int k = 0; k < mesh.num_nodes(); ++k) {
    out << "node " << k << ' ' << mesh.nodes[static_cast<std::size_t>(k)][0];
    if (mesh.dim == 2) out << ' ' << mesh.nodes[static_cast<std::size_t>(k)][1];
    out << '\n';
  }
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[static_cast<std::size_t>(e)];
    out << "element " << e << ' ' << el[0] << ' ' << el[1];
    if (mesh.dim == 2) out << ' ' << el[2];
    out << '\n';
  }
}

}  // namespace logfem
