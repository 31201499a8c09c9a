#include "logfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logfem/lognl.hpp"

namespace logfem {

FeSpace::FeSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 1 || degree > mesh.degree_support)
    throw std::invalid_argument("FeSpace: unsupported element degree for this mesh");

  const int ne = mesh.num_elements();
  if (mesh.dim == 1) {
    dofs_per_element_ = degree + 1;
    if (degree == 1) {
      n_dofs_ = mesh.num_nodes();
      elem_dofs_.resize(static_cast<std::size_t>(ne) * 2);
      for (int e = 0; e < ne; ++e) {
        elem_dofs_[2 * static_cast<std::size_t>(e)] = mesh.elements[static_cast<std::size_t>(e)][0];
        elem_dofs_[2 * static_cast<std::size_t>(e) + 1] = mesh.elements[static_cast<std::size_t>(e)][1];
      }
      dof_points_ = mesh.nodes;
      dof_boundary_ = mesh.node_on_boundary;
    } else {
      // vertex i -> DOF 2i, midpoint of element e -> DOF 2e + 1
      n_dofs_ = 2 * ne + 1;
      elem_dofs_.resize(static_cast<std::size_t>(ne) * 3);
      dof_points_.resize(static_cast<std::size_t>(n_dofs_));
      dof_boundary_.assign(static_cast<std::size_t>(n_dofs_), 0);
      for (int e = 0; e < ne; ++e) {
        const auto& el = mesh.elements[static_cast<std::size_t>(e)];
        elem_dofs_[3 * static_cast<std::size_t>(e)] = 2 * el[0];
        elem_dofs_[3 * static_cast<std::size_t>(e) + 1] = 2 * e + 1;
        elem_dofs_[3 * static_cast<std::size_t>(e) + 2] = 2 * el[1];
        const auto& p0 = mesh.nodes[static_cast<std::size_t>(el[0])];
        const auto& p1 = mesh.nodes[static_cast<std::size_t>(el[1])];
        dof_points_[static_cast<std::size_t>(2 * el[0])] = p0;
        dof_points_[static_cast<std::size_t>(2 * el[1])] = p1;
        dof_points_[static_cast<std::size_t>(2 * e + 1)] = {0.5 * (p0[0] + p1[0]), 0.0};
      }
      for (int k : mesh.boundary_nodes) dof_boundary_[static_cast<std::size_t>(2 * k)] = 1;
    }
  } else {
    dofs_per_element_ = 3;
    n_dofs_ = mesh.num_nodes();
    elem_dofs_.resize(static_cast<std::size_t>(ne) * 3);
    for (int e = 0; e < ne; ++e) {
      for (int a = 0; a < 3; ++a)
        elem_dofs_[3 * static_cast<std::size_t>(e) + static_cast<std::size_t>(a)] =
            mesh.elements[static_cast<std::size_t>(e)][a];
    }
    dof_points_ = mesh.nodes;
    dof_boundary_ = mesh.node_on_boundary;
  }

  half_bw_ = 0;
  for (int e = 0; e < ne; ++e) {
    int lo = element_dof(e, 0), hi = lo;
    for (int a = 1; a < dofs_per_element_; ++a) {
      lo = std::min(lo, element_dof(e, a));
      hi = std::max(hi, element_dof(e, a));
    }
    half_bw_ = std::max(half_bw_, hi - lo);
  }

  interior_index_.assign(static_cast<std::size_t>(n_dofs_), -1);
  for (int k = 0; k < n_dofs_; ++k) {
    if (dof_boundary_[static_cast<std::size_t>(k)]) {
      boundary_dofs_.push_back(k);
    } else {
      interior_index_[static_cast<std::size_t>(k)] = static_cast<int>(interior_dofs_.size());
      interior_dofs_.push_back(k);
    }
  }

  rule_ = logfem::assembly_rule(mesh.dim, degree_);
}

void FeSpace::shape_values(const std::array<double, 2>& xi, std::span<double> n) const {
  const double x = xi[0];
  if (dim() == 1) {
    if (degree_ == 1) {
      n[0] = 1.0 - x;
      n[1] = x;
    } else {
      n[0] = (1.0 - x) * (1.0 - 2.0 * x);
      n[1] = 4.0 * x * (1.0 - x);
      n[2] = x * (2.0 * x - 1.0);
    }
  } else {
    n[0] = 1.0 - x - xi[1];
    n[1] = x;
    n[2] = xi[1];
  }
}

void FeSpace::shape_ref_gradients(const std::array<double, 2>& xi,
                                  std::span<std::array<double, 2>> g) const {
  const double x = xi[0];
  if (dim() == 1) {
    if (degree_ == 1) {
      g[0] = {-1.0, 0.0};
      g[1] = {1.0, 0.0};
    } else {
      g[0] = {4.0 * x - 3.0, 0.0};
      g[1] = {4.0 - 8.0 * x, 0.0};
      g[2] = {4.0 * x - 1.0, 0.0};
    }
  } else {
    g[0] = {-1.0, -1.0};
    g[1] = {1.0, 0.0};
    g[2] = {0.0, 1.0};
  }
}

std::array<double, 2> FeSpace::map_to_physical(int e, const std::array<double, 2>& xi) const {
  const auto& el = mesh_->elements[static_cast<std::size_t>(e)];
  if (dim() == 1) {
    const double x0 = mesh_->nodes[static_cast<std::size_t>(el[0])][0];
    const double x1 = mesh_->nodes[static_cast<std::size_t>(el[1])][0];
    return {x0 + xi[0] * (x1 - x0), 0.0};
  }
  const auto& p0 = mesh_->nodes[static_cast<std::size_t>(el[0])];
  const auto& p1 = mesh_->nodes[static_cast<std::size_t>(el[1])];
  const auto& p2 = mesh_->nodes[static_cast<std::size_t>(el[2])];
  return {p0[0] + xi[0] * (p1[0] - p0[0]) + xi[1] * (p2[0] - p0[0]),
          p0[1] + xi[0] * (p1[1] - p0[1]) + xi[1] * (p2[1] - p0[1])};
}

void FeSpace::physical_gradients(int e, const std::array<double, 2>& xi,
                                 std::span<std::array<double, 2>> g) const {
  shape_ref_gradients(xi, g);
  const auto& el = mesh_->elements[static_cast<std::size_t>(e)];
  if (dim() == 1) {
    const double x0 = mesh_->nodes[static_cast<std::size_t>(el[0])][0];
    const double x1 = mesh_->nodes[static_cast<std::size_t>(el[1])][0];
    const double inv = 1.0 / (x1 - x0);
    for (int a = 0; a < dofs_per_element_; ++a) g[static_cast<std::size_t>(a)][0] *= inv;
    return;
  }
  const auto& p0 = mesh_->nodes[static_cast<std::size_t>(el[0])];
  const auto& p1 = mesh_->nodes[static_cast<std::size_t>(el[1])];
  const auto& p2 = mesh_->nodes[static_cast<std::size_t>(el[2])];
  const double j00 = p1[0] - p0[0], j01 = p2[0] - p0[0];
  const double j10 = p1[1] - p0[1], j11 = p2[1] - p0[1];
  const double det = j00 * j11 - j01 * j10;
  // grad = J^{-T} ref_grad
  for (int a = 0; a < 3; ++a) {
    const double gx = g[static_cast<std::size_t>(a)][0], gy = g[static_cast<std::size_t>(a)][1];
    g[static_cast<std::size_t>(a)] = {(j11 * gx - j10 * gy) / det, (-j01 * gx + j00 * gy) / det};
  }
}

namespace {

constexpr int kMaxLocal = 3;

struct ElementQuadCache {
  // shape values and weighted measure per quadrature point
  std::vector<std::array<double, kMaxLocal>> n;
  std::vector<double> wq;  // quadrature weight (reference)
};

ElementQuadCache make_shape_cache(const FeSpace& space, const QuadratureRule& quad) {
  ElementQuadCache cache;
  cache.n.resize(static_cast<std::size_t>(quad.size()));
  cache.wq = quad.weights;
  for (int q = 0; q < quad.size(); ++q)
    space.shape_values(quad.points[static_cast<std::size_t>(q)],
                       std::span<double>(cache.n[static_cast<std::size_t>(q)].data(),
                                         static_cast<std::size_t>(space.dofs_per_element())));
  return cache;
}

double jacobian_factor(const FeSpace& space, int e) {
  // physical measure / reference measure
  return space.dim() == 1 ? space.element_measure(e) : 2.0 * space.element_measure(e);
}

}  // namespace

BandedRealMatrix assemble_mass(const FeSpace& space) {
  BandedRealMatrix m(space.num_dofs(), space.half_bandwidth());
  const auto& quad = space.rule();
  const auto cache = make_shape_cache(space, quad);
  const int nl = space.dofs_per_element();
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    double local[kMaxLocal][kMaxLocal] = {};
    for (int q = 0; q < quad.size(); ++q) {
      const auto& n = cache.n[static_cast<std::size_t>(q)];
      const double w = cache.wq[static_cast<std::size_t>(q)] * jac;
      for (int a = 0; a < nl; ++a)
        for (int b = a; b < nl; ++b) local[a][b] += w * n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)];
    }
    for (int a = 0; a < nl; ++a) {
      m.add(space.element_dof(e, a), space.element_dof(e, a), local[a][a]);
      for (int b = a + 1; b < nl; ++b) {
        // bitwise-symmetric by construction
        m.add(space.element_dof(e, a), space.element_dof(e, b), local[a][b]);
        m.add(space.element_dof(e, b), space.element_dof(e, a), local[a][b]);
      }
    }
  }
  return m;
}

BandedRealMatrix assemble_stiffness(const FeSpace& space) {
  BandedRealMatrix s(space.num_dofs(), space.half_bandwidth());
  const auto& quad = space.rule();
  const int nl = space.dofs_per_element();
  std::array<std::array<double, 2>, kMaxLocal> grads;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    double local[kMaxLocal][kMaxLocal] = {};
    for (int q = 0; q < quad.size(); ++q) {
      space.physical_gradients(e, quad.points[static_cast<std::size_t>(q)],
                               std::span<std::array<double, 2>>(grads.data(), static_cast<std::size_t>(nl)));
      const double w = quad.weights[static_cast<std::size_t>(q)] * jac;
      for (int a = 0; a < nl; ++a)
        for (int b = a; b < nl; ++b)
          local[a][b] += w * (grads[static_cast<std::size_t>(a)][0] * grads[static_cast<std::size_t>(b)][0] +
                              grads[static_cast<std::size_t>(a)][1] * grads[static_cast<std::size_t>(b)][1]);
    }
    for (int a = 0; a < nl; ++a) {
      s.add(space.element_dof(e, a), space.element_dof(e, a), local[a][a]);
      for (int b = a + 1; b < nl; ++b) {
        s.add(space.element_dof(e, a), space.element_dof(e, b), local[a][b]);
        s.add(space.element_dof(e, b), space.element_dof(e, a), local[a][b]);
      }
    }
  }
  return s;
}

std::vector<cplx> assemble_load_f(const FeSpace& space, const CoefficientVector& u,
                                  const QuadratureRule& quad) {
  if (&u.space() != &space) throw std::invalid_argument("assemble_load_f: mismatched mesh/degree");
  std::vector<cplx> load(static_cast<std::size_t>(space.num_dofs()));
  const auto cache = make_shape_cache(space, quad);
  const int nl = space.dofs_per_element();
  const auto coeffs = u.values();
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    cplx local[kMaxLocal] = {};
    cplx c[kMaxLocal];
    for (int a = 0; a < nl; ++a) c[a] = coeffs[static_cast<std::size_t>(space.element_dof(e, a))];
    for (int q = 0; q < quad.size(); ++q) {
      const auto& n = cache.n[static_cast<std::size_t>(q)];
      cplx val = 0.0;
      for (int a = 0; a < nl; ++a) val += c[a] * n[static_cast<std::size_t>(a)];
      const cplx fv = lognl::f(val);
      const double w = cache.wq[static_cast<std::size_t>(q)] * jac;
      for (int a = 0; a < nl; ++a) local[a] += (w * n[static_cast<std::size_t>(a)]) * fv;
    }
    for (int a = 0; a < nl; ++a) load[static_cast<std::size_t>(space.element_dof(e, a))] += local[a];
  }
  return load;
}

CoefficientVector interpolate(const FeSpace& space, const ScalarField& g) {
  CoefficientVector u(space);
  for (int k = 0; k < space.num_dofs(); ++k) u[k] = g(space.dof_point(k));
  return u;
}

CoefficientVector ritz_project(const FeSpace& space, const GradientField& grad_g,
                               const ScalarField& g_boundary) {
  CoefficientVector out(space);
  for (int k : space.boundary_dofs()) out[k] = g_boundary(space.dof_point(k));

  const auto interior = space.interior_dofs();
  const int ni = static_cast<int>(interior.size());
  if (ni == 0) return out;

  const auto stiffness = assemble_stiffness(space);

  // right side: (grad g, grad phi_i) by quadrature, minus boundary columns
  std::vector<cplx> rhs(static_cast<std::size_t>(space.num_dofs()));
  const auto& quad = space.rule();
  const int nl = space.dofs_per_element();
  std::array<std::array<double, 2>, kMaxLocal> grads;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    for (int q = 0; q < quad.size(); ++q) {
      const auto& xi = quad.points[static_cast<std::size_t>(q)];
      space.physical_gradients(e, xi, std::span<std::array<double, 2>>(grads.data(), static_cast<std::size_t>(nl)));
      const auto gg = grad_g(space.map_to_physical(e, xi));
      const double w = quad.weights[static_cast<std::size_t>(q)] * jac;
      for (int a = 0; a < nl; ++a) {
        rhs[static_cast<std::size_t>(space.element_dof(e, a))] +=
            w * (gg[0] * grads[static_cast<std::size_t>(a)][0] + gg[1] * grads[static_cast<std::size_t>(a)][1]);
      }
    }
  }

  std::vector<cplx> reduced(static_cast<std::size_t>(ni));
  for (int p = 0; p < ni; ++p) {
    const int i = interior[static_cast<std::size_t>(p)];
    cplx v = rhs[static_cast<std::size_t>(i)];
    const int jlo = std::max(0, i - space.half_bandwidth());
    const int jhi = std::min(space.num_dofs() - 1, i + space.half_bandwidth());
    for (int j = jlo; j <= jhi; ++j) {
      if (space.dof_on_boundary(j)) v -= stiffness.get(i, j) * out[j];
    }
    reduced[static_cast<std::size_t>(p)] = v;
  }

  BandedRealMatrix reduced_stiffness(ni, space.half_bandwidth());
  for (int p = 0; p < ni; ++p) {
    const int i = interior[static_cast<std::size_t>(p)];
    const int jlo = std::max(0, i - space.half_bandwidth());
    const int jhi = std::min(space.num_dofs() - 1, i + space.half_bandwidth());
    for (int j = jlo; j <= jhi; ++j) {
      const int pj = space.interior_index(j);
      if (pj >= 0) reduced_stiffness.at(p, pj) = stiffness.get(i, j);
    }
  }

  const BandedLU<double> lu(reduced_stiffness);
  lu.solve_in_place(std::span<cplx>(reduced));
  for (int p = 0; p < ni; ++p) out[interior[static_cast<std::size_t>(p)]] = reduced[static_cast<std::size_t>(p)];
  return out;
}

cplx fe_value(const FeSpace& space, std::span<const cplx> coeffs, int e,
              const std::array<double, 2>& xi) {
  double n[kMaxLocal];
  const int nl = space.dofs_per_element();
  space.shape_values(xi, std::span<double>(n, static_cast<std::size_t>(nl)));
  cplx val = 0.0;
  for (int a = 0; a < nl; ++a) val += coeffs[static_cast<std::size_t>(space.element_dof(e, a))] * n[a];
  return val;
}

ErrorNorms error_norms(const FeSpace& space, const CoefficientVector& u_h, const ScalarField& exact) {
  if (&u_h.space() != &space) throw std::invalid_argument("error_norms: mismatched mesh/degree");
  ErrorNorms norms;
  double sum = 0.0;
  for (int k = 0; k < space.num_dofs(); ++k) {
    const double d = std::abs(u_h[k] - exact(space.dof_point(k)));
    sum += d * d;
    norms.linf = std::max(norms.linf, d);
  }
  norms.l2 = std::sqrt(std::pow(space.mesh().h, space.dim()) * sum);

  const auto& quad = space.rule();
  const auto cache = make_shape_cache(space, quad);
  const int nl = space.dofs_per_element();
  const auto coeffs = u_h.values();
  double acc = 0.0;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    for (int q = 0; q < quad.size(); ++q) {
      const auto& n = cache.n[static_cast<std::size_t>(q)];
      cplx val = 0.0;
      for (int a = 0; a < nl; ++a)
        val += coeffs[static_cast<std::size_t>(space.element_dof(e, a))] * n[static_cast<std::size_t>(a)];
      const double d = std::abs(val - exact(space.map_to_physical(e, quad.points[static_cast<std::size_t>(q)])));
      acc += cache.wq[static_cast<std::size_t>(q)] * jac * d * d;
    }
  }
  norms.L2 = std::sqrt(acc);
  return norms;
}

double fe_l2_norm(const FeSpace& space, std::span<const cplx> coeffs) {
  const auto& quad = space.rule();
  const auto cache = make_shape_cache(space, quad);
  const int nl = space.dofs_per_element();
  double acc = 0.0;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    for (int q = 0; q < quad.size(); ++q) {
      const auto& n = cache.n[static_cast<std::size_t>(q)];
      cplx val = 0.0;
      for (int a = 0; a < nl; ++a)
        val += coeffs[static_cast<std::size_t>(space.element_dof(e, a))] * n[static_cast<std::size_t>(a)];
      acc += cache.wq[static_cast<std::size_t>(q)] * jac * std::norm(val);
    }
  }
  return std::sqrt(acc);
}

double h1_seminorm_error(const FeSpace& space, const CoefficientVector& u_h,
                         const GradientField& grad_g) {
  const auto& quad = space.rule();
  const int nl = space.dofs_per_element();
  std::array<std::array<double, 2>, kMaxLocal> grads;
  const auto coeffs = u_h.values();
  double acc = 0.0;
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = jacobian_factor(space, e);
    for (int q = 0; q < quad.size(); ++q) {
      const auto& xi = quad.points[static_cast<std::size_t>(q)];
      space.physical_gradients(e, xi, std::span<std::array<double, 2>>(grads.data(), static_cast<std::size_t>(nl)));
      cplx gx = 0.0, gy = 0.0;
      for (int a = 0; a < nl; ++a) {
        const cplx c = coeffs[static_cast<std::size_t>(space.element_dof(e, a))];
        gx += c * grads[static_cast<std::size_t>(a)][0];
        gy += c * grads[static_cast<std::size_t>(a)][1];
      }
      const auto gg = grad_g(space.map_to_physical(e, xi));
      acc += quad.weights[static_cast<std::size_t>(q)] * jac * (std::norm(gx - gg[0]) + std::norm(gy - gg[1]));
    }
  }
  return std::sqrt(acc);
}

}  // namespace logfem
