#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "logfem/banded.hpp"
#include "logfem/mesh.hpp"
#include "logfem/quadrature.hpp"

namespace logfem {

using cplx = std::complex<double>;

using ScalarField = std::function<cplx(std::array<double, 2>)>;
using GradientField = std::function<std::array<cplx, 2>(std::array<double, 2>)>;

// Continuous Lagrange space of degree r on a mesh: r in {1,2} on intervals,
// r = 1 on triangulations. Owns the DOF numbering (1D degree 2 interleaves
// vertex and midpoint DOFs by coordinate so the band stays narrow).
class FeSpace {
 public:
  FeSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int dim() const { return mesh_->dim; }
  int num_dofs() const { return n_dofs_; }
  int dofs_per_element() const { return dofs_per_element_; }
  int half_bandwidth() const { return half_bw_; }

  int element_dof(int e, int a) const {
    return elem_dofs_[static_cast<std::size_t>(e) * dofs_per_element_ + static_cast<std::size_t>(a)];
  }
  std::array<double, 2> dof_point(int k) const { return dof_points_[static_cast<std::size_t>(k)]; }
  bool dof_on_boundary(int k) const { return dof_boundary_[static_cast<std::size_t>(k)] != 0; }
  std::span<const int> boundary_dofs() const { return boundary_dofs_; }
  std::span<const int> interior_dofs() const { return interior_dofs_; }
  int interior_index(int k) const { return interior_index_[static_cast<std::size_t>(k)]; }

  // reference-element shape functions at xi (barycentric-free coordinates)
  void shape_values(const std::array<double, 2>& xi, std::span<double> n) const;
  void shape_ref_gradients(const std::array<double, 2>& xi, std::span<std::array<double, 2>> g) const;

  double element_measure(int e) const { return mesh_->element_measure(e); }
  std::array<double, 2> map_to_physical(int e, const std::array<double, 2>& xi) const;
  // physical gradients of all shape functions at xi
  void physical_gradients(int e, const std::array<double, 2>& xi,
                          std::span<std::array<double, 2>> g) const;

  const QuadratureRule& rule() const { return rule_; }

 private:
  const Mesh* mesh_;
  int degree_;
  int dofs_per_element_;
  int n_dofs_;
  int half_bw_;
  std::vector<int> elem_dofs_;
  std::vector<std::array<double, 2>> dof_points_;
  std::vector<std::uint8_t> dof_boundary_;
  std::vector<int> boundary_dofs_, interior_dofs_, interior_index_;
  QuadratureRule rule_;
};

// Complex nodal coefficients of one finite-element function.
class CoefficientVector {
 public:
  explicit CoefficientVector(const FeSpace& space)
      : space_(&space), values_(static_cast<std::size_t>(space.num_dofs())) {}

  const FeSpace& space() const { return *space_; }
  int size() const { return static_cast<int>(values_.size()); }
  cplx& operator[](int k) { return values_[static_cast<std::size_t>(k)]; }
  cplx operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }

  bool same_space(const CoefficientVector& other) const { return space_ == other.space_; }

 private:
  const FeSpace* space_;
  std::vector<cplx> values_;
};

struct ErrorNorms {
  double l2 = 0;    // sqrt(h^d * sum over nodal DOFs of |u_h - u|^2)
  double linf = 0;  // max nodal |u_h - u|
  double L2 = 0;    // quadrature L2 norm of u_h - u
};

BandedRealMatrix assemble_mass(const FeSpace& space);
BandedRealMatrix assemble_stiffness(const FeSpace& space);

// Load vector of the logarithmic nonlinearity: component i approximates
// (f(u_h), phi_i) with f(z) = z ln|z|, f(0) = 0; the integrand is the
// reconstructed FE function evaluated at quadrature points.
std::vector<cplx> assemble_load_f(const FeSpace& space, const CoefficientVector& u,
                                  const QuadratureRule& quad);

CoefficientVector interpolate(const FeSpace& space, const ScalarField& g);

// Ritz projection: (grad R_h g, grad phi) = (grad g, grad phi) for interior
// test functions, boundary DOFs set from g_boundary.
CoefficientVector ritz_project(const FeSpace& space, const GradientField& grad_g,
                               const ScalarField& g_boundary);

ErrorNorms error_norms(const FeSpace& space, const CoefficientVector& u_h, const ScalarField& exact);

// quadrature L2 norm of the FE function with the given coefficients
double fe_l2_norm(const FeSpace& space, std::span<const cplx> coeffs);
// quadrature L2 norm of grad(u_h) - grad_g
double h1_seminorm_error(const FeSpace& space, const CoefficientVector& u_h,
                         const GradientField& grad_g);
// FE function value inside element e
cplx fe_value(const FeSpace& space, std::span<const cplx> coeffs, int e,
              const std::array<double, 2>& xi);

}  // namespace logfem
