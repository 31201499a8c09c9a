#pragma once

#include <array>
#include <vector>

namespace logfem {

// Quadrature on the reference element: the unit interval [0,1] (dim 1) or the
// unit triangle {xi, eta >= 0, xi + eta <= 1} (dim 2). Weights are positive
// and sum to the reference measure (1 resp. 1/2).
struct QuadratureRule {
  int dim = 1;
  int exact_degree = 1;  // polynomials up to this total degree integrate exactly
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

// Gauss-Legendre rule with n points on [0,1]; exact to degree 2n - 1.
QuadratureRule gauss_legendre_unit(int n_points);

// 7-point symmetric triangle rule, exact to total degree 5.
QuadratureRule triangle_degree5();

// The rule used for assembly: 2r + 2 Gauss points per interval element, the
// degree-5 triangle rule in 2D.
QuadratureRule assembly_rule(int dim, int degree);

}  // namespace logfem
