#pragma once

#include <array>

#include "logfem/imex.hpp"

namespace logfem {

// Exact Gaussian solitary solution
//   u(x,t) = b exp(i(x.zeta - (a + |zeta|^2) t) + (lambda/2) |x - 2 zeta t|^2),
//   a = -lambda (d - ln b^2),
// together with the closed-form derivatives the truncation check needs.
struct GaussonSpec {
  int dim = 1;
  double b = 1.0;
  std::array<double, 2> zeta{0.0, 0.0};
  double lambda = -1.0;

  double a() const;

  cplx value(std::array<double, 2> x, double t) const;
  cplx time_derivative(std::array<double, 2> x, double t) const;
  cplx laplacian(std::array<double, 2> x, double t) const;
  // i (lap u0 - lambda u0 ln|u0|^2); coincides with u_t at t = 0
  cplx pde_time_derivative(std::array<double, 2> x) const;
  double u_tt_abs2(std::array<double, 2> x, double t) const;
  // |u_t|^2 + |grad u_t|^2 + squared Frobenius norm of the Hessian of u_t
  double u_t_h2_density(std::array<double, 2> x, double t) const;

  TruncationInput truncation_input() const;
  ScalarField field_at(double t) const;
  BoundaryTrace trace() const;
};

// Superposition of two Gaussian bumps with widths a_k, velocities zeta_k and
// centres x_k, used as 1D initial data.
struct TwoGaussonSpec {
  double a1 = 1.0, a2 = 1.0;
  double zeta1 = 0.0, zeta2 = 0.0;
  double x1 = -5.0, x2 = 5.0;

  cplx initial(double x) const;
  ScalarField initial_field() const;

  // benchmark cases (i), (ii), (iii): separated static, close static, counter-moving
  static TwoGaussonSpec benchmark_case(int which);
};

}  // namespace logfem
