#include "logfem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logfem {

namespace {

// Legendre polynomial P_n and derivative at x via the three-term recurrence.
std::array<double, 2> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre_unit(int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre_unit: need at least one point");

  QuadratureRule rule;
  rule.dim = 1;
  rule.exact_degree = 2 * n_points - 1;
  rule.points.resize(static_cast<std::size_t>(n_points));
  rule.weights.resize(static_cast<std::size_t>(n_points));

  if (n_points == 1) {
    rule.points[0] = {0.5, 0.0};
    rule.weights[0] = 1.0;
    return rule;
  }

  // Newton iteration from the Chebyshev-like initial guess; nodes on [-1,1].
  for (int i = 0; i < n_points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n_points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre_with_derivative(n_points, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]
    rule.points[static_cast<std::size_t>(n_points - 1 - i)] = {0.5 * (x + 1.0), 0.0};
    rule.weights[static_cast<std::size_t>(n_points - 1 - i)] = 0.5 * w;
  }
  return rule;
}

QuadratureRule triangle_degree5() {
  QuadratureRule rule;
  rule.dim = 2;
  rule.exact_degree = 5;

  const double s15 = std::sqrt(15.0);
  const double a1 = (6.0 + s15) / 21.0;  // repeated barycentric coordinate, inner group
  const double a2 = (6.0 - s15) / 21.0;
  const double w0 = 9.0 / 80.0;
  const double w1 = (155.0 + s15) / 2400.0;
  const double w2 = (155.0 - s15) / 2400.0;

  rule.points = {
      {1.0 / 3.0, 1.0 / 3.0},
      {a1, a1},
      {1.0 - 2.0 * a1, a1},
      {a1, 1.0 - 2.0 * a1},
      {a2, a2},
      {1.0 - 2.0 * a2, a2},
      {a2, 1.0 - 2.0 * a2},
  };
  rule.weights = {w0, w1, w1, w1, w2, w2, w2};
  return rule;
}

QuadratureRule assembly_rule(int dim, int degree) {
  if (dim == 1) return gauss_legendre_unit(2 * degree + 2);
  return triangle_degree5();
}

}  // namespace logfem
