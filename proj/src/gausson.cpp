#include "logfem/gausson.hpp"

#include <cmath>
#include <stdexcept>

namespace logfem {

namespace {

// derivatives of the exponent g(x,t) = i(x.zeta - (a+|zeta|^2)t) + (lambda/2)|x-2 zeta t|^2
struct Exponent {
  cplx g_t;
  double g_tt;
  std::array<cplx, 2> g_x;   // iota zeta_k + lambda r_k
  std::array<double, 2> g_tx;  // -2 lambda zeta_k
  double g_xx;               // lambda (each diagonal entry)
};

Exponent exponent_derivatives(const GaussonSpec& s, std::array<double, 2> x, double t) {
  Exponent d;
  const double zeta_sq = s.zeta[0] * s.zeta[0] + s.zeta[1] * s.zeta[1];
  cplx gt(0.0, -(s.a() + zeta_sq));
  for (int k = 0; k < s.dim; ++k) {
    const double r = x[static_cast<std::size_t>(k)] - 2.0 * s.zeta[static_cast<std::size_t>(k)] * t;
    gt -= 2.0 * s.lambda * s.zeta[static_cast<std::size_t>(k)] * r;
    d.g_x[static_cast<std::size_t>(k)] = cplx(s.lambda * r, s.zeta[static_cast<std::size_t>(k)]);
    d.g_tx[static_cast<std::size_t>(k)] = -2.0 * s.lambda * s.zeta[static_cast<std::size_t>(k)];
  }
  d.g_t = gt;
  d.g_tt = 4.0 * s.lambda * zeta_sq;
  d.g_xx = s.lambda;
  return d;
}

}  // namespace

double GaussonSpec::a() const {
  if (b == 0.0) throw std::invalid_argument("GaussonSpec: b must be nonzero");
  return -lambda * (dim - std::log(b * b));
}

cplx GaussonSpec::value(std::array<double, 2> x, double t) const {
  const double zeta_sq = zeta[0] * zeta[0] + zeta[1] * zeta[1];
  double phase = -(a() + zeta_sq) * t;
  double radial = 0.0;
  for (int k = 0; k < dim; ++k) {
    phase += x[static_cast<std::size_t>(k)] * zeta[static_cast<std::size_t>(k)];
    const double r = x[static_cast<std::size_t>(k)] - 2.0 * zeta[static_cast<std::size_t>(k)] * t;
    radial += r * r;
  }
  return b * std::exp(0.5 * lambda * radial) * std::exp(cplx(0.0, phase));
}

cplx GaussonSpec::time_derivative(std::array<double, 2> x, double t) const {
  return value(x, t) * exponent_derivatives(*this, x, t).g_t;
}

cplx GaussonSpec::laplacian(std::array<double, 2> x, double t) const {
  const auto d = exponent_derivatives(*this, x, t);
  cplx sum = static_cast<double>(dim) * d.g_xx;
  for (int k = 0; k < dim; ++k) sum += d.g_x[static_cast<std::size_t>(k)] * d.g_x[static_cast<std::size_t>(k)];
  return value(x, t) * sum;
}

cplx GaussonSpec::pde_time_derivative(std::array<double, 2> x) const {
  const cplx u0 = value(x, 0.0);
  const double m = std::abs(u0);
  const cplx log_term = m > 0.0 ? u0 * (2.0 * std::log(m)) : cplx{};
  return cplx(0.0, 1.0) * (laplacian(x, 0.0) - lambda * log_term);
}

double GaussonSpec::u_tt_abs2(std::array<double, 2> x, double t) const {
  const auto d = exponent_derivatives(*this, x, t);
  return std::norm(value(x, t) * (d.g_t * d.g_t + d.g_tt));
}

double GaussonSpec::u_t_h2_density(std::array<double, 2> x, double t) const {
  const auto d = exponent_derivatives(*this, x, t);
  const cplx u = value(x, t);
  double acc = std::norm(u * d.g_t);
  for (int k = 0; k < dim; ++k) {
    const cplx gk = d.g_x[static_cast<std::size_t>(k)];
    const double gtk = d.g_tx[static_cast<std::size_t>(k)];
    acc += std::norm(u * (gk * d.g_t + gtk));
    acc += std::norm(u * (gk * gk * d.g_t + 2.0 * gk * gtk + d.g_xx * d.g_t));
  }
  if (dim == 2) {
    const cplx gx = d.g_x[0], gy = d.g_x[1];
    const cplx mixed = u * (gx * gy * d.g_t + gy * d.g_tx[0] + gx * d.g_tx[1]);
    acc += 2.0 * std::norm(mixed);
  }
  return acc;
}

TruncationInput GaussonSpec::truncation_input() const {
  const GaussonSpec s = *this;
  TruncationInput in;
  in.u = [s](std::array<double, 2> x, double t) { return s.value(x, t); };
  in.u_t = [s](std::array<double, 2> x, double t) { return s.time_derivative(x, t); };
  in.u_t0 = [s](std::array<double, 2> x, double) { return s.pde_time_derivative(x); };
  in.lap_u = [s](std::array<double, 2> x, double t) { return s.laplacian(x, t); };
  in.u_tt_abs2 = [s](std::array<double, 2> x, double t) { return s.u_tt_abs2(x, t); };
  in.u_t_h2_density = [s](std::array<double, 2> x, double t) { return s.u_t_h2_density(x, t); };
  return in;
}

ScalarField GaussonSpec::field_at(double t) const {
  const GaussonSpec s = *this;
  return [s, t](std::array<double, 2> x) { return s.value(x, t); };
}

BoundaryTrace GaussonSpec::trace() const {
  const GaussonSpec s = *this;
  return [s](std::array<double, 2> x, double t) { return s.value(x, t); };
}

cplx TwoGaussonSpec::initial(double x) const {
  const cplx one = std::exp(cplx(-0.5 * a1 * (x - x1) * (x - x1), zeta1 * x));
  const cplx two = std::exp(cplx(-0.5 * a2 * (x - x2) * (x - x2), zeta2 * x));
  return one + two;
}

ScalarField TwoGaussonSpec::initial_field() const {
  const TwoGaussonSpec s = *this;
  return [s](std::array<double, 2> x) { return s.initial(x[0]); };
}

TwoGaussonSpec TwoGaussonSpec::benchmark_case(int which) {
  TwoGaussonSpec s;
  switch (which) {
    case 1:
      s.x1 = -5.0;
      s.x2 = 5.0;
      break;
    case 2:
      s.x1 = -2.0;
      s.x2 = 2.0;
      break;
    case 3:
      s.zeta1 = 2.0;
      s.zeta2 = -2.0;
      s.x1 = -30.0;
      s.x2 = 30.0;
      break;
    default:
      throw std::invalid_argument("TwoGaussonSpec: case must be 1, 2 or 3");
  }
  return s;
}

}  // namespace logfem
