#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace logfem::lognl {

using cplx = std::complex<double>;

// f(z) = z ln|z|, continued by f(0) = 0. Total on C.
inline cplx f(cplx z) {
  const double m = std::abs(z);
  if (m == 0.0) return {0.0, 0.0};
  return z * std::log(m);
}

// delta_alpha = exp(alpha/(alpha-1)); decreasing in alpha on (0,1), maximal
// value e^{-1} at alpha = 1/2 within the admissible range of the analysis.
inline double delta_alpha(double alpha) { return std::exp(alpha / (alpha - 1.0)); }

// H_alpha(eps) = (2 eps)^(1-alpha) (|ln eps| + 1)
inline double holder_constant(double alpha, double eps) {
  return std::pow(2.0 * eps, 1.0 - alpha) * (std::abs(std::log(eps)) + 1.0);
}

// max over y in [eps, lambda_inf] of |ln y| + 1; attained at an endpoint since
// |ln y| is piecewise monotone with minimum at y = 1.
inline double upsilon(double eps, double lambda_inf) {
  return std::max(std::abs(std::log(eps)), std::abs(std::log(lambda_inf))) + 1.0;
}

// The constants entering the L2 bounds, bundled.
struct HolderParams {
  double alpha = 0.5;
  double epsilon = 0.0;
  double delta_alpha = 0.0;
  double h_alpha_eps = 0.0;
  double lambda_inf = 0.0;
  double upsilon = 0.0;

  static HolderParams make(double alpha, double epsilon, double lambda_inf);
};

// |f(u) - f(v)| <= (|ln y| + 1) |u - v|, y = max(|u|, |v|).
inline bool check_lipschitz_bound(cplx u, cplx v, double slack = 1e-12) {
  const double y = std::max(std::abs(u), std::abs(v));
  if (y == 0.0) return true;
  return std::abs(f(u) - f(v)) <= (std::abs(std::log(y)) + 1.0) * std::abs(u - v) + slack;
}

enum class HolderCheck { holds, violated, out_of_domain };

// |f(u) - f(v)| <= H_alpha(eps) |u - v|^alpha for |u|, |v| <= eps <= delta_alpha.
inline HolderCheck check_holder_bound(cplx u, cplx v, double alpha, double eps,
                                      double slack = 1e-12) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(eps > 0.0) || eps > delta_alpha(alpha) ||
      std::abs(u) > eps || std::abs(v) > eps)
    return HolderCheck::out_of_domain;
  const double lhs = std::abs(f(u) - f(v));
  const double rhs = holder_constant(alpha, eps) * std::pow(std::abs(u - v), alpha);
  return lhs <= rhs + slack ? HolderCheck::holds : HolderCheck::violated;
}

// |Im[(f(u) - f(v)) conj(u - v)]| <= |u - v|^2.
inline bool check_imaginary_inequality(cplx u, cplx v, double rel_slack = 1e-12) {
  const double lhs = std::abs(std::imag((f(u) - f(v)) * std::conj(u - v)));
  const double rhs = std::norm(u - v);
  return lhs <= rhs * (1.0 + rel_slack);
}

// Discrete form of the L2 bounds: lhs = sum w |f(u)-f(v)|^2 against the
// Holder term H^2 sum w |u-v|^(2 alpha) plus, when max moduli exceed eps, the
// Lipschitz term Upsilon^2 sum w |u-v|^2.
struct L2SplitBound {
  double lhs = 0.0;
  double holder_term = 0.0;
  double lipschitz_term = 0.0;  // zero in the all-inside-the-disk case
  double lambda_inf = 0.0;
  bool lipschitz_active = false;
  double rhs() const { return holder_term + lipschitz_term; }
};

L2SplitBound l2_split_bound(std::span<const cplx> u, std::span<const cplx> v,
                            std::span<const double> weights, double alpha, double eps);

}  // namespace logfem::lognl
