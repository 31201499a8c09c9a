#include "logfem/lognl.hpp"

#include <stdexcept>

namespace logfem::lognl {

HolderParams HolderParams::make(double alpha, double epsilon, double lambda_inf) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("HolderParams: alpha must lie in (0,1)");
  const double d = logfem::lognl::delta_alpha(alpha);
  if (!(epsilon > 0.0) || epsilon > d)
    throw std::invalid_argument("HolderParams: epsilon must lie in (0, delta_alpha]");
  if (lambda_inf < 0.0) throw std::invalid_argument("HolderParams: lambda_inf must be nonnegative");
  HolderParams p;
  p.alpha = alpha;
  p.epsilon = epsilon;
  p.delta_alpha = d;
  p.h_alpha_eps = holder_constant(alpha, epsilon);
  p.lambda_inf = lambda_inf;
  p.upsilon = lambda_inf > epsilon ? logfem::lognl::upsilon(epsilon, lambda_inf) : 0.0;
  return p;
}

L2SplitBound l2_split_bound(std::span<const cplx> u, std::span<const cplx> v,
                            std::span<const double> weights, double alpha, double eps) {
  if (u.size() != v.size() || u.size() != weights.size())
    throw std::invalid_argument("l2_split_bound: sample arrays must be co-located");
  if (!(alpha > 0.0 && alpha < 1.0) || !(eps > 0.0) || eps > delta_alpha(alpha))
    throw std::invalid_argument("l2_split_bound: need alpha in (0,1) and eps in (0, delta_alpha]");

  L2SplitBound out;
  double sum_f = 0.0, sum_holder = 0.0, sum_l2 = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double w = weights[k];
    if (w < 0.0) throw std::invalid_argument("l2_split_bound: negative weight");
    const double df = std::abs(f(u[k]) - f(v[k]));
    const double duv = std::abs(u[k] - v[k]);
    sum_f += w * df * df;
    sum_holder += w * std::pow(duv, 2.0 * alpha);
    sum_l2 += w * duv * duv;
    out.lambda_inf = std::max({out.lambda_inf, std::abs(u[k]), std::abs(v[k])});
  }
  out.lhs = sum_f;
  const double h = holder_constant(alpha, eps);
  out.holder_term = h * h * sum_holder;
  out.lipschitz_active = out.lambda_inf > eps;
  if (out.lipschitz_active) {
    const double ups = upsilon(eps, out.lambda_inf);
    out.lipschitz_term = ups * ups * sum_l2;
  }
  return out;
}

}  // namespace logfem::lognl
