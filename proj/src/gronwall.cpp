#include "logfem/gronwall.hpp"

#include <cmath>
#include <stdexcept>

namespace logfem {

namespace {

void validate(const GronwallParams& p, long n) {
  if (!(p.c1 > 0.0)) throw std::invalid_argument("gronwall: c1 must be positive");
  if (p.c2 < 0.0 || p.c3 < 0.0) throw std::invalid_argument("gronwall: c2, c3 must be nonnegative");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw std::invalid_argument("gronwall: alpha must lie in (0, 1]");
  if (n < 0) throw std::invalid_argument("gronwall: n must be nonnegative");
}

// rate = alpha c1^(alpha-1) c2 + c3, the growth factor minus one
double growth_rate(const GronwallParams& p) {
  return p.alpha * std::pow(p.c1, p.alpha - 1.0) * p.c2 + p.c3;
}

}  // namespace

double gronwall_bound(const GronwallParams& p, long n) {
  validate(p, n);
  if (n == 0) return p.c1;  // empty sums
  const double rate = growth_rate(p);
  if (rate == 0.0) return p.c1;
  const double k = std::pow(p.c1, p.alpha - 1.0) * p.c2 + p.c3;
  const double e = static_cast<double>(n) * std::log1p(rate);
  if (e > 700.0) return std::exp(gronwall_bound_log(p, n));
  return p.c1 * (1.0 + k * std::expm1(e) / rate);
}

double gronwall_bound_log(const GronwallParams& p, long n) {
  validate(p, n);
  if (n == 0) return std::log(p.c1);
  const double rate = growth_rate(p);
  if (rate == 0.0) return std::log(p.c1);
  const double k = std::pow(p.c1, p.alpha - 1.0) * p.c2 + p.c3;
  const double e = static_cast<double>(n) * std::log1p(rate);
  if (e > 700.0) {
    // dominated by the growing term; 1 + k((1+rate)^n - 1)/rate ~ (k/rate)(1+rate)^n
    return std::log(p.c1) + std::log(k / rate) + e;
  }
  return std::log(p.c1) + std::log1p(k * std::expm1(e) / rate);
}

double gronwall_relaxed_bound(const GronwallParams& p, long n) {
  validate(p, n);
  if (n == 0) return p.c1;
  const double rate = growth_rate(p);
  const double e = static_cast<double>(n) * std::log1p(rate);
  const double inv_alpha = 1.0 / p.alpha;
  return p.c1 * (1.0 - inv_alpha + inv_alpha * std::exp(e));
}

std::vector<double> maximal_sequence_oracle(const GronwallParams& p, int n_terms) {
  validate(p, n_terms);
  if (n_terms < 1) throw std::invalid_argument("gronwall oracle: need at least one step");
  std::vector<double> y(static_cast<std::size_t>(n_terms) + 1);
  y[0] = p.c1;
  double sum_pow = 0.0, sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    sum_pow += std::pow(y[static_cast<std::size_t>(n - 1)], p.alpha);
    sum += y[static_cast<std::size_t>(n - 1)];
    const double v = p.c1 + p.c2 * sum_pow + p.c3 * sum;
    if (!std::isfinite(v)) throw std::overflow_error("gronwall oracle: sequence overflowed");
    y[static_cast<std::size_t>(n)] = v;
  }
  return y;
}

}  // namespace logfem
