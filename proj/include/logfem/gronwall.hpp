#pragma once

#include <vector>

namespace logfem {

// Parameters of the recurrence y(n) <= c1 + c2 sum y^alpha(m) + c3 sum y(m).
// The bound evaluators accept c2 = 0 and c3 = 0 so the linear reduction is
// executable.
struct GronwallParams {
  double c1 = 1.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double alpha = 1.0;  // in (0, 1]
};

// Closed-form bound on any sequence satisfying the recurrence:
// c1 (1 + (c1^(alpha-1) c2 + c3) ((1 + alpha c1^(alpha-1) c2 + c3)^n - 1)
//      / (alpha c1^(alpha-1) c2 + c3)); equals c1 at n = 0.
double gronwall_bound(const GronwallParams& p, long n);

// Natural log of the same bound, safe where the direct value would overflow.
double gronwall_bound_log(const GronwallParams& p, long n);

// Relaxed form c1 (1 - 1/alpha + (1/alpha) (1 + alpha c1^(alpha-1) c2 + c3)^n);
// dominates gronwall_bound for every n.
double gronwall_relaxed_bound(const GronwallParams& p, long n);

// Pointwise-maximal sequence satisfying the recurrence with equality:
// y(0) = c1, y(n) = c1 + c2 sum_{m<n} y^alpha(m) + c3 sum_{m<n} y(m).
// Returns N + 1 values y(0..N); throws on overflow.
std::vector<double> maximal_sequence_oracle(const GronwallParams& p, int n_terms);

}  // namespace logfem
