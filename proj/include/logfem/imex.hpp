#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "logfem/fem.hpp"

namespace logfem {

enum class BoundaryMode { homogeneous, exact_trace };

// Dirichlet data g(x, t) used in exact_trace mode.
using BoundaryTrace = std::function<cplx(std::array<double, 2>, double)>;

struct SchemeConfig {
  double tau = 1e-2;
  double T = 1.0;
  double lambda = -1.0;
  int degree = 1;
  BoundaryMode boundary_mode = BoundaryMode::homogeneous;
  long record_every = 1;

  // N_t = floor(T/tau), tolerant of roundoff in T/tau
  long num_steps() const;
  // whether N_t * tau reproduces T (the scheme never takes a fractional step)
  bool covers_final_time() const;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> mass;    // quadrature of |u_h|^2
  std::vector<double> energy;  // |grad u_h|^2 + lambda * |u_h|^2 ln|u_h|^2
  std::vector<double> linf;    // max nodal modulus
};

struct ObservableValues {
  double mass = 0.0;
  double energy = 0.0;
};

ObservableValues observables(const FeSpace& space, const CoefficientVector& u, double lambda,
                             const QuadratureRule& quad);

double nodal_max_modulus(const CoefficientVector& u);

// First-order IMEX stepper: the Laplacian is implicit, the logarithmic load
// explicit, so each step is one complex banded solve with the matrix
// (i/tau) M - S factored once per (space, tau).
class ImexStepper {
 public:
  ImexStepper(const FeSpace& space, const SchemeConfig& cfg, BoundaryTrace trace = {});

  // one step from u at time t_n to t_n + tau
  CoefficientVector step(const CoefficientVector& u, double t_n) const;

  struct RunResult {
    CoefficientVector final;
    TimeSeries series;
  };

  // advance num_steps() steps from u0 (= I_h u0 by convention), recording
  // observables every record_every steps; on_step is called after every step.
  RunResult run(const CoefficientVector& u0,
                const std::function<void(long, double, const CoefficientVector&)>& on_step = {}) const;

  const FeSpace& space() const { return *space_; }
  const SchemeConfig& config() const { return cfg_; }
  const BandedRealMatrix& mass_matrix() const { return mass_; }
  const BandedRealMatrix& stiffness_matrix() const { return stiffness_; }
  const Factorization& factorization() const { return *factor_; }

 private:
  const FeSpace* space_;
  SchemeConfig cfg_;
  BoundaryTrace trace_;
  BandedRealMatrix mass_;
  BandedRealMatrix stiffness_;
  std::unique_ptr<Factorization> factor_;
};

// Pointwise callbacks of an exact solution used by the truncation check.
struct TruncationInput {
  std::function<cplx(std::array<double, 2>, double)> u;
  std::function<cplx(std::array<double, 2>, double)> u_t;   // used for n >= 1
  std::function<cplx(std::array<double, 2>, double)> u_t0;  // time derivative at t = 0 from the PDE right side
  std::function<cplx(std::array<double, 2>, double)> lap_u;
  std::function<double(std::array<double, 2>, double)> u_tt_abs2;       // |u_tt|^2
  std::function<double(std::array<double, 2>, double)> u_t_h2_density;  // sum of |derivatives of u_t up to order 2|^2
};

struct TruncationReport {
  std::vector<double> tnorm;     // ||T^n|| per step, n = 0..N_t-1
  std::vector<double> bound_sq;  // (2/3) tau^2 sup||u_tt||^2 + 2 tau^2 sup||u_t||_{H2}^2
  double max_tnorm = 0.0;
  bool bound_satisfied = true;   // tnorm^2 <= bound_sq at every step
};

// Evaluates T^n = i(D_tau u^n - u_t^n) + Lap(u^{n+1} - u^n) by quadrature and
// compares against the tau^2 bound, with sup norms sampled on time_samples
// points per step interval.
TruncationReport truncation_check(const TruncationInput& input, const FeSpace& space,
                                  const SchemeConfig& cfg, int time_samples = 9);

}  // namespace logfem
