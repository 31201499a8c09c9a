#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logfem/gausson.hpp"

namespace logfem {

// least-squares slope of ln(y) against ln(x)
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

struct ConvergenceRow {
  double h = 0.0;
  double tau = 0.0;
  double e2 = 0.0;    // discrete l2 error at t = T
  double einf = 0.0;  // nodal max error at t = T
  double L2 = 0.0;    // quadrature L2 error at t = T
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // sorted by the refined parameter
  double slope_e2 = 0.0;
  double slope_einf = 0.0;
  double slope_L2 = 0.0;
  std::vector<std::string> warnings;
};

// Gausson benchmark on (-1,1)^d with exact-trace boundary data. Refinement
// runs execute concurrently; the table is assembled in refinement order.
ConvergenceTable converge_time(const GaussonSpec& spec, int degree, double h,
                               std::span<const double> taus, double T);
ConvergenceTable converge_space(const GaussonSpec& spec, int degree, double tau,
                                std::span<const double> hs, double T);
// 2D combined refinement tau = (cell side)^2; slopes are fitted against the
// cell side.
ConvergenceTable converge_space_time_2d(const GaussonSpec& spec, std::span<const double> cell_sizes,
                                        double T);

struct Snapshot {
  double t = 0.0;
  std::vector<std::array<double, 2>> points;  // DOF coordinates
  std::vector<cplx> values;
};

struct DynamicsResult {
  TimeSeries series;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
};

// Two-Gausson dynamics on (-40,40), zero boundary.
DynamicsResult dynamics_two_gausson(const TwoGaussonSpec& spec, const SchemeConfig& cfg,
                                    double domain_half_width, int n_elements,
                                    std::span<const double> snapshot_times);

// 2D dynamics on (-10,10)^2 with u0 = tanh(x) tanh(y) exp(-x^2-y^2), zero boundary.
DynamicsResult dynamics_2d_tanh(const SchemeConfig& cfg, int cells_per_side,
                                std::span<const double> snapshot_times);

// Randomized validation of the Lipschitz/Holder/imaginary-part bounds and the
// Gronwall bound chain. Deterministic for a fixed seed.
struct LemmaReport {
  std::uint64_t seed = 0;
  long n_samples = 0;
  std::string generator;
  long lipschitz_failures = 0;
  long holder_failures = 0;
  long imaginary_failures = 0;
  long split_case_i_failures = 0;
  long split_case_ii_failures = 0;
  long remark_lipschitz_failures = 0;
  long near_zero_failures = 0;
  long gronwall_failures = 0;
  std::vector<std::string> counterexamples;

  bool all_passed() const;
  std::string to_text() const;
};

LemmaReport verify_lemmas(std::uint64_t seed, long n_samples);

// constraint checks shared by the harness and the CLI; returns warning lines
std::vector<std::string> scheme_constraint_warnings(double tau, double h, int degree, int dim);

}  // namespace logfem
