#include "logfem/imex.hpp"

#include <cmath>
#include <stdexcept>

namespace logfem {

long SchemeConfig::num_steps() const {
  if (!(tau > 0.0)) throw std::invalid_argument("SchemeConfig: tau must be positive");
  if (!(T >= tau)) throw std::invalid_argument("SchemeConfig: T must be at least tau");
  const double q = T / tau;
  return static_cast<long>(std::floor(q + 1e-9 * std::max(1.0, q)));
}

bool SchemeConfig::covers_final_time() const {
  return std::abs(static_cast<double>(num_steps()) * tau - T) <= 1e-9 * std::max(1.0, std::abs(T));
}

BandedComplexMatrix build_step_matrix(const BandedRealMatrix& mass, const BandedRealMatrix& stiffness,
                                      double tau, std::span<const int> interior) {
  if (!(tau > 0.0)) throw std::invalid_argument("build_step_matrix: tau must be positive");
  if (mass.size() != stiffness.size() || mass.half_bandwidth() != stiffness.half_bandwidth())
    throw std::invalid_argument("build_step_matrix: mass/stiffness dimension mismatch");

  const int ni = static_cast<int>(interior.size());
  if (ni == 0) throw std::invalid_argument("build_step_matrix: no interior degrees of freedom");
  std::vector<int> to_interior(static_cast<std::size_t>(mass.size()), -1);
  for (int p = 0; p < ni; ++p) to_interior[static_cast<std::size_t>(interior[static_cast<std::size_t>(p)])] = p;

  BandedComplexMatrix a(ni, mass.half_bandwidth());
  const double inv_tau = 1.0 / tau;
  for (int p = 0; p < ni; ++p) {
    const int i = interior[static_cast<std::size_t>(p)];
    const int jlo = std::max(0, i - mass.half_bandwidth());
    const int jhi = std::min(mass.size() - 1, i + mass.half_bandwidth());
    for (int j = jlo; j <= jhi; ++j) {
      const int pj = to_interior[static_cast<std::size_t>(j)];
      if (pj < 0) continue;
      const cplx v(-stiffness.get(i, j), inv_tau * mass.get(i, j));
      if (v != cplx{}) a.at(p, pj) = v;
    }
  }
  return a;
}

ObservableValues observables(const FeSpace& space, const CoefficientVector& u, double lambda,
                             const QuadratureRule& quad) {
  ObservableValues out;
  const int nl = space.dofs_per_element();
  std::vector<double> shp(static_cast<std::size_t>(nl));
  std::array<std::array<double, 2>, 3> grads;
  const auto coeffs = u.values();
  for (int e = 0; e < space.mesh().num_elements(); ++e) {
    const double jac = space.dim() == 1 ? space.element_measure(e) : 2.0 * space.element_measure(e);
    for (int q = 0; q < quad.size(); ++q) {
      const auto& xi = quad.points[static_cast<std::size_t>(q)];
      space.shape_values(xi, shp);
      space.physical_gradients(e, xi, std::span<std::array<double, 2>>(grads.data(), static_cast<std::size_t>(nl)));
      cplx val = 0.0, gx = 0.0, gy = 0.0;
      for (int a = 0; a < nl; ++a) {
        const cplx c = coeffs[static_cast<std::size_t>(space.element_dof(e, a))];
        val += c * shp[static_cast<std::size_t>(a)];
        gx += c * grads[static_cast<std::size_t>(a)][0];
        gy += c * grads[static_cast<std::size_t>(a)][1];
      }
      const double w = quad.weights[static_cast<std::size_t>(q)] * jac;
      const double s = std::norm(val);  // |u|^2
      out.mass += w * s;
      const double log_term = s > 0.0 ? s * std::log(s) : 0.0;  // |u|^2 ln|u|^2
      out.energy += w * (std::norm(gx) + std::norm(gy) + lambda * log_term);
    }
  }
  return out;
}

double nodal_max_modulus(const CoefficientVector& u) {
  double m = 0.0;
  for (const cplx& v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

ImexStepper::ImexStepper(const FeSpace& space, const SchemeConfig& cfg, BoundaryTrace trace)
    : space_(&space),
      cfg_(cfg),
      trace_(std::move(trace)),
      mass_(assemble_mass(space)),
      stiffness_(assemble_stiffness(space)) {
  if (cfg.boundary_mode == BoundaryMode::exact_trace && !trace_)
    throw std::invalid_argument("ImexStepper: exact_trace mode needs boundary data");
  const auto a = build_step_matrix(mass_, stiffness_, cfg_.tau, space.interior_dofs());
  factor_ = std::make_unique<Factorization>(a);
}

CoefficientVector ImexStepper::step(const CoefficientVector& u, double t_n) const {
  const FeSpace& space = *space_;
  if (&u.space() != &space) throw std::invalid_argument("ImexStepper: state lives on another space");

  const double inv_tau = 1.0 / cfg_.tau;
  const auto mu = mass_.multiply(u.values());
  std::vector<cplx> load;
  if (cfg_.lambda != 0.0) load = assemble_load_f(space, u, space.rule());

  CoefficientVector next(space);
  const double t_next = t_n + cfg_.tau;
  if (cfg_.boundary_mode == BoundaryMode::exact_trace) {
    for (int k : space.boundary_dofs()) next[k] = trace_(space.dof_point(k), t_next);
  }

  const auto interior = space.interior_dofs();
  const int ni = static_cast<int>(interior.size());
  std::vector<cplx> rhs(static_cast<std::size_t>(ni));
  for (int p = 0; p < ni; ++p) {
    const int i = interior[static_cast<std::size_t>(p)];
    cplx v = cplx(0.0, inv_tau) * mu[static_cast<std::size_t>(i)];
    if (!load.empty()) v += 2.0 * cfg_.lambda * load[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(p)] = v;
  }
  if (cfg_.boundary_mode == BoundaryMode::exact_trace) {
    // move known boundary values of u^{n+1} to the right side
    const int hb = space.half_bandwidth();
    for (int j : space.boundary_dofs()) {
      const cplx g = next[j];
      if (g == cplx{}) continue;
      const int ilo = std::max(0, j - hb);
      const int ihi = std::min(space.num_dofs() - 1, j + hb);
      for (int i = ilo; i <= ihi; ++i) {
        const int p = space.interior_index(i);
        if (p < 0) continue;
        const cplx aij(-stiffness_.get(i, j), inv_tau * mass_.get(i, j));
        rhs[static_cast<std::size_t>(p)] -= aij * g;
      }
    }
  }

  factor_->solve_in_place(std::span<cplx>(rhs));
  for (int p = 0; p < ni; ++p) next[interior[static_cast<std::size_t>(p)]] = rhs[static_cast<std::size_t>(p)];
  return next;
}

ImexStepper::RunResult ImexStepper::run(
    const CoefficientVector& u0,
    const std::function<void(long, double, const CoefficientVector&)>& on_step) const {
  const long n_steps = cfg_.num_steps();
  const long every = std::max<long>(1, cfg_.record_every);

  RunResult result{u0, {}};
  auto record = [&](long n, const CoefficientVector& u) {
    const auto obs = observables(*space_, u, cfg_.lambda, space_->rule());
    result.series.times.push_back(static_cast<double>(n) * cfg_.tau);
    result.series.mass.push_back(obs.mass);
    result.series.energy.push_back(obs.energy);
    result.series.linf.push_back(nodal_max_modulus(u));
  };
  record(0, result.final);

  for (long n = 0; n < n_steps; ++n) {
    result.final = step(result.final, static_cast<double>(n) * cfg_.tau);
    if (on_step) on_step(n + 1, static_cast<double>(n + 1) * cfg_.tau, result.final);
    if ((n + 1) % every == 0 || n + 1 == n_steps) record(n + 1, result.final);
  }
  return result;
}

TruncationReport truncation_check(const TruncationInput& input, const FeSpace& space,
                                  const SchemeConfig& cfg, int time_samples) {
  if (!input.u || !input.u_t || !input.u_t0 || !input.lap_u || !input.u_tt_abs2 || !input.u_t_h2_density)
    throw std::invalid_argument("truncation_check: missing derivative callbacks");
  if (time_samples < 2) throw std::invalid_argument("truncation_check: need at least two time samples");

  const auto& quad = space.rule();
  const long n_steps = cfg.num_steps();
  const double tau = cfg.tau;

  // quadrature of a nonnegative density over the domain
  auto integrate = [&](const std::function<double(std::array<double, 2>)>& density) {
    double acc = 0.0;
    for (int e = 0; e < space.mesh().num_elements(); ++e) {
      const double jac = space.dim() == 1 ? space.element_measure(e) : 2.0 * space.element_measure(e);
      for (int q = 0; q < quad.size(); ++q) {
        acc += quad.weights[static_cast<std::size_t>(q)] * jac *
               density(space.map_to_physical(e, quad.points[static_cast<std::size_t>(q)]));
      }
    }
    return acc;
  };

  TruncationReport report;
  report.tnorm.reserve(static_cast<std::size_t>(n_steps));
  report.bound_sq.reserve(static_cast<std::size_t>(n_steps));

  for (long n = 0; n < n_steps; ++n) {
    const double tn = static_cast<double>(n) * tau;
    const double tn1 = tn + tau;
    const auto& ut = n == 0 ? input.u_t0 : input.u_t;

    const double tnorm_sq = integrate([&](std::array<double, 2> x) {
      const cplx dtau = (input.u(x, tn1) - input.u(x, tn)) / tau;
      const cplx val = cplx(0.0, 1.0) * (dtau - ut(x, tn)) + (input.lap_u(x, tn1) - input.lap_u(x, tn));
      return std::norm(val);
    });

    double sup_utt_sq = 0.0, sup_ut_h2_sq = 0.0;
    for (int s = 0; s < time_samples; ++s) {
      const double t = tn + tau * static_cast<double>(s) / (time_samples - 1);
      sup_utt_sq = std::max(sup_utt_sq, integrate([&](std::array<double, 2> x) { return input.u_tt_abs2(x, t); }));
      sup_ut_h2_sq =
          std::max(sup_ut_h2_sq, integrate([&](std::array<double, 2> x) { return input.u_t_h2_density(x, t); }));
    }
    const double bound = (2.0 / 3.0) * tau * tau * sup_utt_sq + 2.0 * tau * tau * sup_ut_h2_sq;

    const double tn_val = std::sqrt(tnorm_sq);
    report.tnorm.push_back(tn_val);
    report.bound_sq.push_back(bound);
    report.max_tnorm = std::max(report.max_tnorm, tn_val);
    if (tnorm_sq > bound * (1.0 + 1e-10) + 1e-14) report.bound_satisfied = false;
  }
  return report;
}

}  // namespace logfem
