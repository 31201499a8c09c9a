#include <cmath>
#include <stdexcept>
#include <numbers>

#include "doctest.h"
#include "logfem/gausson.hpp"
#include "logfem/imex.hpp"
#include "logfem/rng.hpp"

using logfem::BoundaryMode;
using logfem::CoefficientVector;
using logfem::cplx;
using logfem::FeSpace;
using logfem::GaussonSpec;
using logfem::ImexStepper;
using logfem::Mesh;
using logfem::SchemeConfig;

TEST_SUITE_BEGIN("imex");

TEST_CASE("step count follows the floor convention") {
  SchemeConfig cfg;
  cfg.tau = 0.05;
  cfg.T = 1.0;
  CHECK(cfg.num_steps() == 20);
  CHECK(cfg.covers_final_time());

  cfg.tau = 0.3;
  CHECK(cfg.num_steps() == 3);
  CHECK_FALSE(cfg.covers_final_time());

  cfg.tau = 0.1 * std::pow(2.0, -3);
  CHECK(cfg.num_steps() == 80);

  cfg.tau = -1.0;
  CHECK_THROWS_AS(cfg.num_steps(), std::invalid_argument);
}

TEST_CASE("step matrix examples") {
  // scalar case
  logfem::BandedRealMatrix m(1, 0), s(1, 0);
  m.at(0, 0) = 0.75;
  s.at(0, 0) = 2.5;
  const std::vector<int> interior{0};
  const auto a = logfem::build_step_matrix(m, s, 0.5, interior);
  CHECK(a.get(0, 0).real() == doctest::Approx(-2.5));
  CHECK(a.get(0, 0).imag() == doctest::Approx(0.75 / 0.5));

  // imaginary part scales exactly like 1/tau
  const auto a2 = logfem::build_step_matrix(m, s, 0.25, interior);
  CHECK(a2.get(0, 0).imag() == 2.0 * a.get(0, 0).imag());
  CHECK(a2.get(0, 0).real() == a.get(0, 0).real());

  CHECK_THROWS_AS(logfem::build_step_matrix(m, s, 0.0, interior), std::invalid_argument);
}

TEST_CASE("three node mesh gives the 1x1 interior system") {
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 2);  // h = 1
  const FeSpace space(mesh, 1);
  const auto m = logfem::assemble_mass(space);
  const auto s = logfem::assemble_stiffness(space);
  const auto a = logfem::build_step_matrix(m, s, 1.0, space.interior_dofs());
  REQUIRE(a.size() == 1);
  CHECK(a.get(0, 0).real() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(a.get(0, 0).imag() == doctest::Approx(4.0 / 6.0).epsilon(1e-14));

  // one linear step with lambda = 0: u1 = (i m / tau) u0 / (i m / tau - s)
  SchemeConfig cfg;
  cfg.tau = 1.0;
  cfg.T = 1.0;
  cfg.lambda = 0.0;
  const ImexStepper stepper(space, cfg);
  CoefficientVector u0(space);
  u0[1] = cplx(0.3, -0.7);
  const auto u1 = stepper.step(u0, 0.0);
  const cplx im_tau(0.0, 4.0 / 6.0);
  const cplx expected = im_tau * u0[1] / (im_tau - 2.0);
  CHECK(std::abs(u1[1] - expected) < 1e-15);
  CHECK(u1[0] == cplx{});
  CHECK(u1[2] == cplx{});
}

TEST_CASE("zero state is a fixed point") {
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 16);
  const FeSpace space(mesh, 1);
  for (double lambda : {-1.0, 0.0, 2.0}) {
    SchemeConfig cfg;
    cfg.tau = 0.01;
    cfg.T = 0.05;
    cfg.lambda = lambda;
    const ImexStepper stepper(space, cfg);
    CoefficientVector u(space);
    const auto result = stepper.run(u);
    for (const cplx& v : result.final.values()) CHECK(v == cplx{});
  }
}

TEST_CASE("constant phase factors commute with the scheme") {
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 24);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 0.01;
  cfg.T = 0.2;
  cfg.lambda = -1.0;
  const ImexStepper stepper(space, cfg);

  const auto base = logfem::interpolate(
      space, [](std::array<double, 2> x) { return cplx(std::sin(std::numbers::pi * x[0]), 0.0); });
  const cplx phase = std::polar(1.0, 0.8);
  CoefficientVector rotated(space);
  for (int k = 0; k < space.num_dofs(); ++k) rotated[k] = phase * base[k];

  const auto run_base = stepper.run(base);
  const auto run_rot = stepper.run(rotated);
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < space.num_dofs(); ++k) {
    worst = std::max(worst, std::abs(run_rot.final[k] - phase * run_base.final[k]));
    scale = std::max(scale, std::abs(run_base.final[k]));
  }
  CHECK(worst <= 1e-13 * std::max(1.0, scale));
}

TEST_CASE("one factorization reused equals refactoring each step") {
  const Mesh mesh = logfem::uniform_interval(0.0, 1.0, 8);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 1e-3;
  cfg.T = 1.0;  // 1000 steps
  cfg.lambda = -1.0;
  cfg.record_every = 1000;
  const ImexStepper reused(space, cfg);

  const auto u0 = logfem::interpolate(
      space, [](std::array<double, 2> x) { return cplx(x[0] * (1.0 - x[0]), 0.2 * x[0]); });
  CoefficientVector boundary_fixed(space);
  for (int k = 0; k < space.num_dofs(); ++k) boundary_fixed[k] = space.dof_on_boundary(k) ? cplx{} : u0[k];

  const auto once = reused.run(boundary_fixed);

  CoefficientVector state = boundary_fixed;
  for (long n = 0; n < cfg.num_steps(); ++n) {
    const ImexStepper fresh(space, cfg);  // refactors the identical matrix
    state = fresh.step(state, static_cast<double>(n) * cfg.tau);
  }
  for (int k = 0; k < space.num_dofs(); ++k) CHECK(once.final[k] == state[k]);  // bit identical
}

TEST_CASE("linear problem dissipates mass monotonically") {
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 32);
  const FeSpace space(mesh, 1);
  const auto u0 = logfem::interpolate(
      space, [](std::array<double, 2> x) { return cplx(std::sin(std::numbers::pi * x[0]), 0.0); });

  double previous_drift = 0.0;
  for (double tau : {0.02, 0.01, 0.005}) {
    SchemeConfig cfg;
    cfg.tau = tau;
    cfg.T = 0.5;
    cfg.lambda = 0.0;
    const ImexStepper stepper(space, cfg);
    const auto result = stepper.run(u0);
    for (std::size_t k = 1; k < result.series.mass.size(); ++k)
      CHECK(result.series.mass[k] <= result.series.mass[k - 1] * (1.0 + 1e-14));
    const double drift = result.series.mass.front() - result.series.mass.back();
    CHECK(drift > 0.0);
    if (previous_drift > 0.0) {
      const double ratio = previous_drift / drift;  // first order: halving tau halves the drift
      CHECK(ratio > 1.5);
      CHECK(ratio < 2.5);
    }
    previous_drift = drift;
  }
}

TEST_CASE("single step local error is second order in tau") {
  GaussonSpec spec;  // d = 1, b = 1, zeta = 0, lambda = -1
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 64);
  const FeSpace space(mesh, 2);  // high-order space keeps the spatial floor tiny

  auto one_step_error = [&](double tau) {
    SchemeConfig cfg;
    cfg.tau = tau;
    cfg.T = tau;
    cfg.lambda = spec.lambda;
    cfg.degree = 2;
    cfg.boundary_mode = BoundaryMode::exact_trace;
    const ImexStepper stepper(space, cfg, spec.trace());
    const auto u1 = stepper.step(logfem::interpolate(space, spec.field_at(0.0)), 0.0);
    return logfem::error_norms(space, u1, spec.field_at(tau)).l2;
  };

  const double e1 = one_step_error(0.05);
  const double e2 = one_step_error(0.025);
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);
}

TEST_CASE("run with T = tau equals one step") {
  GaussonSpec spec;
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 16);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 0.01;
  cfg.T = 0.01;
  cfg.lambda = -1.0;
  cfg.boundary_mode = BoundaryMode::exact_trace;
  const ImexStepper stepper(space, cfg, spec.trace());
  const auto u0 = logfem::interpolate(space, spec.field_at(0.0));
  const auto via_run = stepper.run(u0);
  const auto via_step = stepper.step(u0, 0.0);
  for (int k = 0; k < space.num_dofs(); ++k) CHECK(via_run.final[k] == via_step[k]);
}

TEST_CASE("observables") {
  const Mesh mesh = logfem::uniform_interval(0.0, 1.0, 10);
  const FeSpace space(mesh, 1);

  CoefficientVector zero(space);
  const auto z = logfem::observables(space, zero, -1.0, space.rule());
  CHECK(z.mass == 0.0);
  CHECK(z.energy == 0.0);

  CoefficientVector one(space);
  for (auto& v : one.values()) v = 1.0;
  const auto o = logfem::observables(space, one, -1.0, space.rule());
  CHECK(o.mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(o.energy) < 1e-14);  // ln 1 = 0 and grad 1 = 0

  CHECK(logfem::nodal_max_modulus(one) == 1.0);
}

TEST_CASE("Gausson initial mass matches the closed form") {
  // integral of e^{-x^2} over (-1,1) = sqrt(pi) erf(1)
  GaussonSpec spec;
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 64);
  const FeSpace space(mesh, 1);
  const auto u0 = logfem::interpolate(space, spec.field_at(0.0));
  const auto obs = logfem::observables(space, u0, spec.lambda, space.rule());
  const double exact = std::sqrt(std::numbers::pi) * std::erf(1.0);
  CHECK(exact == doctest::Approx(1.4936482656248540).epsilon(1e-14));
  CHECK(obs.mass == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("truncation error vanishes for steady states") {
  logfem::TruncationInput input;
  input.u = [](std::array<double, 2> x, double) { return cplx(std::sin(x[0]), 0.1 * x[0]); };
  input.u_t = [](std::array<double, 2>, double) { return cplx{}; };
  input.u_t0 = input.u_t;
  input.lap_u = [](std::array<double, 2> x, double) { return cplx(-std::sin(x[0]), 0.0); };
  input.u_tt_abs2 = [](std::array<double, 2>, double) { return 0.0; };
  input.u_t_h2_density = [](std::array<double, 2>, double) { return 0.0; };

  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 8);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 0.1;
  cfg.T = 0.5;
  const auto report = logfem::truncation_check(input, space, cfg);
  for (double t : report.tnorm) CHECK(t == 0.0);
  CHECK(report.bound_satisfied);
}

TEST_CASE("Gausson truncation bound holds on a short window") {
  GaussonSpec spec;
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 32);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 0.01;
  cfg.T = 0.1;
  cfg.lambda = spec.lambda;
  const auto report = logfem::truncation_check(spec.truncation_input(), space, cfg);
  CHECK(report.bound_satisfied);
  CHECK(report.max_tnorm > 0.0);

  cfg.tau = 0.005;
  const auto finer = logfem::truncation_check(spec.truncation_input(), space, cfg);
  const double ratio = report.max_tnorm / finer.max_tnorm;
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}

TEST_CASE("per-step solver residual stays below 1e-9") {
  GaussonSpec spec;
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 64);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.tau = 0.0125;
  cfg.T = 0.5;
  cfg.lambda = spec.lambda;
  cfg.boundary_mode = BoundaryMode::exact_trace;
  const ImexStepper stepper(space, cfg, spec.trace());
  const auto a = logfem::build_step_matrix(stepper.mass_matrix(), stepper.stiffness_matrix(), cfg.tau,
                                           space.interior_dofs());

  CoefficientVector u = logfem::interpolate(space, spec.field_at(0.0));
  for (long n = 0; n < cfg.num_steps(); ++n) {
    const double t = static_cast<double>(n) * cfg.tau;
    const auto next = stepper.step(u, t);

    // rebuild the right side this step solved and measure the residual
    const auto mu = stepper.mass_matrix().multiply(std::span<const cplx>(u.values()));
    const auto load = logfem::assemble_load_f(space, u, space.rule());
    const auto interior = space.interior_dofs();
    std::vector<cplx> x(interior.size()), rhs(interior.size());
    for (std::size_t p = 0; p < interior.size(); ++p) {
      const int i = interior[p];
      rhs[p] = cplx(0.0, 1.0 / cfg.tau) * mu[i] + 2.0 * cfg.lambda * load[i];
      const int hb = space.half_bandwidth();
      for (int j = std::max(0, i - hb); j <= std::min(space.num_dofs() - 1, i + hb); ++j) {
        if (!space.dof_on_boundary(j)) continue;
        const cplx aij(-stepper.stiffness_matrix().get(i, j), stepper.mass_matrix().get(i, j) / cfg.tau);
        rhs[p] -= aij * next[j];
      }
      x[p] = next[i];
    }
    const auto ax = a.multiply(std::span<const cplx>(x));
    double res = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      res += std::norm(ax[p] - rhs[p]);
      scale += std::norm(rhs[p]);
    }
    CHECK(std::sqrt(res) <= 1e-9 * std::sqrt(scale));
    u = next;
  }
}

TEST_CASE("exact trace mode requires boundary data") {
  const Mesh mesh = logfem::uniform_interval(-1.0, 1.0, 4);
  const FeSpace space(mesh, 1);
  SchemeConfig cfg;
  cfg.boundary_mode = BoundaryMode::exact_trace;
  CHECK_THROWS_AS(ImexStepper(space, cfg), std::invalid_argument);
}

TEST_SUITE_END();
