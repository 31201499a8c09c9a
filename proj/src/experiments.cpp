#include "logfem/experiments.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "logfem/gronwall.hpp"
#include "logfem/io.hpp"
#include "logfem/lognl.hpp"
#include "logfem/rng.hpp"

namespace logfem {

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least two samples");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

std::vector<std::string> scheme_constraint_warnings(double tau, double h, int degree, int dim) {
  std::vector<std::string> warnings;
  const double e_inv = std::exp(-1.0);
  if (tau > e_inv)
    warnings.push_back("tau = " + format_real(tau) + " exceeds e^-1; outside the analyzed regime");
  if (std::pow(h, degree + 1) > e_inv)
    warnings.push_back("h^(r+1) = " + format_real(std::pow(h, degree + 1)) +
                       " exceeds e^-1; outside the analyzed regime");
  warnings.push_back("tau / h^(d/2) = " + format_real(tau / std::pow(h, 0.5 * dim)) +
                     " (recorded, not gated)");
  return warnings;
}

namespace {

ConvergenceRow run_gausson_case(const GaussonSpec& spec, int degree, double h, double tau, double T) {
  const int n = std::max(1, static_cast<int>(std::lround(2.0 / h)));
  Mesh mesh;
  if (spec.dim == 1) {
    mesh = uniform_interval(-1.0, 1.0, n);
  } else {
    mesh = structured_triangulation(-1.0, 1.0, -1.0, 1.0, n, n);
  }
  const FeSpace space(mesh, degree);

  SchemeConfig cfg;
  cfg.tau = tau;
  cfg.T = T;
  cfg.lambda = spec.lambda;
  cfg.degree = degree;
  cfg.boundary_mode = BoundaryMode::exact_trace;
  cfg.record_every = std::max<long>(1, cfg.num_steps());  // only endpoints

  const ImexStepper stepper(space, cfg, spec.trace());
  const auto u0 = interpolate(space, spec.field_at(0.0));
  const auto result = stepper.run(u0);

  const double t_final = static_cast<double>(cfg.num_steps()) * tau;
  const auto norms = error_norms(space, result.final, spec.field_at(t_final));
  ConvergenceRow row;
  row.h = h;
  row.tau = tau;
  row.e2 = norms.l2;
  row.einf = norms.linf;
  row.L2 = norms.L2;
  return row;
}

ConvergenceTable gather_rows(const GaussonSpec& spec, int degree, double T,
                             std::span<const std::pair<double, double>> h_tau, bool refine_in_tau) {
  ConvergenceTable table;
  std::vector<std::future<ConvergenceRow>> futures;
  futures.reserve(h_tau.size());
  for (const auto& ht : h_tau) {
    const double h = ht.first;
    const double tau = ht.second;
    futures.push_back(std::async(std::launch::async,
                                 [&spec, degree, h, tau, T] { return run_gausson_case(spec, degree, h, tau, T); }));
    for (const auto& w : scheme_constraint_warnings(tau, h, degree, spec.dim)) table.warnings.push_back(w);
  }
  std::vector<double> xs;
  std::vector<double> e2s, einfs, L2s;
  for (auto& f : futures) {
    table.rows.push_back(f.get());
    const auto& row = table.rows.back();
    xs.push_back(refine_in_tau ? row.tau : row.h);
    e2s.push_back(row.e2);
    einfs.push_back(row.einf);
    L2s.push_back(row.L2);
  }
  table.slope_e2 = fit_loglog_slope(xs, e2s);
  table.slope_einf = fit_loglog_slope(xs, einfs);
  table.slope_L2 = fit_loglog_slope(xs, L2s);
  return table;
}

}  // namespace

ConvergenceTable converge_time(const GaussonSpec& spec, int degree, double h,
                               std::span<const double> taus, double T) {
  std::vector<std::pair<double, double>> cases;
  cases.reserve(taus.size());
  for (double tau : taus) cases.emplace_back(h, tau);
  return gather_rows(spec, degree, T, cases, /*refine_in_tau=*/true);
}

ConvergenceTable converge_space(const GaussonSpec& spec, int degree, double tau,
                                std::span<const double> hs, double T) {
  std::vector<std::pair<double, double>> cases;
  cases.reserve(hs.size());
  for (double h : hs) cases.emplace_back(h, tau);
  return gather_rows(spec, degree, T, cases, /*refine_in_tau=*/false);
}

ConvergenceTable converge_space_time_2d(const GaussonSpec& spec, std::span<const double> cell_sizes,
                                        double T) {
  if (spec.dim != 2) throw std::invalid_argument("converge_space_time_2d: needs a 2D Gausson");
  std::vector<std::pair<double, double>> cases;
  cases.reserve(cell_sizes.size());
  for (double h : cell_sizes) cases.emplace_back(h, h * h);
  return gather_rows(spec, /*degree=*/1, T, cases, /*refine_in_tau=*/false);
}

namespace {

DynamicsResult run_dynamics(const FeSpace& space, const SchemeConfig& cfg, const ScalarField& initial,
                            std::span<const double> snapshot_times) {
  const ImexStepper stepper(space, cfg);
  auto u0 = interpolate(space, initial);
  for (int k : space.boundary_dofs()) u0[k] = 0.0;  // zero-trace initial state

  DynamicsResult out;
  auto capture = [&](double t, const CoefficientVector& u) {
    Snapshot snap;
    snap.t = t;
    snap.points.reserve(static_cast<std::size_t>(space.num_dofs()));
    for (int k = 0; k < space.num_dofs(); ++k) snap.points.push_back(space.dof_point(k));
    snap.values.assign(u.values().begin(), u.values().end());
    out.snapshots.push_back(std::move(snap));
  };

  std::vector<long> snap_steps;
  for (double t : snapshot_times) {
    if (t <= 0.0) continue;
    snap_steps.push_back(std::lround(t / cfg.tau));
  }
  bool want_initial = false;
  for (double t : snapshot_times) want_initial = want_initial || t <= 0.0;
  if (want_initial) capture(0.0, u0);

  const auto result = stepper.run(u0, [&](long n, double t, const CoefficientVector& u) {
    for (long s : snap_steps) {
      if (s == n) capture(t, u);
    }
  });
  out.series = result.series;
  return out;
}

}  // namespace

DynamicsResult dynamics_two_gausson(const TwoGaussonSpec& spec, const SchemeConfig& cfg,
                                    double domain_half_width, int n_elements,
                                    std::span<const double> snapshot_times) {
  const Mesh mesh = uniform_interval(-domain_half_width, domain_half_width, n_elements);
  const FeSpace space(mesh, cfg.degree);
  return run_dynamics(space, cfg, spec.initial_field(), snapshot_times);
}

DynamicsResult dynamics_2d_tanh(const SchemeConfig& cfg, int cells_per_side,
                                std::span<const double> snapshot_times) {
  const Mesh mesh = structured_triangulation(-10.0, 10.0, -10.0, 10.0, cells_per_side, cells_per_side);
  const FeSpace space(mesh, 1);
  const ScalarField initial = [](std::array<double, 2> p) {
    return cplx(std::tanh(p[0]) * std::tanh(p[1]) * std::exp(-p[0] * p[0] - p[1] * p[1]), 0.0);
  };
  return run_dynamics(space, cfg, initial, snapshot_times);
}

bool LemmaReport::all_passed() const {
  return lipschitz_failures == 0 && holder_failures == 0 && imaginary_failures == 0 &&
         split_case_i_failures == 0 && split_case_ii_failures == 0 && remark_lipschitz_failures == 0 &&
         near_zero_failures == 0 && gronwall_failures == 0;
}

std::string LemmaReport::to_text() const {
  std::ostringstream out;
  out << "lemma validation report\n";
  out << "generator " << generator << " seed " << seed << " samples " << n_samples << "\n";
  out << "lipschitz_bound_failures " << lipschitz_failures << "\n";
  out << "holder_bound_failures " << holder_failures << "\n";
  out << "imaginary_part_failures " << imaginary_failures << "\n";
  out << "l2_split_case_i_failures " << split_case_i_failures << "\n";
  out << "l2_split_case_ii_failures " << split_case_ii_failures << "\n";
  out << "lipschitz_regime_failures " << remark_lipschitz_failures << "\n";
  out << "near_zero_failures " << near_zero_failures << "\n";
  out << "gronwall_chain_failures " << gronwall_failures << "\n";
  out << "verdict " << (all_passed() ? "pass" : "FAIL") << "\n";
  for (const auto& c : counterexamples) out << "counterexample " << c << "\n";
  return out.str();
}

namespace {

cplx random_in_disk(SplitMix64& rng, double radius) {
  // uniform modulus and angle; stresses small moduli more than area-uniform
  const double r = radius * rng.uniform();
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return std::polar(r, phi);
}

std::string dump_pair(cplx u, cplx v) {
  std::ostringstream out;
  out << "u=(" << format_real(u.real()) << "," << format_real(u.imag()) << ") v=(" << format_real(v.real())
      << "," << format_real(v.imag()) << ")";
  return out.str();
}

}  // namespace

LemmaReport verify_lemmas(std::uint64_t seed, long n_samples) {
  if (n_samples < 1) throw std::invalid_argument("verify_lemmas: need at least one sample");
  LemmaReport report;
  report.seed = seed;
  report.n_samples = n_samples;
  report.generator = SplitMix64::kName;
  SplitMix64 rng(seed);

  const double alpha = 0.5;
  const double eps = std::exp(-1.0);

  auto note = [&report](long& counter, const std::string& dump) {
    ++counter;
    if (report.counterexamples.size() < 10) report.counterexamples.push_back(dump);
  };

  for (long i = 0; i < n_samples; ++i) {
    // Lipschitz-type bound on the disk |z| <= 10
    {
      const cplx u = random_in_disk(rng, 10.0), v = random_in_disk(rng, 10.0);
      if (!lognl::check_lipschitz_bound(u, v)) note(report.lipschitz_failures, "lipschitz " + dump_pair(u, v));
    }
    // Holder bound inside the disk of radius eps = delta_{1/2}
    {
      const cplx u = random_in_disk(rng, eps), v = random_in_disk(rng, eps);
      if (lognl::check_holder_bound(u, v, alpha, eps) != lognl::HolderCheck::holds)
        note(report.holder_failures, "holder " + dump_pair(u, v));
    }
    // imaginary-part inequality on a large disk
    {
      const cplx u = random_in_disk(rng, 1e3), v = random_in_disk(rng, 1e3);
      if (!lognl::check_imaginary_inequality(u, v)) note(report.imaginary_failures, "imaginary " + dump_pair(u, v));
    }
  }

  // discrete L2 split bounds over random co-located samples; vector length
  // times vector count covers at least n_samples pairs per case
  const long n_vectors = std::max<long>(1, n_samples / 100);
  for (long i = 0; i < n_vectors; ++i) {
    const std::size_t m = 128;
    std::vector<cplx> u(m), v(m);
    std::vector<double> w(m);
    // case (i): moduli straddle eps
    for (std::size_t k = 0; k < m; ++k) {
      u[k] = random_in_disk(rng, 2.0);
      v[k] = random_in_disk(rng, 2.0);
      w[k] = rng.uniform(0.0, 1.0);
    }
    auto split = lognl::l2_split_bound(u, v, w, alpha, eps);
    if (split.lipschitz_active && split.lhs > split.rhs() * (1.0 + 1e-12) + 1e-12)
      note(report.split_case_i_failures, "split_case_i sample " + std::to_string(i));

    // case (ii): everything inside the eps-disk
    for (std::size_t k = 0; k < m; ++k) {
      u[k] = random_in_disk(rng, eps);
      v[k] = random_in_disk(rng, eps);
    }
    split = lognl::l2_split_bound(u, v, w, alpha, eps);
    if (split.lipschitz_active || split.lhs > split.holder_term * (1.0 + 1e-12) + 1e-12)
      note(report.split_case_ii_failures, "split_case_ii sample " + std::to_string(i));

    // Lipschitz-only regime: all moduli above eps
    double lhs = 0.0, rhs = 0.0;
    double lambda_inf = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const cplx a = std::polar(rng.uniform(eps * (1.0 + 1e-12), 3.0), 2.0 * std::numbers::pi * rng.uniform());
      const cplx b = std::polar(rng.uniform(eps * (1.0 + 1e-12), 3.0), 2.0 * std::numbers::pi * rng.uniform());
      lhs += w[k] * std::norm(lognl::f(a) - lognl::f(b));
      rhs += w[k] * std::norm(a - b);
      lambda_inf = std::max({lambda_inf, std::abs(a), std::abs(b)});
    }
    const double ups = lognl::upsilon(eps, lambda_inf);
    if (lhs > ups * ups * rhs * (1.0 + 1e-12) + 1e-12)
      note(report.remark_lipschitz_failures, "lipschitz_regime sample " + std::to_string(i));
  }

  // adversarial near-zero pairs down to |z| = 1e-300
  for (int k = 1; k <= 300; ++k) {
    const double r = std::pow(10.0, -k);
    const cplx u = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
    const cplx v = std::polar(r * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    bool ok = lognl::check_lipschitz_bound(u, v) && lognl::check_imaginary_inequality(u, v);
    if (r <= eps) ok = ok && lognl::check_holder_bound(u, v, alpha, eps) == lognl::HolderCheck::holds;
    if (!ok) note(report.near_zero_failures, "near_zero " + dump_pair(u, v));
  }

  // Gronwall chain: oracle <= closed-form bound <= relaxed bound
  const long n_draws = std::max<long>(1, n_samples / 100);
  for (long i = 0; i < n_draws; ++i) {
    GronwallParams p;
    p.c1 = rng.uniform(1e-3, 10.0);
    p.c2 = rng.uniform(0.0, 2.0);
    p.c3 = rng.uniform(0.0, 2.0);
    p.alpha = rng.uniform(0.05, 1.0);
    const int n_max = 50;
    const auto oracle = maximal_sequence_oracle(p, n_max);
    for (int n = 0; n <= n_max; ++n) {
      const double bound = gronwall_bound(p, n);
      const double relaxed = gronwall_relaxed_bound(p, n);
      if (oracle[static_cast<std::size_t>(n)] > bound * (1.0 + 1e-12) ||
          bound > relaxed * (1.0 + 1e-12)) {
        note(report.gronwall_failures,
             "gronwall c1=" + format_real(p.c1) + " c2=" + format_real(p.c2) + " c3=" + format_real(p.c3) +
                 " alpha=" + format_real(p.alpha) + " n=" + std::to_string(n));
        break;
      }
    }
  }

  return report;
}

}  // namespace logfem
