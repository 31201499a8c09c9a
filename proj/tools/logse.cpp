// Command-line harness for the first-order IMEX finite-element scheme for the
// logarithmic Schrodinger equation: convergence studies against the exact
// Gausson, 1D/2D dynamics runs, truncation-error diagnostics and randomized
// validation of the analysis inequalities. Emits CSV / gnuplot-ready data.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logfem/experiments.hpp"
#include "logfem/io.hpp"

namespace {

using logfem::format_real;

constexpr int kExitOk = 0;
constexpr int kExitConstraint = 1;
constexpr int kExitSolver = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 2023;
  double tau = 0.0;  // 0 = use subcommand default
  double h = 0.0;
  int degree = 1;
  double lambda = -1.0;
  double T = 0.0;
  std::string case_name = "i";
  int dim = 1;
  bool long_mode = false;
  long samples = 100000;

  // which flags were set on the command line (they override the config file)
  std::map<std::string, bool> set;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->set_help_flag("--help", "print help");  // frees -h / --h for the mesh size
  cmd->add_option("--config", opt.config_path, "flat key = value configuration file");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--seed", opt.seed, "seed of the splitmix64 generator");
  cmd->add_option("--tau", opt.tau, "time step");
  cmd->add_option("--h", opt.h, "mesh size (cell side in 2D)");
  cmd->add_option("--degree", opt.degree, "element degree r")->check(CLI::Range(1, 2));
  cmd->add_option("--lambda", opt.lambda, "coupling constant");
  cmd->add_option("--T", opt.T, "final time");
  cmd->add_option("--case", opt.case_name, "two-Gausson case")->check(CLI::IsMember({"i", "ii", "iii"}));
  cmd->add_option("--dim", opt.dim, "spatial dimension")->check(CLI::Range(1, 2));
  cmd->add_flag("--long", opt.long_mode, "full-size configuration (tau = 1e-5, T = 1) for space studies");
  cmd->add_option("--samples", opt.samples, "sample count for verify-lemmas");
}

// config file supplies values for keys the command line did not set
void apply_config(const CLI::App* cmd, CommonOptions& opt) {
  if (opt.config_path.empty()) return;
  const auto kv = logfem::read_config_file(opt.config_path);
  auto get = [&](const char* key, auto& target, const char* flag) {
    const auto it = kv.find(key);
    if (it == kv.end() || cmd->count(flag) > 0) return;
    std::istringstream in(it->second);
    in >> target;
    if (in.fail()) throw std::invalid_argument(std::string("config value for '") + key + "' is malformed");
  };
  get("out", opt.out_dir, "--out");
  get("seed", opt.seed, "--seed");
  get("tau", opt.tau, "--tau");
  get("h", opt.h, "--h");
  get("degree", opt.degree, "--degree");
  get("lambda", opt.lambda, "--lambda");
  get("T", opt.T, "--T");
  get("case", opt.case_name, "--case");
  get("dim", opt.dim, "--dim");
  get("samples", opt.samples, "--samples");
  const auto it = kv.find("long");
  if (it != kv.end() && cmd->count("--long") == 0) opt.long_mode = it->second == "1" || it->second == "true";
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

void write_table(const std::string& dir, const std::string& name, const logfem::ConvergenceTable& table) {
  auto csv = open_output(dir, name + ".csv");
  csv << "h,tau,e2,einf,L2\n";
  for (const auto& row : table.rows) {
    csv << format_real(row.h) << ',' << format_real(row.tau) << ',' << format_real(row.e2) << ','
        << format_real(row.einf) << ',' << format_real(row.L2) << '\n';
  }
  auto slopes = open_output(dir, name + "_slopes.csv");
  slopes << "slope_e2,slope_einf,slope_L2\n";
  slopes << format_real(table.slope_e2) << ',' << format_real(table.slope_einf) << ','
         << format_real(table.slope_L2) << '\n';
}

void print_table(const logfem::ConvergenceTable& table) {
  std::cout << "h tau e2 einf L2\n";
  for (const auto& row : table.rows) {
    std::cout << format_real(row.h) << ' ' << format_real(row.tau) << ' ' << format_real(row.e2) << ' '
              << format_real(row.einf) << ' ' << format_real(row.L2) << '\n';
  }
  std::cout << "slopes e2 " << format_real(table.slope_e2) << "  einf " << format_real(table.slope_einf)
            << "  L2 " << format_real(table.slope_L2) << '\n';
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
}

void warn_step_coverage(double tau, double T) {
  logfem::SchemeConfig cfg;
  cfg.tau = tau;
  cfg.T = T;
  if (!cfg.covers_final_time())
    std::cerr << "warning: N_t * tau = " << format_real(static_cast<double>(cfg.num_steps()) * tau)
              << " differs from T = " << format_real(T) << "; the final fractional step is not taken\n";
}

void write_snapshots(const std::string& dir, const logfem::DynamicsResult& result, int dim) {
  int index = 0;
  for (const auto& snap : result.snapshots) {
    std::ostringstream name;
    name << "snapshot_" << index++ << ".dat";
    auto out = open_output(dir, name.str());
    out << "# t = " << format_real(snap.t) << '\n';
    out << (dim == 1 ? "# x abs re im\n" : "# x y abs re im\n");
    for (std::size_t k = 0; k < snap.values.size(); ++k) {
      const auto& p = snap.points[k];
      const auto v = snap.values[k];
      out << format_real(p[0]) << ' ';
      if (dim == 2) out << format_real(p[1]) << ' ';
      out << format_real(std::abs(v)) << ' ' << format_real(v.real()) << ' ' << format_real(v.imag())
          << '\n';
    }
  }
}

void write_series(const std::string& dir, const logfem::TimeSeries& series) {
  auto out = open_output(dir, "series.csv");
  out << "t,mass,energy,linf\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out << format_real(series.times[k]) << ',' << format_real(series.mass[k]) << ','
        << format_real(series.energy[k]) << ',' << format_real(series.linf[k]) << '\n';
  }
}

int cmd_converge_time(const CommonOptions& opt) {
  logfem::GaussonSpec spec;
  spec.dim = opt.dim;
  spec.lambda = opt.lambda;
  const double h = opt.h > 0.0 ? opt.h : std::pow(2.0, -5);
  const double T = opt.T > 0.0 ? opt.T : 1.0;
  std::vector<double> taus;
  const double base = opt.dim == 1 ? 0.1 : 0.01;
  for (int j = 1; j <= 5; ++j) taus.push_back(base * std::pow(2.0, -j));
  for (double tau : taus) warn_step_coverage(tau, T);

  const auto table = logfem::converge_time(spec, opt.degree, h, taus, T);
  print_table(table);
  write_table(opt.out_dir, "converge_time", table);
  return kExitOk;
}

int cmd_converge_space(const CommonOptions& opt) {
  logfem::GaussonSpec spec;
  spec.dim = opt.dim;
  spec.lambda = opt.lambda;

  if (opt.dim == 2) {
    // combined refinement tau = h^2 on the cell side
    std::vector<double> cells;
    for (int j = 1; j <= 4; ++j) cells.push_back(1.0 / (20.0 + 4.0 * j));
    const double T = opt.T > 0.0 ? opt.T : 1.0;
    const auto table = logfem::converge_space_time_2d(spec, cells, T);
    print_table(table);
    write_table(opt.out_dir, "converge_space_2d", table);
    return kExitOk;
  }

  const double tau = opt.tau > 0.0 ? opt.tau : (opt.long_mode ? 1e-5 : 1e-4);
  const double T = opt.T > 0.0 ? opt.T : (opt.long_mode ? 1.0 : 0.01);
  std::vector<double> hs;
  if (opt.degree == 1) {
    for (int j = 1; j <= 5; ++j) hs.push_back(std::pow(2.0, -j));
  } else {
    for (int j = 1; j <= 5; ++j) hs.push_back(1.0 / (j + 1));
  }
  warn_step_coverage(tau, T);

  const auto table = logfem::converge_space(spec, opt.degree, tau, hs, T);
  print_table(table);
  write_table(opt.out_dir, "converge_space", table);
  return kExitOk;
}

int cmd_dynamics_1d(const CommonOptions& opt) {
  logfem::SchemeConfig cfg;
  cfg.tau = opt.tau > 0.0 ? opt.tau : 1e-4;
  cfg.T = opt.T > 0.0 ? opt.T : 1.0;
  cfg.lambda = opt.lambda;
  cfg.degree = opt.degree;
  cfg.record_every = std::max<long>(1, cfg.num_steps() / 1000);
  const double h = opt.h > 0.0 ? opt.h : 0.05;
  const int n_elements = static_cast<int>(std::lround(80.0 / h));
  warn_step_coverage(cfg.tau, cfg.T);
  for (const auto& w : logfem::scheme_constraint_warnings(cfg.tau, h, cfg.degree, 1))
    std::cerr << "warning: " << w << '\n';

  const int which = opt.case_name == "i" ? 1 : opt.case_name == "ii" ? 2 : 3;
  const auto spec = logfem::TwoGaussonSpec::benchmark_case(which);
  std::vector<double> snap_times;
  for (int k = 0; k <= 4; ++k) snap_times.push_back(cfg.T * k / 4.0);

  const auto result = logfem::dynamics_two_gausson(spec, cfg, 40.0, n_elements, snap_times);
  write_series(opt.out_dir, result.series);
  write_snapshots(opt.out_dir, result, 1);
  std::cout << "case " << opt.case_name << ": " << result.snapshots.size() << " snapshots, mass drift "
            << format_real(result.series.mass.back() - result.series.mass.front()) << '\n';
  return kExitOk;
}

int cmd_dynamics_2d(const CommonOptions& opt) {
  logfem::SchemeConfig cfg;
  cfg.tau = opt.tau > 0.0 ? opt.tau : 1e-4;
  cfg.T = opt.T > 0.0 ? opt.T : 0.5;
  cfg.lambda = opt.lambda;
  cfg.degree = 1;
  cfg.record_every = std::max<long>(1, cfg.num_steps() / 200);
  const double h = opt.h > 0.0 ? opt.h : 0.1;
  const int cells = static_cast<int>(std::lround(20.0 / h));
  warn_step_coverage(cfg.tau, cfg.T);
  for (const auto& w : logfem::scheme_constraint_warnings(cfg.tau, h, cfg.degree, 2))
    std::cerr << "warning: " << w << '\n';

  std::vector<double> snap_times{0.0, 0.25, 0.5};
  while (!snap_times.empty() && snap_times.back() > cfg.T + 1e-12) snap_times.pop_back();

  const auto result = logfem::dynamics_2d_tanh(cfg, cells, snap_times);
  write_series(opt.out_dir, result.series);
  write_snapshots(opt.out_dir, result, 2);
  std::cout << result.snapshots.size() << " snapshots, mass drift "
            << format_real(result.series.mass.back() - result.series.mass.front()) << '\n';
  return kExitOk;
}

int cmd_verify_lemmas(const CommonOptions& opt) {
  const auto report = logfem::verify_lemmas(opt.seed, opt.samples);
  auto out = open_output(opt.out_dir, "lemma_report.txt");
  out << report.to_text();
  std::cout << report.to_text();
  return report.all_passed() ? kExitOk : kExitConstraint;
}

int cmd_truncation_check(const CommonOptions& opt) {
  logfem::GaussonSpec spec;
  spec.dim = 1;
  spec.lambda = opt.lambda;
  const double h = opt.h > 0.0 ? opt.h : std::pow(2.0, -5);
  const double T = opt.T > 0.0 ? opt.T : 1.0;
  const int n = std::max(1, static_cast<int>(std::lround(2.0 / h)));
  const logfem::Mesh mesh = logfem::uniform_interval(-1.0, 1.0, n);
  const logfem::FeSpace space(mesh, opt.degree);

  std::vector<double> taus;
  if (opt.tau > 0.0) {
    taus = {opt.tau, opt.tau / 2.0, opt.tau / 4.0};
  } else {
    taus = {1e-2, 5e-3, 2.5e-3};
  }

  auto csv = open_output(opt.out_dir, "truncation.csv");
  csv << "tau,step,tnorm,bound_sq\n";
  auto summary = open_output(opt.out_dir, "truncation_summary.csv");
  summary << "tau,max_tnorm,bound_satisfied\n";

  double previous_max = 0.0;
  for (double tau : taus) {
    logfem::SchemeConfig cfg;
    cfg.tau = tau;
    cfg.T = T;
    cfg.lambda = opt.lambda;
    cfg.degree = opt.degree;
    const auto report = logfem::truncation_check(spec.truncation_input(), space, cfg);
    for (std::size_t k = 0; k < report.tnorm.size(); ++k) {
      csv << format_real(tau) << ',' << k << ',' << format_real(report.tnorm[k]) << ','
          << format_real(report.bound_sq[k]) << '\n';
    }
    summary << format_real(tau) << ',' << format_real(report.max_tnorm) << ','
            << (report.bound_satisfied ? 1 : 0) << '\n';
    std::cout << "tau " << format_real(tau) << ": max ||T^n|| = " << format_real(report.max_tnorm)
              << ", bound " << (report.bound_satisfied ? "satisfied" : "VIOLATED");
    if (previous_max > 0.0) std::cout << ", ratio " << format_real(previous_max / report.max_tnorm);
    std::cout << '\n';
    if (!report.bound_satisfied) return kExitConstraint;
    previous_max = report.max_tnorm;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order IMEX finite elements for the logarithmic Schrodinger equation"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonOptions opt;
  auto* converge_time = app.add_subcommand("converge-time", "temporal convergence against the Gausson");
  auto* converge_space = app.add_subcommand("converge-space", "spatial convergence against the Gausson");
  auto* dynamics_1d = app.add_subcommand("dynamics-1d", "two-Gausson dynamics on (-40,40)");
  auto* dynamics_2d = app.add_subcommand("dynamics-2d", "2D tanh dynamics on (-10,10)^2");
  auto* verify = app.add_subcommand("verify-lemmas", "randomized validation of the analysis inequalities");
  auto* truncation = app.add_subcommand("truncation-check", "truncation-error bound diagnostics");
  for (auto* cmd : {converge_time, converge_space, dynamics_1d, dynamics_2d, verify, truncation})
    add_common_flags(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConstraint;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    apply_config(active, opt);
    if (active == converge_time) return cmd_converge_time(opt);
    if (active == converge_space) return cmd_converge_space(opt);
    if (active == dynamics_1d) return cmd_dynamics_1d(opt);
    if (active == dynamics_2d) return cmd_dynamics_2d(opt);
    if (active == verify) return cmd_verify_lemmas(opt);
    return cmd_truncation_check(opt);
  } catch (const logfem::SingularMatrixError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "constraint violation: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
