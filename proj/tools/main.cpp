#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mdspde/campaign.hpp"
#include "mdspde/config.hpp"
#include "mdspde/errors.hpp"
#include "mdspde/rng.hpp"
#include "mdspde/specfun.hpp"
#include "mdspde/variational.hpp"

namespace {

using namespace mdspde;

struct CliOverrides {
  std::string config_path;
  std::optional<std::string> model_kind, bc, sign, control;
  std::optional<double> mu, ell, kappa, h_exponent, exit_radius;
  std::optional<int> k0, galerkin, steps_per_unit, threads;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> eps_grid, horizon_grid;
  std::string out_path;
  bool paper_style = false;
  bool record_path = false;
};

void add_common_flags(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--model", o.model_kind, "allen-cahn|quintic");
  cmd->add_option("--mu", o.mu, "quintic coefficient in (-1,0]");
  cmd->add_option("--bc", o.bc, "neumann|periodic|dirichlet");
  cmd->add_option("--ell", o.ell, "interval length");
  cmd->add_option("--sign", o.sign, "equilibrium sign, + or -");
  cmd->add_option("--control", o.control, "none|asymptotic|mollified");
  cmd->add_option("--kappa", o.kappa, "mollification neighborhood exponent");
  cmd->add_option("--k0", o.k0, "modes forced by the asymptotic control");
  cmd->add_option("--h-exponent", o.h_exponent, "rho_h in h(eps) = eps^{-rho_h}");
  cmd->add_option("--exit-radius", o.exit_radius, "exit radius L");
  cmd->add_option("--galerkin", o.galerkin, "Galerkin level N");
  cmd->add_option("--steps-per-unit", o.steps_per_unit, "time steps per unit horizon");
  cmd->add_option("--samples", o.samples, "Monte Carlo trajectories M");
  cmd->add_option("--threads", o.threads, "worker threads (default: MDSPDE_THREADS or hw)");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--epsilon", o.eps_grid, "epsilon grid")->delimiter(',');
  cmd->add_option("--horizon", o.horizon_grid, "horizon grid")->delimiter(',');
  cmd->add_option("--out", o.out_path, "output CSV path (default stdout)");
  cmd->add_flag("--paper-style", o.paper_style, "render missing CSV values as --");
  cmd->add_flag("--record-path", o.record_path, "dump the first trajectory's path");
}

RunConfig build_config(const CliOverrides& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw config_error("cannot open config file: " + o.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    cfg = RunConfig::from_json_text(text.str());
  }
  // flags win over the config file
  if (o.model_kind) {
    if (*o.model_kind == "allen-cahn") {
      cfg.model.kind = ReactionKind::allen_cahn;
    } else if (*o.model_kind == "quintic") {
      cfg.model.kind = ReactionKind::quintic;
    } else {
      throw config_error("unknown model kind: " + *o.model_kind);
    }
  }
  if (o.mu) cfg.model.mu = *o.mu;
  if (o.bc) {
    if (*o.bc == "neumann") {
      cfg.model.bc = BoundaryCondition::neumann;
    } else if (*o.bc == "periodic") {
      cfg.model.bc = BoundaryCondition::periodic;
    } else if (*o.bc == "dirichlet") {
      cfg.model.bc = BoundaryCondition::dirichlet;
    } else {
      throw config_error("unknown boundary condition: " + *o.bc);
    }
  }
  if (o.ell) cfg.model.ell = *o.ell;
  if (o.sign) {
    cfg.model.sign = (*o.sign == "-" || *o.sign == "minus") ? EquilibriumSign::minus
                                                            : EquilibriumSign::plus;
  }
  if (o.control) {
    if (*o.control == "none") {
      cfg.control = ControlVariant::none;
    } else if (*o.control == "asymptotic") {
      cfg.control = ControlVariant::asymptotic;
    } else if (*o.control == "mollified") {
      cfg.control = ControlVariant::mollified;
    } else {
      throw config_error("unknown control variant: " + *o.control);
    }
  }
  if (o.kappa) cfg.kappa = *o.kappa;
  if (o.k0) cfg.k0 = *o.k0;
  if (o.h_exponent) cfg.h_exponent = *o.h_exponent;
  if (o.exit_radius) cfg.exit_radius = *o.exit_radius;
  if (o.galerkin) cfg.n_modes = *o.galerkin;
  if (o.steps_per_unit) cfg.steps_per_unit = *o.steps_per_unit;
  if (o.samples) cfg.n_samples = *o.samples;
  if (o.threads) cfg.threads = *o.threads;
  if (o.seed) cfg.seed = *o.seed;
  if (o.eps_grid && !o.eps_grid->empty()) cfg.eps_grid = *o.eps_grid;
  if (o.horizon_grid && !o.horizon_grid->empty()) cfg.horizon_grid = *o.horizon_grid;
  if (!o.out_path.empty()) cfg.out_path = o.out_path;
  if (o.paper_style) cfg.paper_style = true;
  if (o.record_path) cfg.record_path = true;

  cfg.validate();
  for (const auto& note : cfg.warnings()) std::cerr << "warning: " << note << "\n";
  return cfg;
}

std::ostream& open_output(const RunConfig& cfg, std::ofstream& file) {
  if (cfg.out_path.empty()) return std::cout;
  file.open(cfg.out_path);
  if (!file) throw config_error("cannot open output file: " + cfg.out_path);
  return file;
}

SpectralBasis build_basis(const RunConfig& cfg) {
  return linearized_spectrum(cfg.model,
                             laplacian_spectrum(cfg.model.bc, cfg.model.ell, cfg.n_modes));
}

ControlPolicy build_policy(const RunConfig& cfg, const SpectralBasis& basis) {
  return ControlPolicy{cfg.control, cfg.k0, cfg.exit_radius, cfg.kappa, &basis};
}

int cmd_spectrum(const RunConfig& cfg) {
  const auto basis = build_basis(cfg);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "index,a_lap,a_lin\n";
  for (int j = 1; j <= basis.n_modes; ++j) {
    out << j << ',' << basis.lap_eigenvalues[j - 1] << ',';
    if (j <= basis.lin_mode_count()) out << basis.lin_eigenvalues[j - 1];
    out << '\n';
  }
  const auto gap = check_spectral_gap(basis);
  std::cerr << "gap: strong=" << (gap.strong ? "true" : "false")
            << " relaxed=" << (gap.relaxed ? "true" : "false") << " weak_k0="
            << (gap.weak_k0 ? std::to_string(*gap.weak_k0) : std::string("none")) << "\n";
  return 0;
}

int cmd_gap_check(const RunConfig& cfg) {
  const auto gap = check_spectral_gap(build_basis(cfg));
  std::cout << "strong=" << (gap.strong ? "true" : "false") << "\n"
            << "relaxed=" << (gap.relaxed ? "true" : "false") << "\n"
            << "weak_k0=" << (gap.weak_k0 ? std::to_string(*gap.weak_k0) : std::string("none"))
            << "\n";
  return 0;
}

int cmd_minimizer(const RunConfig& cfg) {
  const auto basis = build_basis(cfg);
  const double a1 = basis.lin_eigenvalues[0];
  const double a2 = basis.lin_eigenvalues[1];
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "T,exit_index,I_star,T_star,G_T,U0,scheme_rate,optimal_rate\n";
  for (const double horizon : cfg.horizon_grid) {
    const auto dir =
        exit_direction(basis.lin_eigenvalues, cfg.k0, horizon, cfg.exit_radius);
    const auto rates = decay_rates(a1, cfg.exit_radius, horizon);
    out << horizon << ',' << dir.index << ',' << dir.minimal_value << ',';
    if (a1 < a2 && a2 <= 2.0 * a1) {
      out << t_star(a1, a2);
    }
    out << ',' << rates.g_T << ',' << rates.u0 << ',' << rates.scheme << ','
        << rates.optimal << '\n';
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const auto basis = build_basis(cfg);
  const auto policy = build_policy(cfg, basis);
  const double eps = cfg.eps_grid.front();
  const double horizon = cfg.horizon_grid.front();
  const auto solver_cfg = cfg.solver_config(eps, horizon);

  if (cfg.record_path) {
    const Transform transform(basis);
    const SpectralNonlinearity nonlinearity(cfg.model, transform);
    const auto eq = equilibrium(cfg.model, basis, transform);
    SimulationSetup setup(nonlinearity, basis, policy, solver_cfg, eq.coefficients);
    const auto outcome = run_trajectory(setup, solver_cfg.seed, 0);
    std::ofstream file;
    auto& out = open_output(cfg, file);
    out << "step,t,norm_eta";
    for (int j = 1; j <= cfg.n_modes; ++j) out << ",mode" << j;
    out << '\n';
    const double dt = solver_cfg.time_step();
    for (std::size_t k = 0; k < outcome.path.size(); ++k) {
      double norm2 = 0.0;
      for (const double v : outcome.path[k]) norm2 += v * v;
      out << (k + 1) << ',' << (k + 1) * dt << ',' << std::sqrt(norm2);
      for (const double v : outcome.path[k]) out << ',' << v;
      out << '\n';
    }
    return 0;
  }

  std::vector<SweepRow> rows(1);
  rows[0].epsilon = eps;
  rows[0].horizon = horizon;
  rows[0].moderate_radius = solver_cfg.domain_radius();
  rows[0].result =
      run_campaign(cfg.model, basis, policy, solver_cfg, cfg.n_samples, cfg.resolved_threads());
  std::ofstream file;
  write_csv(rows, open_output(cfg, file), cfg.paper_style);
  return 0;
}

int cmd_table(const RunConfig& cfg) {
  const auto basis = build_basis(cfg);
  const auto policy = build_policy(cfg, basis);
  const auto rows = sweep(cfg.model, basis, policy, cfg.solver_config(1.0, 1.0),
                          cfg.steps_per_unit, cfg.eps_grid, cfg.horizon_grid, cfg.n_samples,
                          cfg.resolved_threads());
  std::ofstream file;
  write_csv(rows, open_output(cfg, file), cfg.paper_style);
  return 0;
}

// special-function self tests; exits nonzero on any tolerance failure
int cmd_oracle() {
  using namespace mdspde::specfun;
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  constexpr double kPi = 3.141592653589793238462643383279502884;
  expect(std::abs(elliptic_K(0.0) - kPi / 2.0) < 1e-14, "K(0) = pi/2");
  expect(std::abs(elliptic_K(0.5) - 1.854074677301372) < 1e-12, "K(0.5)");
  expect(elliptic_K(0.99) > elliptic_K(0.5), "K increasing");

  RngStream rng(0xfeedULL, 0);
  bool identities = true;
  for (int i = 0; i < 1000; ++i) {
    const double x = 20.0 * (rng.next_uniform() - 0.5);
    const double m = rng.next_uniform() * 0.9999;
    const auto t = jacobi_elliptic(x, m);
    identities = identities && std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) < 1e-12 &&
                 std::abs(t.dn * t.dn - (1.0 - m * t.sn * t.sn)) < 1e-12;
  }
  expect(identities, "sn^2+cn^2=1 and dn^2=1-m sn^2 on 1000 random points");

  bool roundtrip = true;
  for (int i = 1; i < 100; ++i) {
    const double a = 0.01 + 0.98 * i / 100.0;
    roundtrip = roundtrip && std::abs(inverse_M(quarter_period_M(a)) - a) < 1e-9;
  }
  expect(roundtrip, "inverse_M(M(a)) = a on (0.01, 0.99)");
  expect(std::abs(quarter_period_M(1e-6) - kPi / 2.0) < 1e-5, "M(0+) -> pi/2");

  std::cout << (failures == 0 ? "oracle: all checks passed\n"
                              : "oracle: FAILURES present\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moderate-deviation importance sampling for stochastic reaction-diffusion equations"};
  app.require_subcommand(1);

  CliOverrides overrides;
  auto* spectrum = app.add_subcommand("spectrum", "print eigenvalues as CSV");
  auto* gap = app.add_subcommand("gap-check", "report spectral-gap conditions");
  auto* minimizer =
      app.add_subcommand("minimizer", "exit directions and decay rates of the limit problem");
  auto* simulate = app.add_subcommand("simulate", "run one Monte Carlo campaign");
  auto* table = app.add_subcommand("table", "sweep the epsilon/horizon grid and emit CSV");
  app.add_subcommand("oracle", "special-function self tests");
  for (auto* cmd : {spectrum, gap, minimizer, simulate, table}) {
    add_common_flags(cmd, overrides);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto* active = app.get_subcommands().front();
    const std::string name = active->get_name();
    if (name == "oracle") return cmd_oracle();

    const RunConfig cfg = build_config(overrides);
    if (name == "spectrum") return cmd_spectrum(cfg);
    if (name == "gap-check") return cmd_gap_check(cfg);
    if (name == "minimizer") return cmd_minimizer(cfg);
    if (name == "simulate") return cmd_simulate(cfg);
    if (name == "table") return cmd_table(cfg);
    std::cerr << "unknown subcommand: " << name << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
