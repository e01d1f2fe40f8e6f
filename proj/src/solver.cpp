#include "mdspde/solver.hpp"

#include <cmath>

#include "mdspde/errors.hpp"

namespace mdspde {

double SolverConfig::h_scale() const { return std::pow(epsilon, -h_exponent); }

double SolverConfig::domain_radius() const { return std::sqrt(epsilon) * h_scale(); }

void SolverConfig::validate() const {
  if (steps < 1) throw config_error("SolverConfig: steps must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw config_error("SolverConfig: epsilon must lie in (0, 1)");
  }
  if (!(exit_radius > 0.0)) throw config_error("SolverConfig: exit radius must be positive");
  if (!(horizon > 0.0)) throw config_error("SolverConfig: horizon must be positive");
  if (n_modes < 1) throw config_error("SolverConfig: need at least one mode");
}

SimulationSetup::SimulationSetup(const NonlinearityOp& nonlinearity,
                                 const SpectralBasis& basis, const ControlPolicy& policy,
                                 const SolverConfig& config,
                                 std::span<const double> initial_coeffs)
    : nonlinearity_(&nonlinearity),
      basis_(&basis),
      policy_(policy),
      config_(config),
      initial_(initial_coeffs.begin(), initial_coeffs.end()) {
  config_.validate();
  policy_.validate();
  if (static_cast<int>(initial_.size()) != config_.n_modes ||
      basis.n_modes != config_.n_modes) {
    throw config_error("SimulationSetup: initial state/basis size must match n_modes");
  }

  const double h = config_.time_step();
  const double sqrt_eps = std::sqrt(config_.epsilon);
  const int n = config_.n_modes;
  decay_.resize(n);
  drift_gain_.resize(n);
  noise_std_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double a = basis.lap_eigenvalues[j];
    if (a > 0.0) {
      decay_[j] = std::exp(-a * h);
      drift_gain_[j] = -std::expm1(-a * h) / a;
      noise_std_[j] = sqrt_eps * std::sqrt(-std::expm1(-2.0 * a * h) / (2.0 * a));
    } else {
      // zero mode: explicit Euler with plain Brownian increment
      decay_[j] = 1.0;
      drift_gain_[j] = h;
      noise_std_[j] = sqrt_eps * std::sqrt(h);
    }
  }
}

StepWorkspace::StepWorkspace(const SimulationSetup& setup)
    : eta(setup.n_modes()),
      reaction(setup.n_modes()),
      control(setup.n_modes()),
      scratch(setup.nonlinearity().scratch_size()) {}

double step(const SimulationSetup& setup, std::span<const double> state,
            std::span<const double> normals, std::span<double> next,
            StepWorkspace& work) {
  const int n = setup.n_modes();
  const auto& cfg = setup.config();
  const double h_eps = cfg.h_scale();
  const double moderate_scale = std::sqrt(cfg.epsilon) * h_eps;  // sqrt(eps) h(eps)
  const double sqrt_dt = std::sqrt(cfg.time_step());

  const auto initial = setup.initial();
  for (int j = 0; j < n; ++j) work.eta[j] = (state[j] - initial[j]) / moderate_scale;

  setup.nonlinearity().apply(state, work.reaction, work.scratch);
  control_eval(setup.policy(), work.eta, h_eps, work.control);

  const auto decay = setup.decay();
  const auto gain = setup.drift_gain();
  const auto noise = setup.noise_std();
  double weight_dot = 0.0;
  double control_norm2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double forcing = work.reaction[j] + moderate_scale * work.control[j];
    next[j] = decay[j] * state[j] + gain[j] * forcing + noise[j] * normals[j];
    weight_dot += work.control[j] * normals[j];
    control_norm2 += work.control[j] * work.control[j];
  }
  return -h_eps * weight_dot * sqrt_dt -
         0.5 * h_eps * h_eps * control_norm2 * cfg.time_step();
}

TrajectoryOutcome run_trajectory(const SimulationSetup& setup, std::uint64_t master_seed,
                                 std::uint64_t trajectory_index, StepWorkspace& work) {
  const int n = setup.n_modes();
  const auto& cfg = setup.config();
  const double moderate_scale = std::sqrt(cfg.epsilon) * cfg.h_scale();
  const double radius2 = cfg.exit_radius * cfg.exit_radius;

  RngStream rng(master_seed, trajectory_index);
  std::vector<double> state(setup.initial().begin(), setup.initial().end());
  std::vector<double> next(n);
  std::vector<double> normals(n);

  TrajectoryOutcome outcome;
  outcome.final_eta.assign(n, 0.0);
  if (cfg.record_path) outcome.path.reserve(cfg.steps);

  for (int k = 0; k < cfg.steps; ++k) {
    for (int j = 0; j < n; ++j) normals[j] = rng.next_normal();
    outcome.log_weight += step(setup, state, normals, next, work);

    double norm2 = 0.0;
    bool finite = true;
    for (int j = 0; j < n; ++j) {
      const double e = (next[j] - setup.initial()[j]) / moderate_scale;
      outcome.final_eta[j] = e;
      norm2 += e * e;
      finite = finite && std::isfinite(next[j]);
    }
    if (!finite) {
      outcome.error = true;
      outcome.exited = false;
      outcome.log_weight = 0.0;
      outcome.estimator_value = 0.0;
      return outcome;
    }
    if (cfg.record_path) outcome.path.push_back(outcome.final_eta);
    state.swap(next);

    if (norm2 >= radius2) {
      outcome.exited = true;
      outcome.exit_step = k + 1;
      break;
    }
  }
  outcome.estimator_value = outcome.exited ? std::exp(outcome.log_weight) : 0.0;
  return outcome;
}

TrajectoryOutcome run_trajectory(const SimulationSetup& setup, std::uint64_t master_seed,
                                 std::uint64_t trajectory_index) {
  StepWorkspace work(setup);
  return run_trajectory(setup, master_seed, trajectory_index, work);
}

}  // namespace mdspde
