#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mdspde/control.hpp"
#include "mdspde/model.hpp"
#include "mdspde/rng.hpp"

namespace mdspde {

struct SolverConfig {
  int n_modes = 50;          // Galerkin level N
  double horizon = 4.0;      // sampling window T
  int steps = 400;           // time-step count, h_step = horizon/steps
  double epsilon = 0.01;     // noise intensity, in (0, 1)
  double h_exponent = 0.1;   // rho_h in h(eps) = eps^{-rho_h}
  double exit_radius = 1.0;  // L
  std::uint64_t seed = 1;
  bool record_path = false;

  double h_scale() const;          // h(eps)
  double time_step() const { return horizon / steps; }
  double domain_radius() const;    // R = sqrt(eps) h(eps); domain shrinks iff < 1
  void validate() const;
};

struct TrajectoryOutcome {
  bool exited = false;
  int exit_step = -1;                     // first step k with ||eta_k|| >= L; -1 if none
  double log_weight = 0.0;                // ln dP/dP^eps accumulated up to the stopped step
  double estimator_value = 0.0;           // exp(log_weight) * 1{exited}
  bool error = false;                     // non-finite state; counted as non-exit, weight 0
  std::vector<double> final_eta;          // moderate-deviation coordinates at stop
  std::vector<std::vector<double>> path;  // eta after each step, when record_path
};

// Everything a trajectory needs, precomputed once per campaign: per-mode
// semigroup factors, variance-matched noise scales, the initial state, and
// non-owning references to the reaction term and control.
class SimulationSetup {
 public:
  SimulationSetup(const NonlinearityOp& nonlinearity, const SpectralBasis& basis,
                  const ControlPolicy& policy, const SolverConfig& config,
                  std::span<const double> initial_coeffs);

  const SolverConfig& config() const { return config_; }
  const ControlPolicy& policy() const { return policy_; }
  const NonlinearityOp& nonlinearity() const { return *nonlinearity_; }
  std::span<const double> initial() const { return initial_; }
  int n_modes() const { return config_.n_modes; }

  std::span<const double> decay() const { return decay_; }            // e^{-a_j h}
  std::span<const double> drift_gain() const { return drift_gain_; }  // (1-e^{-a_j h})/a_j
  std::span<const double> noise_std() const { return noise_std_; }    // per-mode Gaussian std

 private:
  const NonlinearityOp* nonlinearity_;
  const SpectralBasis* basis_;
  ControlPolicy policy_;
  SolverConfig config_;
  std::vector<double> initial_;
  std::vector<double> decay_;
  std::vector<double> drift_gain_;
  std::vector<double> noise_std_;
};

// Per-thread scratch for the stepping kernel.
struct StepWorkspace {
  explicit StepWorkspace(const SimulationSetup& setup);
  std::vector<double> eta;
  std::vector<double> reaction;
  std::vector<double> control;
  std::vector<double> scratch;
};

// One exponential-Euler step (explicit Euler on modes with a_j = 0):
//   next_j = e^{-a_j h} state_j + (1-e^{-a_j h})/a_j (f_j + sqrt(eps) h(eps) u_j)
//            + sqrt(eps) sqrt((1-e^{-2 a_j h})/(2 a_j)) w_j,
// with the control evaluated at the left endpoint. Returns the log-weight
// increment -h(eps) sum_j u_j sqrt(h) w_j - h(eps)^2/2 ||u||^2 h.
double step(const SimulationSetup& setup, std::span<const double> state,
            std::span<const double> normals, std::span<double> next,
            StepWorkspace& work);

// Simulates one trajectory from the equilibrium, stopping at the first step
// where ||eta||_H >= L (Parseval over the Galerkin modes) or at the horizon.
TrajectoryOutcome run_trajectory(const SimulationSetup& setup, std::uint64_t master_seed,
                                 std::uint64_t trajectory_index, StepWorkspace& work);
TrajectoryOutcome run_trajectory(const SimulationSetup& setup, std::uint64_t master_seed,
                                 std::uint64_t trajectory_index);

}  // namespace mdspde
