#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mdspde/solver.hpp"

namespace mdspde {

struct CampaignResult {
  std::int64_t n_samples = 0;  // M
  double mean = 0.0;           // probability estimate
  double sample_std = 0.0;     // sample std of the per-trajectory estimator values (M-1 divisor)
  std::optional<double> rel_error_per_sample;  // sample_std / mean; absent when nothing exited
  double second_moment = 0.0;  // mean of squared estimator values, estimates Q^eps(u)
  std::int64_t n_exited = 0;
  std::int64_t n_errors = 0;
  double wall_time_s = 0.0;
  std::optional<double> empirical_decay;  // -log(second_moment)/h^2(eps)
};

// Deterministic fixed-order reduction of per-trajectory estimator values into
// campaign statistics. h_scale is h(eps) for the empirical decay diagnostic.
CampaignResult reduce_campaign(const std::vector<double>& estimator_values,
                               std::int64_t n_exited, std::int64_t n_errors,
                               double h_scale);

// Runs M independent trajectories with per-index derived RNG streams and a
// fixed-order reduction; the statistical fields are bit-identical for any
// thread count. threads <= 0 selects hardware concurrency.
CampaignResult run_campaign(const SimulationSetup& setup, std::int64_t n_samples,
                            int threads);
CampaignResult run_campaign(const ModelSpec& model, const SpectralBasis& basis,
                            const ControlPolicy& policy, const SolverConfig& config,
                            std::int64_t n_samples, int threads);

struct SweepRow {
  double epsilon = 0.0;
  double horizon = 0.0;
  double moderate_radius = 0.0;  // R = sqrt(eps) h(eps)
  CampaignResult result;
};

// One campaign per (epsilon, horizon) cell; steps scale as steps_per_unit * T.
std::vector<SweepRow> sweep(const ModelSpec& model, const SpectralBasis& basis,
                            const ControlPolicy& policy, const SolverConfig& config_template,
                            int steps_per_unit, const std::vector<double>& eps_grid,
                            const std::vector<double>& horizon_grid,
                            std::int64_t n_samples, int threads);

// CSV schema:
// epsilon,R,T,estimate,rel_error_per_sample,second_moment,empirical_decay,
// n_exited,n_errors,M,wall_time_s
// Floats use scientific notation with 6 significant digits; missing values are
// empty fields, or "--" in paper style.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool paper_style);

}  // namespace mdspde
