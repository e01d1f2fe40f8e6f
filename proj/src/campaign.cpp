#include "mdspde/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "mdspde/errors.hpp"

namespace mdspde {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Neumaier compensated sum; fixed evaluation order keeps it deterministic.
double stable_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

CampaignResult reduce_campaign(const std::vector<double>& estimator_values,
                               std::int64_t n_exited, std::int64_t n_errors,
                               double h_scale) {
  const std::int64_t n_samples = static_cast<std::int64_t>(estimator_values.size());
  CampaignResult result;
  result.n_samples = n_samples;
  result.n_exited = n_exited;
  result.n_errors = n_errors;
  result.mean = stable_sum(estimator_values) / static_cast<double>(n_samples);

  std::vector<double> centered2(n_samples);
  std::vector<double> squares(n_samples);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double d = estimator_values[i] - result.mean;
    centered2[i] = d * d;
    squares[i] = estimator_values[i] * estimator_values[i];
  }
  result.second_moment = stable_sum(squares) / static_cast<double>(n_samples);
  result.sample_std =
      n_samples > 1
          ? std::sqrt(stable_sum(centered2) / static_cast<double>(n_samples - 1))
          : 0.0;
  if (result.n_exited > 0 && result.mean > 0.0) {
    result.rel_error_per_sample = result.sample_std / result.mean;
  }
  if (result.second_moment > 0.0) {
    result.empirical_decay = -std::log(result.second_moment) / (h_scale * h_scale);
  }
  return result;
}

CampaignResult run_campaign(const SimulationSetup& setup, std::int64_t n_samples,
                            int threads) {
  if (n_samples < 1) throw config_error("run_campaign: need at least one trajectory");
  const auto t0 = std::chrono::steady_clock::now();
  const int n_threads = resolve_threads(threads);

  std::vector<double> values(n_samples);
  std::vector<std::uint8_t> exited(n_samples, 0);
  std::vector<std::uint8_t> errored(n_samples, 0);

  std::atomic<std::int64_t> cursor{0};
  auto worker = [&]() {
    StepWorkspace work(setup);
    for (;;) {
      const std::int64_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_samples) break;
      const auto outcome = run_trajectory(setup, setup.config().seed,
                                          static_cast<std::uint64_t>(i), work);
      values[i] = outcome.estimator_value;
      exited[i] = outcome.exited ? 1 : 0;
      errored[i] = outcome.error ? 1 : 0;
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // ordered reduction over trajectory indices
  std::int64_t n_exited = 0;
  std::int64_t n_errors = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    n_exited += exited[i];
    n_errors += errored[i];
  }
  CampaignResult result =
      reduce_campaign(values, n_exited, n_errors, setup.config().h_scale());

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

CampaignResult run_campaign(const ModelSpec& model, const SpectralBasis& basis,
                            const ControlPolicy& policy, const SolverConfig& config,
                            std::int64_t n_samples, int threads) {
  const Transform transform(basis);
  const SpectralNonlinearity nonlinearity(model, transform);
  const auto eq = equilibrium(model, basis, transform);
  const SimulationSetup setup(nonlinearity, basis, policy, config, eq.coefficients);
  return run_campaign(setup, n_samples, threads);
}

std::vector<SweepRow> sweep(const ModelSpec& model, const SpectralBasis& basis,
                            const ControlPolicy& policy, const SolverConfig& config_template,
                            int steps_per_unit, const std::vector<double>& eps_grid,
                            const std::vector<double>& horizon_grid,
                            std::int64_t n_samples, int threads) {
  if (eps_grid.empty() || horizon_grid.empty()) {
    throw config_error("sweep: epsilon and horizon grids must be non-empty");
  }
  const Transform transform(basis);
  const SpectralNonlinearity nonlinearity(model, transform);
  const auto eq = equilibrium(model, basis, transform);

  std::vector<SweepRow> rows;
  rows.reserve(eps_grid.size() * horizon_grid.size());
  for (const double eps : eps_grid) {
    for (const double horizon : horizon_grid) {
      SolverConfig config = config_template;
      config.epsilon = eps;
      config.horizon = horizon;
      config.steps = std::max(1, static_cast<int>(std::ceil(steps_per_unit * horizon)));
      const SimulationSetup setup(nonlinearity, basis, policy, config, eq.coefficients);
      SweepRow row;
      row.epsilon = eps;
      row.horizon = horizon;
      row.moderate_radius = config.domain_radius();
      row.result = run_campaign(setup, n_samples, threads);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

}  // namespace

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool paper_style) {
  const char* missing = paper_style ? "--" : "";
  out << "epsilon,R,T,estimate,rel_error_per_sample,second_moment,empirical_decay,"
         "n_exited,n_errors,M,wall_time_s\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    out << sci(row.epsilon) << ',' << sci(row.moderate_radius) << ',' << sci(row.horizon)
        << ',';
    if (r.n_exited > 0) {
      out << sci(r.mean);
    } else {
      out << missing;
    }
    out << ',';
    out << (r.rel_error_per_sample ? sci(*r.rel_error_per_sample) : missing) << ',';
    if (r.second_moment > 0.0) {
      out << sci(r.second_moment);
    } else {
      out << missing;
    }
    out << ',';
    out << (r.empirical_decay ? sci(*r.empirical_decay) : missing) << ',';
    out << r.n_exited << ',' << r.n_errors << ',' << r.n_samples << ',' << sci(r.wall_time_s)
        << '\n';
  }
}

}  // namespace mdspde
