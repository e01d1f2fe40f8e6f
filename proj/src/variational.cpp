#include "mdspde/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdspde {

namespace {

// sinh(a t)/sinh(a tau) without overflow for large a*tau
double sinh_ratio(double a, double t, double tau) {
  if (a == 0.0) return t / tau;
  return std::exp(a * (t - tau)) * std::expm1(-2.0 * a * t) / std::expm1(-2.0 * a * tau);
}

}  // namespace

std::vector<double> minimizer_eval(const MinimizerPath& path, double t) {
  if (!(t >= 0.0 && t <= path.tau)) {
    throw std::domain_error("minimizer_eval: time outside [0, tau]");
  }
  std::vector<double> out(path.terminal.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = path.terminal[k] * sinh_ratio(path.lin_eigenvalues[k], t, path.tau);
  }
  return out;
}

std::vector<double> lambda_weights(std::span<const double> lin_eigenvalues, int k0,
                                   double tau) {
  if (!(tau > 0.0)) throw std::domain_error("lambda_weights: tau must be positive");
  std::vector<double> lambda(lin_eigenvalues.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const double a = lin_eigenvalues[j];
    const double boundary = (static_cast<int>(j) < k0) ? a : 0.0;
    lambda[j] = boundary - a / std::expm1(-2.0 * a * tau);
  }
  return lambda;
}

ExitDirection exit_direction(std::span<const double> lin_eigenvalues, int k0,
                             double horizon, double exit_radius) {
  if (!(horizon > 0.0)) throw std::domain_error("exit_direction: horizon must be positive");
  const auto lambda = lambda_weights(lin_eigenvalues, k0, horizon);

  ExitDirection dir;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] < best) {
      best = lambda[j];
      dir.index = static_cast<int>(j) + 1;
    }
  }
  dir.minimal_value = exit_radius * exit_radius * best;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (std::abs(lambda[j] - best) <= 1e-12) dir.tied.push_back(static_cast<int>(j) + 1);
  }
  return dir;
}

double t_star(double a1, double a2) {
  if (!(a1 > 0.0 && a2 > a1)) {
    throw std::domain_error("t_star: need 0 < a1 < a2");
  }
  if (a2 > 2.0 * a1) {
    throw std::domain_error("t_star: a2 > 2 a1 is the strong regime, no crossover");
  }
  if (a2 == 2.0 * a1) return std::numeric_limits<double>::infinity();
  return -std::log(1.0 - a2 / (2.0 * a1)) / (2.0 * a2);
}

DecayRates decay_rates(double a1, double exit_radius, double horizon) {
  if (!(a1 > 0.0 && exit_radius > 0.0 && horizon > 0.0)) {
    throw std::domain_error("decay_rates: a1, L, T must be positive");
  }
  const double u0 = a1 * exit_radius * exit_radius;
  const double g_T = -u0 / std::expm1(-2.0 * a1 * horizon);
  return {g_T, u0, 2.0 * g_T, u0 + g_T};
}

double action_functional(const std::vector<std::vector<double>>& path_samples,
                         std::span<const double> lin_eigenvalues, int k_modes,
                         double total_time) {
  const std::size_t n = path_samples.size();
  if (n < 3) throw std::domain_error("action_functional: need at least 3 time samples");
  const double dt = total_time / static_cast<double>(n - 1);
  double action = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (int k = 0; k < k_modes; ++k) {
      const double rate = (path_samples[i + 1][k] - path_samples[i][k]) / dt;
      const double mid = 0.5 * (path_samples[i + 1][k] + path_samples[i][k]);
      const double v = rate + lin_eigenvalues[k] * mid;
      action += v * v;
    }
  }
  return 0.5 * action * dt;
}

double quasipotential(const SpectralBasis& lin, std::span<const double> eta) {
  double value = 0.0;
  for (int k = 0; k < lin.lin_mode_count(); ++k) {
    const auto& vec = lin.lin_eigenvectors[k];
    double proj = 0.0;
    const std::size_t n = std::min(vec.size(), eta.size());
    for (std::size_t j = 0; j < n; ++j) proj += vec[j] * eta[j];
    value += lin.lin_eigenvalues[k] * proj * proj;
  }
  return value;
}

}  // namespace mdspde
