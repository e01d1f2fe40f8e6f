#include "mdspde/control.hpp"

#include <algorithm>
#include <cmath>

#include "mdspde/errors.hpp"

namespace mdspde {

namespace {

double mode_projection(const SpectralBasis& lin, int mode, std::span<const double> eta) {
  const auto& vec = lin.lin_eigenvectors[mode];
  double acc = 0.0;
  const std::size_t n = std::min(vec.size(), eta.size());
  for (std::size_t j = 0; j < n; ++j) acc += vec[j] * eta[j];
  return acc;
}

}  // namespace

void ControlPolicy::validate() const {
  if (variant == ControlVariant::none) return;
  if (lin == nullptr || lin->lin_mode_count() < 1) {
    throw config_error("ControlPolicy: linearized spectrum required");
  }
  if (!(exit_radius > 0.0)) throw config_error("ControlPolicy: exit radius must be positive");
  if (variant == ControlVariant::mollified) {
    if (!(kappa > 0.0 && kappa < 1.0)) {
      throw config_error("ControlPolicy: kappa must lie in (0, 1)");
    }
    if (!check_spectral_gap(*lin).strong) {
      throw config_error(
          "ControlPolicy: mollified control forces e_1^f only and needs the "
          "strong spectral gap 3 a1f < a2f");
    }
  }
  if (variant == ControlVariant::asymptotic) {
    if (k0 < 1 || k0 > lin->lin_mode_count()) {
      throw config_error("ControlPolicy: k0 out of range of available modes");
    }
    const auto gap = check_spectral_gap(*lin);
    if (!gap.weak_k0 || *gap.weak_k0 > k0) {
      throw config_error("ControlPolicy: asymptotic control requires weak_k0 <= k0");
    }
  }
}

double rho_eps(const ControlPolicy& policy, std::span<const double> eta, double h_scale) {
  // (F1 - F2)/delta = a1f (h^{-2kappa} - <eta,e1f>^2) h^2 / 2
  const double a1 = policy.lin->lin_eigenvalues[0];
  const double proj = mode_projection(*policy.lin, 0, eta);
  const double h2 = h_scale * h_scale;
  const double x = 0.5 * a1 * (std::pow(h_scale, -2.0 * policy.kappa) - proj * proj) * h2;
  const double rho = 1.0 / (1.0 + std::exp(x));
  return std::clamp(rho, 0.0, 1.0);
}

void control_eval(const ControlPolicy& policy, std::span<const double> eta,
                  double h_scale, std::span<double> u_out) {
  std::fill(u_out.begin(), u_out.end(), 0.0);
  switch (policy.variant) {
    case ControlVariant::none:
      return;
    case ControlVariant::asymptotic: {
      for (int i = 0; i < policy.k0; ++i) {
        const double gain =
            2.0 * policy.lin->lin_eigenvalues[i] * mode_projection(*policy.lin, i, eta);
        const auto& vec = policy.lin->lin_eigenvectors[i];
        for (std::size_t j = 0; j < u_out.size(); ++j) u_out[j] += gain * vec[j];
      }
      return;
    }
    case ControlVariant::mollified: {
      const double gain = 2.0 * policy.lin->lin_eigenvalues[0] *
                          rho_eps(policy, eta, h_scale) *
                          mode_projection(*policy.lin, 0, eta);
      const auto& vec = policy.lin->lin_eigenvectors[0];
      for (std::size_t j = 0; j < u_out.size(); ++j) u_out[j] = gain * vec[j];
      return;
    }
  }
}

double subsolution_value(const ControlPolicy& policy, std::span<const double> eta,
                         double h_scale) {
  const double a1 = policy.lin->lin_eigenvalues[0];
  const double radius2 = policy.exit_radius * policy.exit_radius;
  if (policy.variant == ControlVariant::mollified) {
    const double proj = mode_projection(*policy.lin, 0, eta);
    const double f1 = a1 * (radius2 - proj * proj);
    const double f2 = a1 * (radius2 - std::pow(h_scale, -2.0 * policy.kappa));
    const double delta = 2.0 / (h_scale * h_scale);
    // U^delta = min(F1,F2) - delta log(1 + e^{-|F1-F2|/delta})
    const double lo = std::min(f1, f2);
    const double gap = std::abs(f1 - f2);
    return lo - delta * std::log1p(std::exp(-gap / delta));
  }
  const int k_sum = policy.variant == ControlVariant::asymptotic ? policy.k0 : 1;
  double value = a1 * radius2;
  for (int i = 0; i < k_sum; ++i) {
    const double proj = mode_projection(*policy.lin, i, eta);
    value -= policy.lin->lin_eigenvalues[i] * proj * proj;
  }
  return value;
}

}  // namespace mdspde
