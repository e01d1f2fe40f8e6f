#pragma once

#include <span>

#include "mdspde/spectral.hpp"

namespace mdspde {

enum class ControlVariant { none, asymptotic, mollified };

// Change of measure applied to the moderate-deviation process, expressed in
// Laplacian-basis coordinates through the stored linearized eigenvectors.
//
//   none:            u = 0 (standard Monte Carlo)
//   asymptotic(k0):  u = 2 sum_{i<=k0} a_i^f <eta, e_i^f> e_i^f
//   mollified:       u = 2 a_1^f rho(eta) <eta, e_1^f> e_1^f,
//                    rho the soft-min weight between the projected
//                    quasipotential subsolution F1 and the constant
//                    subsolution F2, mollification delta = 2/h^2(eps)
//
// The basis pointer is non-owning; the caller keeps it alive. Evaluation is
// pure and thread-safe.
struct ControlPolicy {
  ControlVariant variant = ControlVariant::none;
  int k0 = 1;               // asymptotic only
  double exit_radius = 1.0; // L
  double kappa = 0.9;       // mollified neighborhood exponent, in (0,1)
  const SpectralBasis* lin = nullptr;

  void validate() const;
};

// Soft-min weight rho = e^{-F1/delta} / (e^{-F1/delta} + e^{-F2/delta}),
// evaluated in log space; clamped to [0,1]. Requires the mollified variant.
double rho_eps(const ControlPolicy& policy, std::span<const double> eta, double h_scale);

// Control vector in Laplacian coordinates; u_out.size() == eta.size().
void control_eval(const ControlPolicy& policy, std::span<const double> eta,
                  double h_scale, std::span<double> u_out);

// Subsolution value: a1f L^2 - sum_{i<=k0} a_i^f <eta,e_i^f>^2 (asymptotic),
// or the log-sum-exp mollification U^delta (mollified).
double subsolution_value(const ControlPolicy& policy, std::span<const double> eta,
                         double h_scale);

}  // namespace mdspde
