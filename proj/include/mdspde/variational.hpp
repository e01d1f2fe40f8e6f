#pragma once

#include <span>
#include <vector>

#include "mdspde/spectral.hpp"

namespace mdspde {

// Energy-minimizing path from 0 to a boundary point z (coordinates over the
// linearized eigenbasis, ||z|| = L) hitting at time tau:
//   y_k(t) = z_k sinh(a_k^f t)/sinh(a_k^f tau).
struct MinimizerPath {
  std::vector<double> terminal;          // z over the linearized eigenbasis
  double tau = 1.0;                      // hitting time, > 0
  std::vector<double> lin_eigenvalues;   // a_k^f, one per coordinate
};

// Path value at time t in [0, tau]; the sinh ratio is evaluated as
// e^{a(t-tau)} (1-e^{-2at})/(1-e^{-2a tau}) so large a*tau cannot overflow.
std::vector<double> minimizer_eval(const MinimizerPath& path, double t);

// Weights of the quadratic form I(phi*_{z,tau}) = sum_j lambda_{k0,j} z_j^2:
//   lambda_{k0,j}(tau) = a_j^f [j <= k0] + a_j^f/(1 - e^{-2 a_j^f tau}).
std::vector<double> lambda_weights(std::span<const double> lin_eigenvalues, int k0,
                                   double tau);

struct ExitDirection {
  int index = 1;                 // 1-based argmin of lambda, smallest on ties
  double minimal_value = 0.0;    // I* = L^2 lambda_{j*}(T); optimal tau is T
  std::vector<int> tied;         // all indices within 1e-12 of the minimum
};

// Asymptotic exit direction of the limiting variational problem at horizon T.
ExitDirection exit_direction(std::span<const double> lin_eigenvalues, int k0,
                             double horizon, double exit_radius = 1.0);

// Crossover horizon T* = -ln(1 - a2/(2 a1)) / (2 a2), defined for
// 0 < a1 < a2 <= 2 a1; returns +inf at the boundary a2 = 2 a1.
double t_star(double a1, double a2);

struct DecayRates {
  double g_T;       // a1 L^2 / (1 - e^{-2 a1 T}), minimal action to exit by T
  double u0;        // a1 L^2, the T -> inf limit
  double optimal;   // 2 g_T, best possible second-moment decay rate
  double scheme;    // u0 + g_T, the rate the scheme attains
};

DecayRates decay_rates(double a1, double exit_radius, double horizon);

// Discretized action of a sampled path (uniform time grid over [0, total_time],
// path[i] holds the first k_modes coordinates at sample i):
//   S = 1/2 sum_i sum_k ((dphi_k/dt) + a_k^f phibar_k)^2 dt
// with midpoint phibar; second-order accurate in the grid spacing.
double action_functional(const std::vector<std::vector<double>>& path_samples,
                         std::span<const double> lin_eigenvalues, int k_modes,
                         double total_time);

// Quasipotential V(eta) = sum_k a_k^f <eta, e_k^f>^2 over the available
// linearized modes; eta in Laplacian coordinates.
double quasipotential(const SpectralBasis& lin, std::span<const double> eta);

}  // namespace mdspde
