#pragma once

#include <string>
#include <vector>

#include "mdspde/campaign.hpp"

namespace mdspde {

// Full run configuration. Defaults reproduce the reference setup:
// Allen-Cahn, Neumann, ell = 1, N = 50, mollified control with kappa = 0.9,
// h(eps) = eps^{-0.1}, L = 1, M = 5e4, and the standard epsilon/horizon grids.
struct RunConfig {
  ModelSpec model;

  int n_modes = 50;
  int steps_per_unit = 100;  // so the time step is <= 0.01
  double exit_radius = 1.0;
  std::uint64_t seed = 1;

  ControlVariant control = ControlVariant::mollified;
  double kappa = 0.9;
  int k0 = 1;
  double h_exponent = 0.1;

  std::int64_t n_samples = 50000;
  int threads = 0;  // 0: MDSPDE_THREADS env or hardware concurrency
  std::vector<double> eps_grid = {1e-2, 4e-3, 2e-3, 8e-4, 4e-4, 1e-4, 6e-5, 8e-6, 4e-6};
  std::vector<double> horizon_grid = {1, 2, 3, 4, 6, 8};

  std::string out_path;      // empty: stdout
  bool paper_style = false;  // render missing CSV values as "--"
  bool record_path = false;

  // Parses a JSON document; unknown keys are rejected. Throws config_error
  // with a line number on malformed input or invariant violations.
  static RunConfig from_json_text(const std::string& text);

  // Re-validates all component invariants, including the spectral-gap
  // requirements of the selected control (builds the spectra to do so).
  void validate() const;

  // Configuration-level diagnostics: sqrt(eps) h^3(eps) not decreasing along
  // the epsilon grid (pre-asymptotic scaling condition), R >= 1 cells.
  std::vector<std::string> warnings() const;

  SolverConfig solver_config(double epsilon, double horizon) const;
  int resolved_threads() const;
};

}  // namespace mdspde
