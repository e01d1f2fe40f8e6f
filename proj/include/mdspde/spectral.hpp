#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace mdspde {

struct ModelSpec;

enum class BoundaryCondition { neumann, periodic, dirichlet };

// Spectral-gap checks for the linearized operator -(A + DF(x*)).
struct GapReport {
  bool strong = false;            // 3 a1f < a2f
  bool relaxed = false;           // 2 a1f < a2f
  std::optional<int> weak_k0;     // smallest k0 >= 1 with 3 a1f < a_{k0+1}f and a1f < a2f
};

// Eigendata of the (negative) Laplacian under a boundary condition, plus the
// spectrum of the linearized operator -(A + DF(x*)) once filled in.
//
// Laplacian eigenvalues are nondecreasing; eigenfunctions are L2-orthonormal
// on (0, ell). Linearized eigenvectors are stored as unit-norm coefficient
// vectors over the Laplacian basis. Immutable after construction; shareable
// across threads.
struct SpectralBasis {
  BoundaryCondition bc = BoundaryCondition::neumann;
  double ell = 0.0;
  int n_modes = 0;  // Galerkin level N

  std::vector<double> lap_eigenvalues;                 // a_j, size N
  std::vector<double> lin_eigenvalues;                 // a_n^f, size lin_mode_count()
  std::vector<std::vector<double>> lin_eigenvectors;   // each of size N, unit norm

  // e_j(xi) for 1-based mode index j
  double eigenfunction(int index, double xi) const;

  int lin_mode_count() const { return static_cast<int>(lin_eigenvalues.size()); }
};

// Laplacian eigenpairs up to Galerkin level n_modes (>= 2), interval length ell > 0.
SpectralBasis laplacian_spectrum(BoundaryCondition bc, double ell, int n_modes);

// Fills in the linearized spectrum for the given reaction model.
// Neumann/periodic: eigenvectors are canonical Laplacian modes with shifted
// eigenvalues. Allen-Cahn Dirichlet: the two explicit eigenpairs built from
// sn*dn and sn*cn, projected onto the sine basis.
SpectralBasis linearized_spectrum(const ModelSpec& model, const SpectralBasis& basis);

GapReport check_spectral_gap(const SpectralBasis& basis);

struct ProjectionResult {
  std::vector<double> coefficients;  // c_j = <func, e_j>, size N
  double residual;                   // grid L2 norm of func - sum c_j e_j
};

// Sine-basis projection by composite trapezoid quadrature on n_quad uniform
// panels (grid points i*ell/n_quad, i = 1..n_quad-1; the endpoint terms vanish).
// Requires bc == dirichlet and n_quad >= 8N.
ProjectionResult dirichlet_project(const std::function<double(double)>& func,
                                   const SpectralBasis& basis, int n_quad);

}  // namespace mdspde
