#pragma once

#include <span>
#include <vector>

#include "mdspde/spectral.hpp"

namespace mdspde {

enum class ReactionKind { allen_cahn, quintic };
enum class EquilibriumSign { plus, minus };

// Reaction model: which double-well nonlinearity, boundary condition, interval
// length, and which stable equilibrium the process starts from.
struct ModelSpec {
  ReactionKind kind = ReactionKind::allen_cahn;
  double mu = -0.5;  // quintic coefficient, in (-1, 0]
  BoundaryCondition bc = BoundaryCondition::neumann;
  double ell = 1.0;
  EquilibriumSign sign = EquilibriumSign::plus;

  // growth exponent of the nonlinearity; recorded for documentation only
  int growth_exponent() const { return kind == ReactionKind::allen_cahn ? 3 : 5; }

  // shift f'(x*) for the constant equilibria x* = +-1 (Neumann/periodic)
  double linearization_shift() const {
    return kind == ReactionKind::allen_cahn ? 2.0 : 2.0 * mu + 4.0;
  }

  void validate() const;
};

// pointwise reaction f(x)
double reaction(const ModelSpec& model, double x);

// Maps coefficient vectors to a physical quadrature grid and back. The grid is
// chosen per boundary condition so the discrete transform pair is exactly
// orthonormal and the quadrature integrates products of basis modes exactly:
// midpoints for Neumann, left endpoints for periodic, interior points for
// Dirichlet. grid_size >= 4N keeps quintic nonlinearities of band-limited
// states alias-free under truncation.
class Transform {
 public:
  Transform(const SpectralBasis& basis, int grid_size);
  explicit Transform(const SpectralBasis& basis);  // grid_size = 4N

  int n_modes() const { return n_modes_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  double quadrature_weight() const { return weight_; }

  // grid_out[i] = sum_k coeffs[k] e_k(xi_i); grid_out.size() == node_count()
  void synthesize(std::span<const double> coeffs, std::span<double> grid_out) const;
  // coeffs_out[k] = weight * sum_i grid_in[i] e_k(xi_i)
  void analyze(std::span<const double> grid_in, std::span<double> coeffs_out) const;

 private:
  int n_modes_;
  double weight_;
  std::vector<double> nodes_;
  std::vector<double> synth_rows_;    // [node][mode]
  std::vector<double> analysis_rows_; // [mode][node]
};

struct Equilibrium {
  std::vector<double> coefficients;  // over the Laplacian basis, size N
  std::vector<double> grid_values;   // x*(xi_i) on the transform grid
};

// Stable equilibrium of the zero-noise dynamics. Constant +-1 for
// Neumann/periodic; the sn-arch profile for Allen-Cahn Dirichlet (requires
// ell > pi, else no nontrivial equilibrium exists).
Equilibrium equilibrium(const ModelSpec& model, const SpectralBasis& basis,
                        const Transform& transform);

// Galerkin coefficients of the Nemytskii operator: <P_N F(sum c_j e_j), e_k>.
// scratch must have node_count() entries.
void nonlinearity_in_modes(const ModelSpec& model, const Transform& transform,
                           std::span<const double> state, std::span<double> out,
                           std::span<double> scratch);
std::vector<double> nonlinearity_in_modes(const ModelSpec& model, const Transform& transform,
                                          std::span<const double> state);

// Reaction-term evaluation used by the trajectory solver. Implementations must
// be safe to call concurrently given distinct scratch buffers.
class NonlinearityOp {
 public:
  virtual ~NonlinearityOp() = default;
  virtual int scratch_size() const = 0;
  virtual void apply(std::span<const double> state, std::span<double> out,
                     std::span<double> scratch) const = 0;
};

class SpectralNonlinearity final : public NonlinearityOp {
 public:
  SpectralNonlinearity(const ModelSpec& model, const Transform& transform)
      : model_(model), transform_(&transform) {}
  int scratch_size() const override { return transform_->node_count(); }
  void apply(std::span<const double> state, std::span<double> out,
             std::span<double> scratch) const override {
    nonlinearity_in_modes(model_, *transform_, state, out, scratch);
  }

 private:
  ModelSpec model_;
  const Transform* transform_;
};

// f == 0; the solver then integrates the plain linear/OU dynamics.
class ZeroNonlinearity final : public NonlinearityOp {
 public:
  int scratch_size() const override { return 0; }
  void apply(std::span<const double>, std::span<double> out, std::span<double>) const override {
    for (auto& v : out) v = 0.0;
  }
};

}  // namespace mdspde
