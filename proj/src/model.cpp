#include "mdspde/model.hpp"

#include <cmath>

#include "mdspde/errors.hpp"
#include "mdspde/specfun.hpp"

namespace mdspde {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void ModelSpec::validate() const {
  if (kind == ReactionKind::quintic) {
    if (!(mu > -1.0 && mu <= 0.0)) {
      throw config_error("ModelSpec: quintic mu must lie in (-1, 0]");
    }
    if (bc == BoundaryCondition::dirichlet) {
      throw config_error("ModelSpec: quintic model supports Neumann/periodic only");
    }
  }
  if (kind == ReactionKind::allen_cahn && bc == BoundaryCondition::dirichlet &&
      !(ell > kPi)) {
    throw config_error(
        "ModelSpec: Allen-Cahn Dirichlet equilibria require ell > pi");
  }
}

double reaction(const ModelSpec& model, double x) {
  if (model.kind == ReactionKind::allen_cahn) {
    return x - x * x * x;
  }
  const double x2 = x * x;
  return x + model.mu * x2 * x - (model.mu + 1.0) * x2 * x2 * x;
}

Transform::Transform(const SpectralBasis& basis, int grid_size)
    : n_modes_(basis.n_modes), weight_(basis.ell / grid_size) {
  if (grid_size < 2 * basis.n_modes + 1) {
    throw config_error("Transform: grid size below 2N+1 would alias the nonlinearity");
  }
  switch (basis.bc) {
    case BoundaryCondition::neumann:
      nodes_.resize(grid_size);
      for (int i = 0; i < grid_size; ++i) nodes_[i] = (i + 0.5) * basis.ell / grid_size;
      break;
    case BoundaryCondition::periodic:
      nodes_.resize(grid_size);
      for (int i = 0; i < grid_size; ++i) nodes_[i] = i * basis.ell / grid_size;
      break;
    case BoundaryCondition::dirichlet:
      nodes_.resize(grid_size - 1);
      for (int i = 1; i < grid_size; ++i) nodes_[i - 1] = i * basis.ell / grid_size;
      break;
  }

  const int g = node_count();
  synth_rows_.resize(static_cast<std::size_t>(g) * n_modes_);
  analysis_rows_.resize(static_cast<std::size_t>(n_modes_) * g);
  for (int i = 0; i < g; ++i) {
    for (int k = 0; k < n_modes_; ++k) {
      const double v = basis.eigenfunction(k + 1, nodes_[i]);
      synth_rows_[static_cast<std::size_t>(i) * n_modes_ + k] = v;
      analysis_rows_[static_cast<std::size_t>(k) * g + i] = v;
    }
  }
}

Transform::Transform(const SpectralBasis& basis) : Transform(basis, 4 * basis.n_modes) {}

void Transform::synthesize(std::span<const double> coeffs, std::span<double> grid_out) const {
  const int g = node_count();
  for (int i = 0; i < g; ++i) {
    const double* row = &synth_rows_[static_cast<std::size_t>(i) * n_modes_];
    double acc = 0.0;
    for (int k = 0; k < n_modes_; ++k) acc += coeffs[k] * row[k];
    grid_out[i] = acc;
  }
}

void Transform::analyze(std::span<const double> grid_in, std::span<double> coeffs_out) const {
  const int g = node_count();
  for (int k = 0; k < n_modes_; ++k) {
    const double* row = &analysis_rows_[static_cast<std::size_t>(k) * g];
    double acc = 0.0;
    for (int i = 0; i < g; ++i) acc += grid_in[i] * row[i];
    coeffs_out[k] = weight_ * acc;
  }
}

Equilibrium equilibrium(const ModelSpec& model, const SpectralBasis& basis,
                        const Transform& transform) {
  model.validate();
  if (model.bc != basis.bc || model.ell != basis.ell) {
    throw config_error("equilibrium: model and basis disagree on bc/ell");
  }
  const double sign = model.sign == EquilibriumSign::plus ? 1.0 : -1.0;

  Equilibrium eq;
  eq.coefficients.assign(basis.n_modes, 0.0);
  eq.grid_values.assign(transform.node_count(), sign);

  if (basis.bc != BoundaryCondition::dirichlet) {
    // constant +-1: single coefficient on the constant mode e_1 = ell^{-1/2}
    eq.coefficients[0] = sign * std::sqrt(basis.ell);
    return eq;
  }

  const double amp = specfun::inverse_M(basis.ell / 2.0);
  const double m = amp * amp / (2.0 - amp * amp);
  const double s = std::sqrt(1.0 - amp * amp / 2.0);
  for (int i = 0; i < transform.node_count(); ++i) {
    eq.grid_values[i] =
        sign * amp * specfun::jacobi_elliptic(transform.nodes()[i] * s, m).sn;
  }
  transform.analyze(eq.grid_values, eq.coefficients);
  return eq;
}

void nonlinearity_in_modes(const ModelSpec& model, const Transform& transform,
                           std::span<const double> state, std::span<double> out,
                           std::span<double> scratch) {
  transform.synthesize(state, scratch);
  if (model.kind == ReactionKind::allen_cahn) {
    for (auto& v : scratch) v = v - v * v * v;
  } else {
    const double mu = model.mu;
    const double mu1 = mu + 1.0;
    for (auto& v : scratch) {
      const double v2 = v * v;
      v = v + mu * v2 * v - mu1 * v2 * v2 * v;
    }
  }
  transform.analyze(scratch, out);
}

std::vector<double> nonlinearity_in_modes(const ModelSpec& model, const Transform& transform,
                                          std::span<const double> state) {
  std::vector<double> out(transform.n_modes());
  std::vector<double> scratch(transform.node_count());
  nonlinearity_in_modes(model, transform, state, out, scratch);
  return out;
}

}  // namespace mdspde
