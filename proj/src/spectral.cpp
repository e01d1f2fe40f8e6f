#include "mdspde/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdspde/errors.hpp"
#include "mdspde/model.hpp"
#include "mdspde/specfun.hpp"

namespace mdspde {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double SpectralBasis::eigenfunction(int index, double xi) const {
  if (index < 1 || index > n_modes) {
    throw std::domain_error("SpectralBasis::eigenfunction: mode index out of range");
  }
  switch (bc) {
    case BoundaryCondition::neumann: {
      const int n = index - 1;
      if (n == 0) return 1.0 / std::sqrt(ell);
      return std::sqrt(2.0 / ell) * std::cos(n * kPi * xi / ell);
    }
    case BoundaryCondition::periodic: {
      if (index == 1) return 1.0 / std::sqrt(ell);
      // pairs ordered (+n, -n); unit normalization needs 1/sqrt(ell)
      const int n = index / 2;
      const double arg = 2.0 * n * kPi * xi / ell;
      const double s = (index % 2 == 0) ? 1.0 : -1.0;
      return (s * std::sin(arg) + std::cos(arg)) / std::sqrt(ell);
    }
    case BoundaryCondition::dirichlet:
      return std::sqrt(2.0 / ell) * std::sin(index * kPi * xi / ell);
  }
  return 0.0;
}

SpectralBasis laplacian_spectrum(BoundaryCondition bc, double ell, int n_modes) {
  if (!(ell > 0.0)) throw config_error("laplacian_spectrum: ell must be positive");
  if (n_modes < 2) throw config_error("laplacian_spectrum: need at least 2 modes");

  SpectralBasis basis;
  basis.bc = bc;
  basis.ell = ell;
  basis.n_modes = n_modes;
  basis.lap_eigenvalues.resize(n_modes);
  for (int j = 1; j <= n_modes; ++j) {
    double value = 0.0;
    switch (bc) {
      case BoundaryCondition::neumann: {
        const int n = j - 1;
        value = (n * kPi / ell) * (n * kPi / ell);
        break;
      }
      case BoundaryCondition::periodic: {
        const int n = j / 2;
        value = (2.0 * n * kPi / ell) * (2.0 * n * kPi / ell);
        break;
      }
      case BoundaryCondition::dirichlet:
        value = (j * kPi / ell) * (j * kPi / ell);
        break;
    }
    basis.lap_eigenvalues[j - 1] = value;
  }
  return basis;
}

namespace {

std::vector<double> unit_vector(int n, int index) {
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return v;
}

void fill_shifted_spectrum(SpectralBasis& out, double shift) {
  const int n = out.n_modes;
  out.lin_eigenvalues.resize(n);
  out.lin_eigenvectors.clear();
  out.lin_eigenvectors.reserve(n);
  for (int j = 0; j < n; ++j) {
    out.lin_eigenvalues[j] = shift + out.lap_eigenvalues[j];
    out.lin_eigenvectors.push_back(unit_vector(n, j));
  }
}

// Dirichlet Allen-Cahn: the two explicit eigenpairs of the linearization
// around the sn-arch equilibrium, a = M^{-1}(ell/2):
//   a1f = (3/2) a^2   with eigenfunction  sn(xi*s, m) dn(xi*s, m)
//   a2f = (3/2)(2-a^2) with eigenfunction sn(xi*s, m) cn(xi*s, m)
// where s = sqrt(1 - a^2/2), m = a^2/(2-a^2).
void fill_dirichlet_ac_spectrum(SpectralBasis& out) {
  const double amp = specfun::inverse_M(out.ell / 2.0);
  const double m = amp * amp / (2.0 - amp * amp);
  const double s = std::sqrt(1.0 - amp * amp / 2.0);

  out.lin_eigenvalues = {1.5 * amp * amp, 1.5 * (2.0 - amp * amp)};
  out.lin_eigenvectors.clear();

  const int n_quad = 16 * out.n_modes;
  const auto project_normalized = [&](auto&& raw) {
    auto proj = dirichlet_project(raw, out, n_quad);
    double norm2 = 0.0;
    for (double c : proj.coefficients) norm2 += c * c;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : proj.coefficients) c *= inv;
    return proj.coefficients;
  };

  out.lin_eigenvectors.push_back(project_normalized([&](double xi) {
    const auto t = specfun::jacobi_elliptic(xi * s, m);
    return t.sn * t.dn;
  }));
  out.lin_eigenvectors.push_back(project_normalized([&](double xi) {
    const auto t = specfun::jacobi_elliptic(xi * s, m);
    return t.sn * t.cn;
  }));
}

}  // namespace

SpectralBasis linearized_spectrum(const ModelSpec& model, const SpectralBasis& basis) {
  if (model.bc != basis.bc || model.ell != basis.ell) {
    throw config_error("linearized_spectrum: model and basis disagree on bc/ell");
  }
  model.validate();

  SpectralBasis out = basis;
  switch (basis.bc) {
    case BoundaryCondition::neumann:
    case BoundaryCondition::periodic:
      fill_shifted_spectrum(out, model.linearization_shift());
      break;
    case BoundaryCondition::dirichlet:
      if (model.kind != ReactionKind::allen_cahn) {
        throw config_error("linearized_spectrum: Dirichlet supported for Allen-Cahn only");
      }
      fill_dirichlet_ac_spectrum(out);
      break;
  }
  return out;
}

GapReport check_spectral_gap(const SpectralBasis& basis) {
  if (basis.lin_mode_count() < 2) {
    throw config_error("check_spectral_gap: need at least 2 linearized eigenvalues");
  }
  const auto& a = basis.lin_eigenvalues;
  GapReport report;
  report.strong = 3.0 * a[0] < a[1];
  report.relaxed = 2.0 * a[0] < a[1];
  if (a[0] < a[1]) {
    for (int k0 = 1; k0 + 1 <= basis.lin_mode_count(); ++k0) {
      if (3.0 * a[0] < a[k0]) {
        report.weak_k0 = k0;
        break;
      }
    }
  }
  return report;
}

ProjectionResult dirichlet_project(const std::function<double(double)>& func,
                                   const SpectralBasis& basis, int n_quad) {
  if (basis.bc != BoundaryCondition::dirichlet) {
    throw config_error("dirichlet_project: basis must be Dirichlet");
  }
  if (n_quad < 8 * basis.n_modes) {
    throw config_error("dirichlet_project: quadrature points must be >= 8N");
  }

  const int n = basis.n_modes;
  const double h = basis.ell / n_quad;
  std::vector<double> values(n_quad - 1);
  for (int i = 1; i < n_quad; ++i) values[i - 1] = func(i * h);

  // trapezoid with vanishing endpoint terms == discrete sine transform
  ProjectionResult result;
  result.coefficients.assign(n, 0.0);
  const double scale = std::sqrt(2.0 / basis.ell) * h;
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 1; i < n_quad; ++i) {
      acc += values[i - 1] * std::sin(k * kPi * i / n_quad);
    }
    result.coefficients[k - 1] = scale * acc;
  }

  double res2 = 0.0;
  for (int i = 1; i < n_quad; ++i) {
    double recon = 0.0;
    for (int k = 1; k <= n; ++k) {
      recon += result.coefficients[k - 1] * std::sqrt(2.0 / basis.ell) *
               std::sin(k * kPi * i / n_quad);
    }
    const double diff = values[i - 1] - recon;
    res2 += diff * diff * h;
  }
  result.residual = std::sqrt(res2);
  return result;
}

}  // namespace mdspde
