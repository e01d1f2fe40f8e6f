#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mdspde/errors.hpp"
#include "mdspde/model.hpp"
#include "mdspde/rng.hpp"
#include "mdspde/specfun.hpp"
#include "mdspde/spectral.hpp"

using namespace mdspde;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// discrete L2 inner product of two eigenfunctions on a dense uniform grid
double grid_inner(const SpectralBasis& basis, int i, int j, int points) {
  const double h = basis.ell / points;
  double acc = 0.0;
  for (int g = 0; g < points; ++g) {
    const double xi = (g + 0.5) * h;
    acc += basis.eigenfunction(i, xi) * basis.eigenfunction(j, xi);
  }
  return acc * h;
}

}  // namespace

TEST_CASE("Neumann Laplacian eigenvalues") {
  const auto basis = laplacian_spectrum(BoundaryCondition::neumann, 1.0, 3);
  CHECK(basis.lap_eigenvalues[0] == doctest::Approx(0.0));
  CHECK(basis.lap_eigenvalues[1] == doctest::Approx(kPi * kPi).epsilon(1e-14));
  CHECK(basis.lap_eigenvalues[2] == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("Dirichlet Laplacian eigenvalues on (0, pi)") {
  const auto basis = laplacian_spectrum(BoundaryCondition::dirichlet, kPi, 2);
  CHECK(basis.lap_eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(basis.lap_eigenvalues[1] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("periodic Laplacian lists the zero mode then degenerate pairs") {
  const auto basis = laplacian_spectrum(BoundaryCondition::periodic, 1.0, 5);
  CHECK(basis.lap_eigenvalues[0] == doctest::Approx(0.0));
  CHECK(basis.lap_eigenvalues[1] == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(basis.lap_eigenvalues[2] == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(basis.lap_eigenvalues[3] == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-14));
  CHECK(basis.lap_eigenvalues[4] == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(laplacian_spectrum(BoundaryCondition::neumann, -1.0, 4), config_error);
  CHECK_THROWS_AS(laplacian_spectrum(BoundaryCondition::neumann, 1.0, 1), config_error);
}

TEST_CASE("eigenfunctions are orthonormal on a dense grid") {
  for (const auto bc :
       {BoundaryCondition::neumann, BoundaryCondition::periodic, BoundaryCondition::dirichlet}) {
    const auto basis = laplacian_spectrum(bc, 1.7, 6);
    CHECK(std::abs(grid_inner(basis, 2, 2, 1024) - 1.0) < 1e-8);
    for (int i = 1; i <= 6; ++i) {
      for (int j = 1; j < i; ++j) {
        CHECK(std::abs(grid_inner(basis, i, j, 1024)) < 1e-8);
      }
    }
  }
}

TEST_CASE("Allen-Cahn Neumann linearized spectrum") {
  ModelSpec model;
  model.bc = BoundaryCondition::neumann;
  model.ell = 1.0;
  const auto basis =
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 6));
  CHECK(basis.lin_eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(basis.lin_eigenvalues[1] == doctest::Approx(2.0 + kPi * kPi).epsilon(1e-14));
  // eigenvectors are canonical unit vectors
  for (int n = 0; n < 6; ++n) {
    for (int j = 0; j < 6; ++j) {
      CHECK(basis.lin_eigenvectors[n][j] == doctest::Approx(n == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("Allen-Cahn Neumann ell = 4pi/3: displayed formula value") {
  ModelSpec model;
  model.bc = BoundaryCondition::neumann;
  model.ell = 4.0 * kPi / 3.0;
  const auto basis =
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 6));
  // 2 + (3 pi / ell)^2 = 2 + 81/16 = 7.0625; the source table prints 7.0265,
  // which does not match its own displayed formula (digit transposition).
  CHECK(basis.lin_eigenvalues[3] == doctest::Approx(7.0625).epsilon(1e-12));
}

TEST_CASE("Allen-Cahn periodic linearized spectrum keeps the (+n, -n) order") {
  ModelSpec model;
  model.bc = BoundaryCondition::periodic;
  model.ell = 1.0;
  const auto basis =
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 5));
  CHECK(basis.lin_eigenvalues[0] == doctest::Approx(2.0));
  CHECK(basis.lin_eigenvalues[1] == doctest::Approx(2.0 + 4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(basis.lin_eigenvalues[2] == doctest::Approx(2.0 + 4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(basis.lin_eigenvectors[1][1] == doctest::Approx(1.0));
  CHECK(basis.lin_eigenvectors[2][2] == doctest::Approx(1.0));
}

TEST_CASE("quintic linearized spectrum shifts by 2 mu + 4") {
  ModelSpec model;
  model.kind = ReactionKind::quintic;
  model.mu = -0.5;
  model.bc = BoundaryCondition::neumann;
  model.ell = 1.0;
  const auto basis =
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 4));
  CHECK(basis.lin_eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(basis.lin_eigenvalues[1] == doctest::Approx(3.0 + kPi * kPi).epsilon(1e-14));
}

TEST_CASE("Dirichlet Allen-Cahn linearized pair") {
  ModelSpec model;
  model.bc = BoundaryCondition::dirichlet;
  model.ell = 3.81828;
  const auto basis =
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 32));
  const double amp = specfun::inverse_M(model.ell / 2.0);
  CHECK(basis.lin_mode_count() == 2);
  CHECK(basis.lin_eigenvalues[0] == doctest::Approx(1.5 * amp * amp).epsilon(1e-12));
  // exact identity a1f + a2f = 3 for every ell
  CHECK(basis.lin_eigenvalues[0] + basis.lin_eigenvalues[1] ==
        doctest::Approx(3.0).epsilon(1e-12));
  // derived from the a = 0.65 configuration of the reference tables
  CHECK(basis.lin_eigenvalues[0] == doctest::Approx(0.63375).epsilon(1e-4));
  for (const auto& vec : basis.lin_eigenvectors) {
    double norm2 = 0.0;
    for (const double c : vec) norm2 += c * c;
    CHECK(std::abs(norm2 - 1.0) < 1e-10);
  }
}

TEST_CASE("spectral gap reports") {
  ModelSpec model;
  model.bc = BoundaryCondition::neumann;

  model.ell = 1.0;
  auto gap = check_spectral_gap(
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 8)));
  CHECK(gap.strong);
  CHECK(gap.relaxed);
  REQUIRE(gap.weak_k0.has_value());
  CHECK(*gap.weak_k0 == 1);

  model.ell = kPi;  // a1f = 2, a2f = 3: both gaps fail
  gap = check_spectral_gap(
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 8)));
  CHECK_FALSE(gap.strong);
  CHECK_FALSE(gap.relaxed);

  model.ell = 4.0 * kPi / 3.0;  // weak gap holds with k0 = 3
  gap = check_spectral_gap(
      linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, 8)));
  CHECK_FALSE(gap.strong);
  REQUIRE(gap.weak_k0.has_value());
  CHECK(*gap.weak_k0 == 3);
}

TEST_CASE("Dirichlet strong gap iff ell < 2 M(sqrt(2)/2)") {
  ModelSpec model;
  model.bc = BoundaryCondition::dirichlet;
  for (const double ell : {3.6, 3.9, 4.0}) {
    model.ell = ell;
    const auto gap = check_spectral_gap(
        linearized_spectrum(model, laplacian_spectrum(model.bc, ell, 16)));
    CHECK(gap.strong);
  }
  for (const double ell : {4.1, 4.5}) {
    model.ell = ell;
    const auto gap = check_spectral_gap(
        linearized_spectrum(model, laplacian_spectrum(model.bc, ell, 16)));
    CHECK_FALSE(gap.strong);
  }
}

TEST_CASE("dirichlet_project recovers basis modes and validates input") {
  const auto basis = laplacian_spectrum(BoundaryCondition::dirichlet, 3.81828, 12);
  auto proj = dirichlet_project([&](double xi) { return basis.eigenfunction(3, xi); },
                                basis, 16 * 12);
  for (int k = 0; k < 12; ++k) {
    CHECK(std::abs(proj.coefficients[k] - (k == 2 ? 1.0 : 0.0)) < 1e-8);
  }
  CHECK(proj.residual < 1e-8);
  CHECK_THROWS_AS(dirichlet_project([](double) { return 0.0; }, basis, 12), config_error);

  const auto neumann = laplacian_spectrum(BoundaryCondition::neumann, 1.0, 4);
  CHECK_THROWS_AS(dirichlet_project([](double) { return 0.0; }, neumann, 64), config_error);
}

TEST_CASE("projection of the normalized first linearized eigenfunction has unit norm") {
  ModelSpec model;
  model.bc = BoundaryCondition::dirichlet;
  model.ell = 3.81828;
  const int n = 24;
  const auto lap = laplacian_spectrum(model.bc, model.ell, n);
  const double amp = specfun::inverse_M(model.ell / 2.0);
  const double m = amp * amp / (2.0 - amp * amp);
  const double s = std::sqrt(1.0 - amp * amp / 2.0);

  // normalize sn*dn by fine quadrature first (independent of the projection)
  const int fine = 1 << 15;
  double norm2 = 0.0;
  for (int i = 1; i < fine; ++i) {
    const double xi = i * model.ell / fine;
    const auto t = specfun::jacobi_elliptic(xi * s, m);
    norm2 += t.sn * t.dn * t.sn * t.dn;
  }
  norm2 *= model.ell / fine;
  const double scale = 1.0 / std::sqrt(norm2);

  auto proj = dirichlet_project(
      [&](double xi) {
        const auto t = specfun::jacobi_elliptic(xi * s, m);
        return scale * t.sn * t.dn;
      },
      lap, 16 * n);
  double coeff_norm2 = 0.0;
  for (const double c : proj.coefficients) coeff_norm2 += c * c;
  CHECK(std::abs(std::sqrt(coeff_norm2) - 1.0) < 1e-6);
}

TEST_CASE("Parseval holds on the projection grid") {
  mdspde::RngStream rng(42, 0);
  for (const auto bc :
       {BoundaryCondition::neumann, BoundaryCondition::periodic, BoundaryCondition::dirichlet}) {
    const auto basis = laplacian_spectrum(bc, 2.3, 10);
    const Transform transform(basis);
    std::vector<double> coeffs(10);
    for (auto& c : coeffs) c = 2.0 * (rng.next_uniform() - 0.5);
    std::vector<double> grid(transform.node_count());
    transform.synthesize(coeffs, grid);
    double grid_norm2 = 0.0;
    for (const double v : grid) grid_norm2 += v * v;
    grid_norm2 *= transform.quadrature_weight();
    double coeff_norm2 = 0.0;
    for (const double c : coeffs) coeff_norm2 += c * c;
    CHECK(std::abs(grid_norm2 - coeff_norm2) < 1e-6);
  }
}
