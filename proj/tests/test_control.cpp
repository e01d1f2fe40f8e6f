#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdspde/control.hpp"
#include "mdspde/errors.hpp"
#include "mdspde/model.hpp"
#include "mdspde/rng.hpp"

using namespace mdspde;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

SpectralBasis neumann_lin_basis(double ell, int n) {
  ModelSpec model;
  model.bc = BoundaryCondition::neumann;
  model.ell = ell;
  return linearized_spectrum(model, laplacian_spectrum(model.bc, ell, n));
}

double norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (const double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("rho at characteristic points") {
  const auto basis = neumann_lin_basis(1.0, 8);
  ControlPolicy policy{ControlVariant::mollified, 1, 1.0, 0.9, &basis};
  policy.validate();

  const double eps = 0.01;
  const double h = std::pow(eps, -0.1);
  const double a1 = basis.lin_eigenvalues[0];

  // <eta, e1f>^2 = h^{-2 kappa}: the F1 = F2 symmetry point
  std::vector<double> eta(8, 0.0);
  eta[0] = std::pow(h, -policy.kappa);
  CHECK(rho_eps(policy, eta, h) == doctest::Approx(0.5).epsilon(1e-14));

  // on the exit sphere in the e1f direction
  eta[0] = policy.exit_radius;
  const double expected_boundary =
      1.0 / (1.0 + std::exp(-a1 * (1.0 - std::pow(h, -2.0 * policy.kappa)) * h * h / 2.0));
  CHECK(rho_eps(policy, eta, h) == doctest::Approx(expected_boundary).epsilon(1e-12));

  // at the origin
  eta[0] = 0.0;
  const double expected_origin =
      1.0 / (1.0 + std::exp(a1 * std::pow(h, 2.0 - 2.0 * policy.kappa) / 2.0));
  CHECK(rho_eps(policy, eta, h) == doctest::Approx(expected_origin).epsilon(1e-12));
}

TEST_CASE("rho is monotone in the forced coordinate and stays in [0,1]") {
  const auto basis = neumann_lin_basis(1.0, 4);
  ControlPolicy policy{ControlVariant::mollified, 1, 1.0, 0.9, &basis};
  const double h = std::pow(1e-4, -0.1);
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    std::vector<double> eta(4, 0.0);
    eta[0] = 1.5 * i / 50.0;
    const double r = rho_eps(policy, eta, h);
    CHECK(r >= prev);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    prev = r;
  }
}

TEST_CASE("control_eval for the three variants") {
  const auto basis = neumann_lin_basis(1.0, 8);
  const double a1 = basis.lin_eigenvalues[0];
  const double h = std::pow(0.01, -0.1);
  std::vector<double> u(8);

  ControlPolicy none{ControlVariant::none, 1, 1.0, 0.9, &basis};
  ControlPolicy asym{ControlVariant::asymptotic, 1, 1.0, 0.9, &basis};
  ControlPolicy moll{ControlVariant::mollified, 1, 1.0, 0.9, &basis};

  std::vector<double> zero(8, 0.0);
  for (const auto* policy : {&none, &asym, &moll}) {
    control_eval(*policy, zero, h, u);
    CHECK(norm(u) == doctest::Approx(0.0));
  }

  std::vector<double> eta(8, 0.0);
  eta[0] = 0.37;
  control_eval(asym, eta, h, u);
  CHECK(norm(u) == doctest::Approx(2.0 * a1 * 0.37).epsilon(1e-13));

  // at the rho = 1/2 symmetry point the mollified gain halves
  eta[0] = std::pow(h, -moll.kappa);
  control_eval(moll, eta, h, u);
  CHECK(norm(u) == doctest::Approx(a1 * std::pow(h, -moll.kappa)).epsilon(1e-12));
}

TEST_CASE("control is odd in the forced coordinate") {
  const auto basis = neumann_lin_basis(1.0, 6);
  const double h = std::pow(0.004, -0.1);
  std::vector<double> u_plus(6), u_minus(6);
  for (const auto variant : {ControlVariant::asymptotic, ControlVariant::mollified}) {
    ControlPolicy policy{variant, 1, 1.0, 0.9, &basis};
    std::vector<double> eta(6, 0.0);
    eta[0] = 0.61;
    control_eval(policy, eta, h, u_plus);
    eta[0] = -0.61;
    control_eval(policy, eta, h, u_minus);
    for (int j = 0; j < 6; ++j) CHECK(u_plus[j] == doctest::Approx(-u_minus[j]));
  }
}

TEST_CASE("subsolution values") {
  const auto basis = neumann_lin_basis(1.0, 8);
  const double a1 = basis.lin_eigenvalues[0];
  std::vector<double> origin(8, 0.0);

  ControlPolicy asym{ControlVariant::asymptotic, 1, 1.0, 0.9, &basis};
  const double h = std::pow(0.01, -0.1);
  CHECK(subsolution_value(asym, origin, h) == doctest::Approx(a1).epsilon(1e-14));

  // soft-min lower bound U(0) >= min(F1(0), F2) - delta log 2
  ControlPolicy moll{ControlVariant::mollified, 1, 1.0, 0.9, &basis};
  const double delta = 2.0 / (h * h);
  const double f1_origin = a1;
  const double f2 = a1 * (1.0 - std::pow(h, -2.0 * moll.kappa));
  CHECK(subsolution_value(moll, origin, h) >=
        std::min(f1_origin, f2) - delta * std::log(2.0) - 1e-12);

  // when F2 dominates by many deltas the mollification collapses onto F1
  const double h_small_eps = std::pow(1e-8, -0.1);
  std::vector<double> eta(8, 0.0);
  eta[0] = 0.995;
  const double f1 = a1 * (1.0 - eta[0] * eta[0]);
  CHECK(std::abs(subsolution_value(moll, eta, h_small_eps) - f1) < 1e-10);
}

TEST_CASE("control equals minus the subsolution gradient") {
  const auto basis = neumann_lin_basis(1.0, 8);
  RngStream rng(0xabcULL, 3);
  const double h = std::pow(0.002, -0.1);
  std::vector<double> u(8), eta(8);

  for (const auto variant : {ControlVariant::mollified, ControlVariant::asymptotic}) {
    ControlPolicy policy{variant, 2, 1.0, 0.9, &basis};
    if (variant == ControlVariant::mollified) policy.k0 = 1;
    for (int trial = 0; trial < 20; ++trial) {
      double norm2 = 0.0;
      for (auto& x : eta) {
        x = 2.0 * (rng.next_uniform() - 0.5);
        norm2 += x * x;
      }
      const double scale = rng.next_uniform() / std::sqrt(norm2);
      for (auto& x : eta) x *= scale;  // ||eta|| <= L = 1

      control_eval(policy, eta, h, u);
      for (int j = 0; j < 5; ++j) {
        const double step = 1e-6;
        std::vector<double> hi(eta), lo(eta);
        hi[j] += step;
        lo[j] -= step;
        const double grad =
            (subsolution_value(policy, hi, h) - subsolution_value(policy, lo, h)) /
            (2.0 * step);
        const double expected = -grad;
        const double scale_ref = std::max(1e-8, std::abs(expected));
        CHECK(std::abs(u[j] - expected) / scale_ref < 1e-5);
      }
    }
  }
}

TEST_CASE("mollified control converges to the asymptotic one outside the neighborhood") {
  const auto basis = neumann_lin_basis(1.0, 6);
  ControlPolicy moll{ControlVariant::mollified, 1, 1.0, 0.9, &basis};
  ControlPolicy asym{ControlVariant::asymptotic, 1, 1.0, 0.9, &basis};
  std::vector<double> eta(6, 0.0);
  eta[0] = 0.7;  // fixed eta with <eta,e1f>^2 > h^{-2 kappa} for small eps
  std::vector<double> u_moll(6), u_asym(6);
  const double h = std::pow(1e-10, -0.1);
  control_eval(moll, eta, h, u_moll);
  control_eval(asym, eta, h, u_asym);
  for (int j = 0; j < 6; ++j) CHECK(std::abs(u_moll[j] - u_asym[j]) < 1e-9);
}

TEST_CASE("policy validation") {
  const auto strong = neumann_lin_basis(1.0, 8);
  const auto weak = neumann_lin_basis(kPi, 8);        // no gap at all
  const auto k03 = neumann_lin_basis(4.0 * kPi / 3.0, 8);  // weak_k0 = 3

  const ControlPolicy ok{ControlVariant::mollified, 1, 1.0, 0.9, &strong};
  CHECK_NOTHROW(ok.validate());
  const ControlPolicy bad_kappa{ControlVariant::mollified, 1, 1.0, 1.5, &strong};
  CHECK_THROWS_AS(bad_kappa.validate(), config_error);
  const ControlPolicy no_gap{ControlVariant::mollified, 1, 1.0, 0.9, &weak};
  CHECK_THROWS_AS(no_gap.validate(), config_error);
  const ControlPolicy k0_too_small{ControlVariant::asymptotic, 1, 1.0, 0.9, &k03};
  CHECK_THROWS_AS(k0_too_small.validate(), config_error);
  const ControlPolicy k0_ok{ControlVariant::asymptotic, 3, 1.0, 0.9, &k03};
  CHECK_NOTHROW(k0_ok.validate());
  const ControlPolicy plain{ControlVariant::none, 1, 1.0, 0.9, nullptr};
  CHECK_NOTHROW(plain.validate());
}
