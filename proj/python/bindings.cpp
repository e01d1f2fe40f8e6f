#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "mdspde/campaign.hpp"
#include "mdspde/config.hpp"
#include "mdspde/errors.hpp"
#include "mdspde/specfun.hpp"
#include "mdspde/variational.hpp"

namespace py = pybind11;
using namespace mdspde;

namespace {

ModelSpec make_model(const std::string& kind, const std::string& bc, double ell,
                     double mu, const std::string& sign) {
  ModelSpec model;
  if (kind == "allen-cahn") {
    model.kind = ReactionKind::allen_cahn;
  } else if (kind == "quintic") {
    model.kind = ReactionKind::quintic;
  } else {
    throw config_error("unknown model kind: " + kind);
  }
  if (bc == "neumann") {
    model.bc = BoundaryCondition::neumann;
  } else if (bc == "periodic") {
    model.bc = BoundaryCondition::periodic;
  } else if (bc == "dirichlet") {
    model.bc = BoundaryCondition::dirichlet;
  } else {
    throw config_error("unknown boundary condition: " + bc);
  }
  model.ell = ell;
  model.mu = mu;
  model.sign = (sign == "-" || sign == "minus") ? EquilibriumSign::minus
                                                : EquilibriumSign::plus;
  model.validate();
  return model;
}

ControlVariant parse_variant(const std::string& name) {
  if (name == "none") return ControlVariant::none;
  if (name == "asymptotic") return ControlVariant::asymptotic;
  if (name == "mollified") return ControlVariant::mollified;
  throw config_error("unknown control variant: " + name);
}

py::dict result_to_dict(const CampaignResult& r) {
  py::dict d;
  d["M"] = r.n_samples;
  d["mean"] = r.mean;
  d["sample_std"] = r.sample_std;
  d["rel_error_per_sample"] =
      r.rel_error_per_sample ? py::object(py::float_(*r.rel_error_per_sample))
                             : py::object(py::none());
  d["second_moment"] = r.second_moment;
  d["empirical_decay"] = r.empirical_decay ? py::object(py::float_(*r.empirical_decay))
                                           : py::object(py::none());
  d["n_exited"] = r.n_exited;
  d["n_errors"] = r.n_errors;
  d["wall_time_s"] = r.wall_time_s;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mdspde, m) {
  m.doc() = "Moderate-deviation importance sampling for stochastic "
            "reaction-diffusion equations";

  // --- special functions ---
  m.def("elliptic_K", &specfun::elliptic_K, py::arg("m"));
  m.def(
      "jacobi_elliptic",
      [](double x, double mod) {
        const auto t = specfun::jacobi_elliptic(x, mod);
        return py::make_tuple(t.sn, t.cn, t.dn);
      },
      py::arg("x"), py::arg("m"));
  m.def("quarter_period_M", &specfun::quarter_period_M, py::arg("amplitude"));
  m.def("inverse_M", &specfun::inverse_M, py::arg("target"));

  // --- spectral data ---
  m.def(
      "spectrum",
      [](const std::string& kind, const std::string& bc, double ell, double mu,
         int n_modes) {
        const auto model = make_model(kind, bc, ell, mu, "+");
        const auto basis =
            linearized_spectrum(model, laplacian_spectrum(model.bc, ell, n_modes));
        py::dict d;
        d["lap_eigenvalues"] = basis.lap_eigenvalues;
        d["lin_eigenvalues"] = basis.lin_eigenvalues;
        d["lin_eigenvectors"] = basis.lin_eigenvectors;
        return d;
      },
      py::arg("kind") = "allen-cahn", py::arg("bc") = "neumann", py::arg("ell") = 1.0,
      py::arg("mu") = -0.5, py::arg("n_modes") = 50);
  m.def(
      "gap_report",
      [](const std::string& kind, const std::string& bc, double ell, double mu,
         int n_modes) {
        const auto model = make_model(kind, bc, ell, mu, "+");
        const auto gap = check_spectral_gap(
            linearized_spectrum(model, laplacian_spectrum(model.bc, ell, n_modes)));
        py::dict d;
        d["strong"] = gap.strong;
        d["relaxed"] = gap.relaxed;
        d["weak_k0"] = gap.weak_k0 ? py::object(py::int_(*gap.weak_k0))
                                   : py::object(py::none());
        return d;
      },
      py::arg("kind") = "allen-cahn", py::arg("bc") = "neumann", py::arg("ell") = 1.0,
      py::arg("mu") = -0.5, py::arg("n_modes") = 50);
  m.def(
      "equilibrium_profile",
      [](const std::string& kind, const std::string& bc, double ell, double mu,
         const std::string& sign, int n_modes) {
        const auto model = make_model(kind, bc, ell, mu, sign);
        const auto basis = laplacian_spectrum(model.bc, ell, n_modes);
        const Transform transform(basis);
        const auto eq = equilibrium(model, basis, transform);
        py::dict d;
        d["coefficients"] = eq.coefficients;
        d["grid"] = transform.nodes();
        d["grid_values"] = eq.grid_values;
        return d;
      },
      py::arg("kind") = "allen-cahn", py::arg("bc") = "neumann", py::arg("ell") = 1.0,
      py::arg("mu") = -0.5, py::arg("sign") = "+", py::arg("n_modes") = 50);

  // --- limiting variational problem ---
  m.def(
      "exit_direction",
      [](const std::vector<double>& lin_eigenvalues, int k0, double horizon,
         double exit_radius) {
        const auto dir = exit_direction(lin_eigenvalues, k0, horizon, exit_radius);
        py::dict d;
        d["index"] = dir.index;
        d["minimal_value"] = dir.minimal_value;
        d["tied"] = dir.tied;
        return d;
      },
      py::arg("lin_eigenvalues"), py::arg("k0") = 1, py::arg("horizon") = 1.0,
      py::arg("exit_radius") = 1.0);
  m.def(
      "lambda_weights",
      [](const std::vector<double>& lin_eigenvalues, int k0, double tau) {
        return lambda_weights(lin_eigenvalues, k0, tau);
      },
      py::arg("lin_eigenvalues"), py::arg("k0"), py::arg("tau"));
  m.def("t_star", &t_star, py::arg("a1"), py::arg("a2"));
  m.def(
      "decay_rates",
      [](double a1, double exit_radius, double horizon) {
        const auto rates = decay_rates(a1, exit_radius, horizon);
        py::dict d;
        d["G_T"] = rates.g_T;
        d["U0"] = rates.u0;
        d["optimal"] = rates.optimal;
        d["scheme"] = rates.scheme;
        return d;
      },
      py::arg("a1"), py::arg("exit_radius") = 1.0, py::arg("horizon") = 1.0);

  // --- Monte Carlo campaigns ---
  m.def(
      "simulate",
      [](const std::string& kind, const std::string& bc, double ell, double mu,
         const std::string& sign, int n_modes, const std::string& control, double kappa,
         int k0, double epsilon, double horizon, int steps_per_unit, double h_exponent,
         double exit_radius, std::uint64_t seed, std::int64_t samples, int threads) {
        const auto model = make_model(kind, bc, ell, mu, sign);
        const auto basis =
            linearized_spectrum(model, laplacian_spectrum(model.bc, ell, n_modes));
        const ControlPolicy policy{parse_variant(control), k0, exit_radius, kappa,
                                   &basis};
        SolverConfig cfg;
        cfg.n_modes = n_modes;
        cfg.horizon = horizon;
        cfg.steps = std::max(1, static_cast<int>(steps_per_unit * horizon));
        cfg.epsilon = epsilon;
        cfg.h_exponent = h_exponent;
        cfg.exit_radius = exit_radius;
        cfg.seed = seed;
        CampaignResult result;
        {
          py::gil_scoped_release release;
          result = run_campaign(model, basis, policy, cfg, samples, threads);
        }
        return result_to_dict(result);
      },
      py::arg("kind") = "allen-cahn", py::arg("bc") = "neumann", py::arg("ell") = 1.0,
      py::arg("mu") = -0.5, py::arg("sign") = "+", py::arg("n_modes") = 50,
      py::arg("control") = "mollified", py::arg("kappa") = 0.9, py::arg("k0") = 1,
      py::arg("epsilon") = 0.01, py::arg("horizon") = 4.0,
      py::arg("steps_per_unit") = 100, py::arg("h_exponent") = 0.1,
      py::arg("exit_radius") = 1.0, py::arg("seed") = 1, py::arg("samples") = 50000,
      py::arg("threads") = 0);

  m.def("default_config_json", []() {
    return std::string(
        "{\n"
        "  \"model\": {\"kind\": \"allen-cahn\", \"bc\": \"neumann\", \"ell\": 1.0},\n"
        "  \"control\": {\"variant\": \"mollified\", \"kappa\": 0.9},\n"
        "  \"campaign\": {\"samples\": 50000}\n"
        "}\n");
  });
}
