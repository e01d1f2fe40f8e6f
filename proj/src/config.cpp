#include "mdspde/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "mdspde/errors.hpp"

namespace mdspde {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

BoundaryCondition parse_bc(const std::string& name) {
  if (name == "neumann") return BoundaryCondition::neumann;
  if (name == "periodic") return BoundaryCondition::periodic;
  if (name == "dirichlet") return BoundaryCondition::dirichlet;
  throw config_error("config: unknown boundary condition '" + name + "'");
}

ReactionKind parse_kind(const std::string& name) {
  if (name == "allen-cahn") return ReactionKind::allen_cahn;
  if (name == "quintic") return ReactionKind::quintic;
  throw config_error("config: unknown model kind '" + name + "'");
}

ControlVariant parse_control(const std::string& name) {
  if (name == "none") return ControlVariant::none;
  if (name == "asymptotic") return ControlVariant::asymptotic;
  if (name == "mollified") return ControlVariant::mollified;
  throw config_error("config: unknown control variant '" + name + "'");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&](const char* k) { return item.key() == k; })) {
      throw config_error("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  RunConfig cfg;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    cfg.validate();
    return cfg;  // empty document: all defaults
  }

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw config_error("config: parse error at line " +
                       std::to_string(line_of_offset(text, err.byte)) + ": " + err.what());
  }

  reject_unknown_keys(doc, {"model", "solver", "control", "campaign", "output"}, "document");

  if (doc.contains("model")) {
    const auto& m = doc["model"];
    reject_unknown_keys(m, {"kind", "mu", "bc", "ell", "sign"}, "model");
    if (m.contains("kind")) cfg.model.kind = parse_kind(m["kind"].get<std::string>());
    if (m.contains("mu")) cfg.model.mu = m["mu"].get<double>();
    if (m.contains("bc")) cfg.model.bc = parse_bc(m["bc"].get<std::string>());
    if (m.contains("ell")) cfg.model.ell = m["ell"].get<double>();
    if (m.contains("sign")) {
      const auto s = m["sign"].get<std::string>();
      if (s == "+" || s == "plus") {
        cfg.model.sign = EquilibriumSign::plus;
      } else if (s == "-" || s == "minus") {
        cfg.model.sign = EquilibriumSign::minus;
      } else {
        throw config_error("config: sign must be '+' or '-'");
      }
    }
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    reject_unknown_keys(s, {"galerkin", "steps_per_unit", "exit_radius", "seed"}, "solver");
    if (s.contains("galerkin")) cfg.n_modes = s["galerkin"].get<int>();
    if (s.contains("steps_per_unit")) cfg.steps_per_unit = s["steps_per_unit"].get<int>();
    if (s.contains("exit_radius")) cfg.exit_radius = s["exit_radius"].get<double>();
    if (s.contains("seed")) cfg.seed = s["seed"].get<std::uint64_t>();
  }
  if (doc.contains("control")) {
    const auto& c = doc["control"];
    reject_unknown_keys(c, {"variant", "kappa", "k0", "h_exponent"}, "control");
    if (c.contains("variant")) cfg.control = parse_control(c["variant"].get<std::string>());
    if (c.contains("kappa")) cfg.kappa = c["kappa"].get<double>();
    if (c.contains("k0")) cfg.k0 = c["k0"].get<int>();
    if (c.contains("h_exponent")) cfg.h_exponent = c["h_exponent"].get<double>();
  }
  if (doc.contains("campaign")) {
    const auto& c = doc["campaign"];
    reject_unknown_keys(c, {"samples", "threads", "epsilon_grid", "horizon_grid"},
                        "campaign");
    if (c.contains("samples")) cfg.n_samples = c["samples"].get<std::int64_t>();
    if (c.contains("threads")) cfg.threads = c["threads"].get<int>();
    if (c.contains("epsilon_grid"))
      cfg.eps_grid = c["epsilon_grid"].get<std::vector<double>>();
    if (c.contains("horizon_grid"))
      cfg.horizon_grid = c["horizon_grid"].get<std::vector<double>>();
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    reject_unknown_keys(o, {"csv", "paper_style", "record_path"}, "output");
    if (o.contains("csv")) cfg.out_path = o["csv"].get<std::string>();
    if (o.contains("paper_style")) cfg.paper_style = o["paper_style"].get<bool>();
    if (o.contains("record_path")) cfg.record_path = o["record_path"].get<bool>();
  }

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  model.validate();
  if (n_modes < 2) throw config_error("config: galerkin level must be >= 2");
  if (steps_per_unit < 1) throw config_error("config: steps_per_unit must be >= 1");
  if (!(exit_radius > 0.0)) throw config_error("config: exit_radius must be positive");
  if (n_samples < 1) throw config_error("config: samples must be >= 1");
  if (!(h_exponent > 0.0)) throw config_error("config: h_exponent must be positive");
  for (const double eps : eps_grid) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw config_error("config: epsilon values must lie in (0, 1)");
    }
  }
  for (const double horizon : horizon_grid) {
    if (!(horizon > 0.0)) throw config_error("config: horizons must be positive");
  }
  if (control == ControlVariant::mollified && !(kappa > 0.0 && kappa < 1.0)) {
    throw config_error("config: kappa must lie in (0, 1)");
  }

  // cross-check the control against the actual linearized spectrum
  if (control != ControlVariant::none) {
    const auto basis =
        linearized_spectrum(model, laplacian_spectrum(model.bc, model.ell, n_modes));
    ControlPolicy policy{control, k0, exit_radius, kappa, &basis};
    policy.validate();
  }
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> notes;

  // Theorem-level scaling condition: sqrt(eps) h^3(eps) should decrease as
  // eps -> 0, i.e. eps^{1/2 - 3 rho_h} with positive exponent.
  auto growth = [&](double eps) { return std::pow(eps, 0.5 - 3.0 * h_exponent); };
  std::vector<double> sorted(eps_grid);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (growth(sorted[i]) > growth(sorted[i - 1])) {
      notes.push_back(
          "sqrt(eps) h^3(eps) is not decreasing along the epsilon grid "
          "(h_exponent >= 1/6); pre-asymptotic bounds may degrade");
      break;
    }
  }
  for (const double eps : eps_grid) {
    if (std::sqrt(eps) * std::pow(eps, -h_exponent) >= 1.0) {
      notes.push_back("R = sqrt(eps) h(eps) >= 1 at eps = " + std::to_string(eps) +
                      "; the exit domain does not shrink");
    }
  }
  return notes;
}

SolverConfig RunConfig::solver_config(double epsilon, double horizon) const {
  SolverConfig sc;
  sc.n_modes = n_modes;
  sc.horizon = horizon;
  sc.steps = std::max(1, static_cast<int>(std::ceil(steps_per_unit * horizon)));
  sc.epsilon = epsilon;
  sc.h_exponent = h_exponent;
  sc.exit_radius = exit_radius;
  sc.seed = seed;
  sc.record_path = record_path;
  return sc;
}

int RunConfig::resolved_threads() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("MDSPDE_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace mdspde
