#include "twostate/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "twostate/parallel.hpp"
#include "twostate/shock.hpp"

namespace twostate {

namespace {

const Potential& require_potential(const ModelSpec& model) {
  if (!model.potential) throw ConfigError("model '" + model.name + "' has no potential");
  return *model.potential;
}

}  // namespace

double reduced_hamiltonian(double p, double zeta, const ModelSpec& model) {
  const auto& pot = require_potential(model);
  return reduced_hamiltonian_with(p, zeta, pot.F(SimplexPoint{zeta}));
}

double godunov_flux_with(double alpha, double beta, double zeta, double potential) noexcept {
  const double at_alpha = reduced_hamiltonian_with(alpha, zeta, potential);
  const double at_beta = reduced_hamiltonian_with(beta, zeta, potential);
  const double lo = std::min(alpha, beta);
  const double hi = std::max(alpha, beta);
  const bool vertex_inside = lo <= 0.0 && 0.0 <= hi;
  if (alpha <= beta) {
    double m = std::min(at_alpha, at_beta);
    if (vertex_inside) m = std::min(m, reduced_hamiltonian_with(0.0, zeta, potential));
    return m;
  }
  double m = std::max(at_alpha, at_beta);
  if (vertex_inside) m = std::max(m, reduced_hamiltonian_with(0.0, zeta, potential));
  return m;
}

double godunov_flux(double alpha, double beta, double zeta, const ModelSpec& model) {
  const auto& pot = require_potential(model);
  return godunov_flux_with(alpha, beta, zeta, pot.F(SimplexPoint{zeta}));
}

ScalarGrid derivative_of_upsilon(const ScalarGrid& grid) {
  const auto& v = grid.values;
  if (v.size() < 3) throw std::invalid_argument("derivative_of_upsilon needs at least 3 points");
  const std::size_t n = v.size() - 1;
  const double nn = static_cast<double>(n);
  ScalarGrid d{grid.t, std::vector<double>(v.size())};
  d.values[0] = (v[1] - v[0]) * nn;
  d.values[n] = (v[n] - v[n - 1]) * nn;
  for (std::size_t k = 1; k < n; ++k) d.values[k] = (v[k + 1] - v[k - 1]) * (0.5 * nn);
  return d;
}

double default_dirichlet_cap(const ModelSpec& model, std::size_t n) {
  const auto& pot = require_potential(model);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) top = std::max(top, pot.psi0(SimplexPoint{grid_zeta(k, n)}));
  return 10.0 * (1.0 + top);
}

RunArtifact solve_hjb(const ModelSpec& model, const HjConfig& hj) {
  const auto& pot = require_potential(model);
  const SolverConfig& cfg = hj.grid;
  const TimeGrid tg = make_time_grid(cfg);
  const std::size_t n = cfg.n_grid;
  if (n < 2) throw ConfigError("hjb needs n_grid >= 2");
  const double nn = static_cast<double>(n);
  const auto zeta = grid_points(n);

  std::vector<double> upsilon(n + 1), next(n + 1), potential(n + 1);
  double psi_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    upsilon[k] = pot.psi0(SimplexPoint{zeta[k]});
    potential[k] = pot.F(SimplexPoint{zeta[k]});
    psi_max = std::max(psi_max, upsilon[k]);
  }
  const double cap = hj.c_d.value_or(10.0 * (1.0 + psi_max));
  if (!(cap > psi_max)) {
    throw ConfigError("c_D=" + std::to_string(cap) + " must exceed max Psi0=" + std::to_string(psi_max));
  }

  std::set<std::size_t> record;
  for (double t : cfg.snapshot_times) record.insert(tg.nearest_step_from_end(t));
  if (cfg.record_stride > 0) {
    for (std::size_t s = 0; s <= tg.steps; s += cfg.record_stride) record.insert(s);
    record.insert(tg.steps);
  }

  RunArtifact run;
  run.solver = "hjb";
  run.n_grid = n;
  run.field_names = {"upsilon"};
  run.metrics["c_D"] = cap;

  IndexLoop loop(cfg.threads);
  for (std::size_t s = 0;; ++s) {
    const double t = tg.backward_time(s);
    if (record.contains(s)) {
      run.snapshots.push_back({t, {upsilon}});
      run.diagnostics.push_back(diagnose(derivative_of_upsilon(ScalarGrid{t, upsilon}), cfg.jump_factor));
    }
    if (s == tg.steps) break;

    loop.run(0, n + 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const double forward = k < n ? (upsilon[k + 1] - upsilon[k]) * nn : 0.0;
        const double backward = k > 0 ? (upsilon[k] - upsilon[k - 1]) * nn : 0.0;
        const double value = upsilon[k] + cfg.dt * godunov_flux_with(forward, backward, zeta[k], potential[k]);
        next[k] = (k == 0 || k == n) ? std::min(value, cap) : value;
      }
    });
    for (std::size_t k = 0; k <= n; ++k) {
      if (!(std::abs(next[k]) <= cfg.blowup_bound)) {
        throw NumericalError("hjb blow-up: |Upsilon| exceeded " + std::to_string(cfg.blowup_bound) +
                             " at t=" + std::to_string(tg.backward_time(s + 1)));
      }
    }
    upsilon.swap(next);
  }
  run.sort_by_time();
  return run;
}

}  // namespace twostate
