#include "twostate/nplayer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "twostate/hamiltonian.hpp"
#include "twostate/parallel.hpp"
#include "twostate/shock.hpp"

namespace twostate {

NPlayerOperator::NPlayerOperator(const ModelSpec& model, std::size_t n)
    : n_(n), zeta_(grid_points(n)), f1_(n + 1), f2_(n + 1) {
  for (std::size_t k = 0; k <= n; ++k) {
    const SimplexPoint th{zeta_[k]};
    f1_[k] = model.f(State::one, th);
    f2_[k] = model.f(State::two, th);
    if (!std::isfinite(f1_[k]) || !std::isfinite(f2_[k])) {
      throw std::domain_error("coupling is not finite at zeta=" + std::to_string(zeta_[k]));
    }
  }
}

std::pair<double, double> NPlayerOperator::evaluate_at(std::span<const double> u1,
                                                       std::span<const double> u2,
                                                       std::size_t k) const {
  const double nn = static_cast<double>(n_);
  const double z = zeta_[k];

  // Jumps towards state 1 come from the neighbour with one more player in state 1
  // (weight 1 - zeta_k), jumps towards state 2 from the one with one fewer (weight zeta_k).
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  if (k < n_) {
    rhs1 += nn * (1.0 - z) * positive_part(u2[k + 1] - u1[k + 1]) * (u1[k + 1] - u1[k]);
    rhs2 += nn * (1.0 - z) * positive_part(u2[k] - u1[k]) * (u2[k + 1] - u2[k]);
  }
  if (k > 0) {
    rhs1 += nn * z * positive_part(u1[k] - u2[k]) * (u1[k - 1] - u1[k]);
    rhs2 += nn * z * positive_part(u1[k - 1] - u2[k - 1]) * (u2[k - 1] - u2[k]);
  }
  const ValuePair here{u1[k], u2[k]};
  rhs1 += hamiltonian_from_coupling(f1_[k], here, State::one);
  rhs2 += hamiltonian_from_coupling(f2_[k], here, State::two);
  return {-rhs1, -rhs2};
}

void NPlayerOperator::evaluate(std::span<const double> u1, std::span<const double> u2,
                               std::span<double> du1, std::span<double> du2, std::size_t k_begin,
                               std::size_t k_end) const {
  for (std::size_t k = k_begin; k < k_end; ++k) {
    const auto [a, b] = evaluate_at(u1, u2, k);
    du1[k] = a;
    du2[k] = b;
  }
}

std::pair<std::vector<double>, std::vector<double>> rhs_nplayer(const ValueGrid& grid,
                                                                const ModelSpec& model) {
  const std::size_t n = grid.n();
  if (grid.u1.size() != grid.u2.size() || n == 0) {
    throw std::invalid_argument("value grid needs two arrays of equal length >= 2");
  }
  NPlayerOperator op(model, n);
  std::vector<double> du1(n + 1), du2(n + 1);
  op.evaluate(grid.u1, grid.u2, du1, du2, 0, n + 1);
  return {std::move(du1), std::move(du2)};
}

ValueGrid terminal_values(const ModelSpec& model, std::size_t n, double t_final) {
  ValueGrid g{t_final, std::vector<double>(n + 1), std::vector<double>(n + 1)};
  for (std::size_t k = 0; k <= n; ++k) {
    const SimplexPoint th{grid_zeta(k, n)};
    g.u1[k] = model.psi(State::one, th);
    g.u2[k] = model.psi(State::two, th);
    if (!std::isfinite(g.u1[k]) || !std::isfinite(g.u2[k])) {
      throw ConfigError("terminal values are not finite at zeta=" + std::to_string(th.zeta));
    }
  }
  return g;
}

ScalarGrid extract_w(const ValueGrid& grid) {
  ScalarGrid w{grid.t, std::vector<double>(grid.u1.size())};
  for (std::size_t k = 0; k < grid.u1.size(); ++k) w.values[k] = grid.u1[k] - grid.u2[k];
  return w;
}

namespace {

std::set<std::size_t> requested_steps(const TimeGrid& tg, const SolverConfig& cfg) {
  std::set<std::size_t> steps;
  for (double t : cfg.snapshot_times) steps.insert(tg.nearest_step_from_end(t));
  if (cfg.record_stride > 0) {
    for (std::size_t s = 0; s <= tg.steps; s += cfg.record_stride) steps.insert(s);
    steps.insert(tg.steps);
  }
  return steps;
}

}  // namespace

RunArtifact solve_nplayer(const ModelSpec& model, const SolverConfig& cfg,
                          const ValueObserver& observer) {
  const TimeGrid tg = make_time_grid(cfg);
  const std::size_t n = cfg.n_grid;
  const NPlayerOperator op(model, n);
  const auto record = requested_steps(tg, cfg);

  RunArtifact run;
  run.solver = "nplayer";
  run.n_grid = n;
  run.field_names = {"u1", "u2"};

  ValueGrid g = terminal_values(model, n, cfg.t_final);
  std::vector<double> du1(n + 1), du2(n + 1);
  IndexLoop loop(cfg.threads);
  const double nn = static_cast<double>(n);
  bool cfl_warned = false;

  for (std::size_t s = 0;; ++s) {
    g.t = tg.backward_time(s);
    if (record.contains(s)) {
      run.snapshots.push_back({g.t, {g.u1, g.u2}});
      run.diagnostics.push_back(diagnose(extract_w(g), cfg.jump_factor));
    }
    if (observer) observer(g);
    if (s == tg.steps) break;

    if (!cfl_warned) {
      double wmax = 0.0;
      for (std::size_t k = 0; k <= n; ++k) wmax = std::max(wmax, std::abs(g.u1[k] - g.u2[k]));
      if (cfg.dt * nn * wmax > cfg.cfl_limit) {
        cfl_warned = true;
        run.warnings.push_back("cfl: dt*N*max|w| = " + std::to_string(cfg.dt * nn * wmax) +
                               " exceeds " + std::to_string(cfg.cfl_limit) +
                               " at t=" + std::to_string(g.t));
      }
    }

    loop.run(0, n + 1, [&](std::size_t b, std::size_t e) { op.evaluate(g.u1, g.u2, du1, du2, b, e); });
    bool blown = false;
    for (std::size_t k = 0; k <= n; ++k) {
      g.u1[k] -= cfg.dt * du1[k];
      g.u2[k] -= cfg.dt * du2[k];
      if (!(std::abs(g.u1[k]) <= cfg.blowup_bound) || !(std::abs(g.u2[k]) <= cfg.blowup_bound)) {
        blown = true;
      }
    }
    if (blown) {
      throw NumericalError("nplayer blow-up: |u| exceeded " + std::to_string(cfg.blowup_bound) +
                           " at t=" + std::to_string(tg.backward_time(s + 1)));
    }
  }
  run.sort_by_time();
  return run;
}

}  // namespace twostate
