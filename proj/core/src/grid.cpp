#include "twostate/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twostate {

std::vector<double> grid_points(std::size_t n) {
  std::vector<double> z(n + 1);
  for (std::size_t k = 0; k <= n; ++k) z[k] = grid_zeta(k, n);
  return z;
}

ScalarGrid RunArtifact::scalar(std::size_t snapshot) const {
  const auto& snap = snapshots.at(snapshot);
  ScalarGrid out{snap.t, {}};
  if (snap.fields.size() == 2) {
    const auto& a = snap.fields[0];
    const auto& b = snap.fields[1];
    out.values.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out.values[k] = a[k] - b[k];
  } else {
    out.values = snap.fields.at(0);
  }
  return out;
}

std::optional<std::size_t> RunArtifact::find_time(double t, double tol) const {
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (std::abs(snapshots[i].t - t) <= tol) return i;
  }
  return std::nullopt;
}

void RunArtifact::sort_by_time() {
  // Snapshots and diagnostics are recorded together, so they share an ordering.
  std::vector<std::size_t> order(snapshots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return snapshots[a].t < snapshots[b].t; });
  std::vector<GridSnapshot> snaps;
  std::vector<DiagnosticRow> diags;
  snaps.reserve(order.size());
  for (auto i : order) {
    snaps.push_back(std::move(snapshots[i]));
    if (diagnostics.size() == order.size()) diags.push_back(diagnostics[i]);
  }
  snapshots = std::move(snaps);
  if (diagnostics.size() == order.size()) diagnostics = std::move(diags);
}

std::size_t TimeGrid::nearest_step_from_end(double t) const {
  const double s = std::round((t_final - t) / dt);
  return static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(steps)));
}

std::size_t TimeGrid::nearest_step_from_start(double t) const {
  const double s = std::round(t / dt);
  return static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(steps)));
}

TimeGrid make_time_grid(const SolverConfig& cfg) {
  if (cfg.n_grid < 1) throw ConfigError("n_grid must be positive");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be positive");
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) {
    throw ConfigError("t_final must be nonnegative");
  }
  const double steps = std::round(cfg.t_final / cfg.dt);
  if (std::abs(steps * cfg.dt - cfg.t_final) > 1e-9 * std::max(1.0, cfg.t_final)) {
    throw ConfigError("dt=" + std::to_string(cfg.dt) + " does not divide t_final=" +
                      std::to_string(cfg.t_final));
  }
  for (double t : cfg.snapshot_times) {
    if (t < -1e-12 || t > cfg.t_final + 1e-12) {
      throw ConfigError("snapshot time " + std::to_string(t) + " outside [0, t_final]");
    }
  }
  if (!(cfg.blowup_bound > 0.0)) throw ConfigError("blowup_bound must be positive");
  return {static_cast<std::size_t>(steps), cfg.dt, cfg.t_final};
}

double interpolate_linear(const std::vector<double>& values, double zeta) {
  const std::size_t n = values.size() - 1;
  if (n == 0) return values[0];
  const double x = std::clamp(zeta, 0.0, 1.0) * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::floor(x));
  if (k >= n) return values[n];
  const double frac = x - static_cast<double>(k);
  return (1.0 - frac) * values[k] + frac * values[k + 1];
}

std::vector<double> resample(const std::vector<double>& values, std::size_t n_target) {
  if (values.size() == n_target + 1) return values;
  std::vector<double> out(n_target + 1);
  for (std::size_t k = 0; k <= n_target; ++k) out[k] = interpolate_linear(values, grid_zeta(k, n_target));
  return out;
}

}  // namespace twostate
