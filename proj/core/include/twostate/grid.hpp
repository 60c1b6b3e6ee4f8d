#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twostate/types.hpp"

namespace twostate {

/// zeta_k = k / N.
inline double grid_zeta(std::size_t k, std::size_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

std::vector<double> grid_points(std::size_t n);

/// u^1_k, u^2_k on the N+1 point grid at one time instant.
struct ValueGrid {
  double t = 0.0;
  std::vector<double> u1;
  std::vector<double> u2;

  std::size_t n() const noexcept { return u1.empty() ? 0 : u1.size() - 1; }
};

/// A single real field over the zeta grid (w, Upsilon, P, ...).
struct ScalarGrid {
  double t = 0.0;
  std::vector<double> values;

  std::size_t n() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double zeta(std::size_t k) const { return grid_zeta(k, n()); }
};

struct SolverConfig {
  std::size_t n_grid = 100;
  double dt = 1e-4;
  double t_final = 10.0;
  /// Requested snapshot times; each is served by the nearest time step.
  std::vector<double> snapshot_times;
  /// If nonzero, additionally record every `record_stride`-th step.
  std::size_t record_stride = 0;
  double blowup_bound = 1e6;
  /// Warn when dt * N * max|advection speed| exceeds this.
  double cfl_limit = 0.5;
  double jump_factor = 5.0;
  unsigned threads = 1;
};

struct HjConfig {
  SolverConfig grid;
  /// Dirichlet cap; defaults to 10 * (1 + max_k Psi0(zeta_k)).
  std::optional<double> c_d;
};

/// Per-snapshot diagnostics. NaN marks "not applicable" (e.g. mass for value runs).
struct DiagnosticRow {
  double t = 0.0;
  double mass = std::numeric_limits<double>::quiet_NaN();
  double max_slope = 0.0;
  double shock_zeta_min = std::numeric_limits<double>::quiet_NaN();
  double shock_zeta_max = std::numeric_limits<double>::quiet_NaN();
  bool sign_ok_left = true;
  bool sign_ok_right = true;
};

struct GridSnapshot {
  double t = 0.0;
  std::vector<std::vector<double>> fields;
};

/// Time-indexed grids produced by one solver run, sorted by increasing t.
struct RunArtifact {
  std::string solver;
  std::size_t n_grid = 0;
  std::vector<std::string> field_names;
  std::vector<GridSnapshot> snapshots;
  std::vector<DiagnosticRow> diagnostics;
  std::vector<std::string> warnings;
  /// Run-level metrics (e.g. "mass_drift_max", "min_value").
  std::map<std::string, double> metrics;

  /// The scalar the diagnostics refer to: u1 - u2 for value-pair runs, else the only field.
  ScalarGrid scalar(std::size_t snapshot) const;
  std::optional<std::size_t> find_time(double t, double tol = 1e-9) const;
  void sort_by_time();
};

/// Backward/forward step bookkeeping shared by the solvers.
struct TimeGrid {
  std::size_t steps = 0;
  double dt = 0.0;
  double t_final = 0.0;

  /// Time after `s` backward steps from t_final.
  double backward_time(std::size_t s) const { return t_final - static_cast<double>(s) * dt; }
  /// Time after `s` forward steps from 0.
  double forward_time(std::size_t s) const { return static_cast<double>(s) * dt; }
  std::size_t nearest_step_from_end(double t) const;
  std::size_t nearest_step_from_start(double t) const;
};

/// Validates n_grid, dt, t_final and that dt divides t_final; throws ConfigError otherwise.
TimeGrid make_time_grid(const SolverConfig& cfg);

/// Linear interpolation of `values` (grid with values.size()-1 cells) at zeta.
double interpolate_linear(const std::vector<double>& values, double zeta);
std::vector<double> resample(const std::vector<double>& values, std::size_t n_target);

}  // namespace twostate
