#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "twostate/grid.hpp"
#include "twostate/types.hpp"

namespace twostate {

// Scalar reduction w = U1 - U2 of the two-state system:
//
//   -w_t = a(w, zeta) w_zeta + q(w, zeta),
//   a(w, zeta) = ((1 - 2 zeta)|w| - w) / 2   (= g_1((w, 0), theta)),
//   q(w, zeta) = f(1, theta) - f(2, theta) - |w| w / 2,
//
// and the density P transported by the mean-field drift, P_t + (a P)_zeta = 0.

/// a(w, zeta) = ((1 - 2 zeta)|w| - w) / 2.
constexpr double advection_coefficient(double w, double zeta) noexcept {
  const double abs_w = w < 0.0 ? -w : w;
  return ((1.0 - 2.0 * zeta) * abs_w - w) / 2.0;
}

/// q(w, zeta) = f(1, theta) - f(2, theta) - |w| w / 2.
double scalar_source(double w, double zeta, const ModelSpec& model);

/// First-order upwind march of the scalar equation from w(T) = psi(1) - psi(2).
/// The one-sided difference follows the sign of a; at zeta = 0 and 1 the
/// coefficient never points outward, so no exterior data is needed.
RunArtifact solve_scalar(const ModelSpec& model, const SolverConfig& cfg);

/// Forward-in-time central-upwind solve of P_t + (a(w) P)_zeta = 0 on n_grid cells,
/// with P(., 0) = const on the interior (normalized to unit trapezoidal mass) and
/// homogeneous Dirichlet values at zeta = 0, 1.
///
/// `w_run` provides w at times covering [0, t_final]; it is interpolated linearly
/// in time and space. Metrics: "mass_drift_max" (|mass + outflow - 1|),
/// "min_value", "boundary_outflow". Throws SchemeViolation if P < -1e-12.
RunArtifact solve_density(const RunArtifact& w_run, const SolverConfig& cfg);

/// (p_right - p_left) s_dot + (r_right p_right - r_left p_left); zero when [P] s_dot = -[rP].
constexpr double rankine_hugoniot_residual(double p_left, double p_right, double r_left,
                                           double r_right, double s_dot) noexcept {
  return (p_right - p_left) * s_dot + (r_right * p_right - r_left * p_left);
}

/// Indices k whose jump |v[k+1] - v[k]| exceeds threshold_factor times the median
/// jump of the neighbouring cells (4 on each side) and a noise floor of
/// 1e-9 * max|v|. Requires at least 4 points.
std::vector<std::size_t> jump_detector(const ScalarGrid& grid, double threshold_factor);

/// Interface location zeta_{k+1/2} of jump index k on an n-cell grid.
inline double jump_location(std::size_t k, std::size_t n) {
  return (static_cast<double>(k) + 0.5) / static_cast<double>(n);
}

/// max_k |v[k+1] - v[k]| * N.
double max_slope(const ScalarGrid& grid);

/// (t, max slope) for each snapshot of `run` (on its scalar field). Needs >= 2 snapshots.
std::vector<std::pair<double, double>> max_slope_series(const RunArtifact& run);

struct SignCheck {
  bool left_ok = true;   // w(0) >= -1e-10
  bool right_ok = true;  // w(1) <= 1e-10
};

SignCheck sign_condition_check(const ScalarGrid& grid);

/// Diagnostics row for a grid: slope, detected jumps and sign conditions.
DiagnosticRow diagnose(const ScalarGrid& grid, double jump_factor,
                       std::optional<double> mass = std::nullopt);

/// Shock positions over time, one entry per snapshot where the detector fires.
struct ShockCurve {
  std::vector<double> times;
  std::vector<double> locations;
};

/// Tracks the centre of the detected jump cluster nearest to the previous location.
ShockCurve shock_curve(const RunArtifact& run, double threshold_factor);

/// ds/dt by centred finite differences (one-sided at the ends). Needs >= 2 points.
std::vector<double> shock_speed(const ShockCurve& curve);

}  // namespace twostate
