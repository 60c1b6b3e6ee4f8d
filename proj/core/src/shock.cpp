#include "twostate/shock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "twostate/parallel.hpp"

namespace twostate {

namespace {

constexpr std::size_t kJumpWindow = 4;
constexpr double kJumpNoiseFloor = 1e-9;
constexpr double kSignTolerance = 1e-10;
constexpr double kNegativityTolerance = 1e-12;

double median_of(std::vector<double>& v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
  const double upper = v[m];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
  return 0.5 * (lower + upper);
}

std::vector<double> coupling_gap(const ModelSpec& model, std::size_t n) {
  std::vector<double> gap(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const SimplexPoint th{grid_zeta(k, n)};
    gap[k] = model.f(State::one, th) - model.f(State::two, th);
    if (!std::isfinite(gap[k])) {
      throw std::domain_error("coupling is not finite at zeta=" + std::to_string(th.zeta));
    }
  }
  return gap;
}

std::set<std::size_t> recorded_steps(std::size_t steps, const SolverConfig& cfg, bool backward,
                                     const TimeGrid& tg) {
  std::set<std::size_t> out;
  for (double t : cfg.snapshot_times) {
    out.insert(backward ? tg.nearest_step_from_end(t) : tg.nearest_step_from_start(t));
  }
  if (cfg.record_stride > 0) {
    for (std::size_t s = 0; s <= steps; s += cfg.record_stride) out.insert(s);
    out.insert(steps);
  }
  return out;
}

}  // namespace

double scalar_source(double w, double zeta, const ModelSpec& model) {
  const SimplexPoint th{zeta};
  const double abs_w = std::abs(w);
  return model.f(State::one, th) - model.f(State::two, th) - 0.5 * abs_w * w;
}

RunArtifact solve_scalar(const ModelSpec& model, const SolverConfig& cfg) {
  const TimeGrid tg = make_time_grid(cfg);
  const std::size_t n = cfg.n_grid;
  const double nn = static_cast<double>(n);
  const auto zeta = grid_points(n);
  const auto gap = coupling_gap(model, n);
  const auto record = recorded_steps(tg.steps, cfg, true, tg);

  RunArtifact run;
  run.solver = "scalar";
  run.n_grid = n;
  run.field_names = {"w"};

  std::vector<double> w(n + 1), next(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const SimplexPoint th{zeta[k]};
    w[k] = model.psi(State::one, th) - model.psi(State::two, th);
  }

  IndexLoop loop(cfg.threads);
  bool cfl_warned = false;
  for (std::size_t s = 0;; ++s) {
    const double t = tg.backward_time(s);
    if (record.contains(s)) {
      run.snapshots.push_back({t, {w}});
      run.diagnostics.push_back(diagnose(ScalarGrid{t, w}, cfg.jump_factor));
    }
    if (s == tg.steps) break;

    loop.run(0, n + 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const double a = advection_coefficient(w[k], zeta[k]);
        double slope = 0.0;
        if (a > 0.0 && k < n) {
          slope = (w[k + 1] - w[k]) * nn;
        } else if (a < 0.0 && k > 0) {
          slope = (w[k] - w[k - 1]) * nn;
        }
        const double q = gap[k] - 0.5 * std::abs(w[k]) * w[k];
        next[k] = w[k] + cfg.dt * (a * slope + q);
      }
    });

    double amax = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      amax = std::max(amax, std::abs(advection_coefficient(w[k], zeta[k])));
      if (!(std::abs(next[k]) <= cfg.blowup_bound)) {
        throw NumericalError("scalar blow-up: |w| exceeded " + std::to_string(cfg.blowup_bound) +
                             " at t=" + std::to_string(tg.backward_time(s + 1)));
      }
    }
    if (!cfl_warned && cfg.dt * nn * amax > cfg.cfl_limit) {
      cfl_warned = true;
      run.warnings.push_back("cfl: dt*N*max|a| = " + std::to_string(cfg.dt * nn * amax) +
                             " at t=" + std::to_string(t));
    }
    w.swap(next);
  }
  run.sort_by_time();
  return run;
}

namespace {

/// Reads w(t) from a run sorted by time, interpolated onto an n-cell grid.
class WTrajectory {
 public:
  WTrajectory(const RunArtifact& run, std::size_t n) : run_(run), n_(n) {
    if (run.snapshots.empty()) throw ConfigError("density: w run has no snapshots");
    for (std::size_t i = 1; i < run.snapshots.size(); ++i) {
      if (!(run.snapshots[i].t > run.snapshots[i - 1].t)) {
        throw ConfigError("density: w run snapshots must be strictly increasing in time");
      }
    }
  }

  std::vector<double> at(double t) {
    constexpr double tol = 1e-9;
    const auto& snaps = run_.snapshots;
    if (t < snaps.front().t - tol || t > snaps.back().t + tol) {
      throw ConfigError("density: w run does not cover t=" + std::to_string(t));
    }
    while (cursor_ + 1 < snaps.size() && snaps[cursor_ + 1].t <= t + tol) ++cursor_;
    if (std::abs(snaps[cursor_].t - t) <= tol || cursor_ + 1 == snaps.size()) {
      return resample(run_.scalar(cursor_).values, n_);
    }
    const double frac = (t - snaps[cursor_].t) / (snaps[cursor_ + 1].t - snaps[cursor_].t);
    const auto lo = resample(run_.scalar(cursor_).values, n_);
    const auto hi = resample(run_.scalar(cursor_ + 1).values, n_);
    std::vector<double> out(lo.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - frac) * lo[k] + frac * hi[k];
    return out;
  }

 private:
  const RunArtifact& run_;
  std::size_t n_;
  std::size_t cursor_ = 0;
};

}  // namespace

RunArtifact solve_density(const RunArtifact& w_run, const SolverConfig& cfg) {
  const TimeGrid tg = make_time_grid(cfg);
  const std::size_t n = cfg.n_grid;
  if (n < 2) throw ConfigError("density needs n_grid >= 2");
  const double nn = static_cast<double>(n);
  const double h = 1.0 / nn;
  const auto zeta = grid_points(n);
  const auto record = recorded_steps(tg.steps, cfg, false, tg);

  RunArtifact run;
  run.solver = "density";
  run.n_grid = n;
  run.field_names = {"p"};

  std::vector<double> p(n + 1, nn / (nn - 1.0));
  p.front() = 0.0;
  p.back() = 0.0;

  auto mass_of = [&](const std::vector<double>& v) {
    double m = 0.5 * (v.front() + v.back());
    for (std::size_t k = 1; k < n; ++k) m += v[k];
    return m * h;
  };
  const double mass0 = mass_of(p);
  double outflow = 0.0;
  double drift_max = 0.0;
  double min_value = 0.0;

  WTrajectory trajectory(w_run, n);
  std::vector<double> a(n + 1), flux(n);
  IndexLoop loop(cfg.threads);
  bool cfl_warned = false;

  for (std::size_t s = 0;; ++s) {
    const double t = tg.forward_time(s);
    const auto w = trajectory.at(t);
    if (record.contains(s)) {
      const ScalarGrid wg{t, w};
      DiagnosticRow row = diagnose(ScalarGrid{t, p}, cfg.jump_factor, mass_of(p));
      const auto sign = sign_condition_check(wg);
      row.sign_ok_left = sign.left_ok;
      row.sign_ok_right = sign.right_ok;
      run.snapshots.push_back({t, {p}});
      run.diagnostics.push_back(row);
    }
    if (s == tg.steps) break;

    double amax = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      a[k] = advection_coefficient(w[k], zeta[k]);
      amax = std::max(amax, std::abs(a[k]));
    }
    if (!cfl_warned && cfg.dt * nn * amax > cfg.cfl_limit) {
      cfl_warned = true;
      run.warnings.push_back("cfl: dt*N*max|a| = " + std::to_string(cfg.dt * nn * amax) +
                             " at t=" + std::to_string(t));
    }

    // Central-upwind flux at interface k+1/2 with piecewise-constant reconstruction;
    // the one-sided speeds are the range of a over the two adjacent nodes.
    loop.run(0, n, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const double plus = std::max({a[k], a[k + 1], 0.0});
        const double minus = std::min({a[k], a[k + 1], 0.0});
        const double spread = plus - minus;
        if (spread > 0.0) {
          flux[k] = (plus * (a[k] * p[k]) - minus * (a[k + 1] * p[k + 1])) / spread +
                    (plus * minus / spread) * (p[k + 1] - p[k]);
        } else {
          flux[k] = 0.0;
        }
      }
    });
    for (std::size_t k = 1; k < n; ++k) {
      p[k] -= cfg.dt / h * (flux[k] - flux[k - 1]);
      min_value = std::min(min_value, p[k]);
      if (p[k] < -kNegativityTolerance) {
        throw SchemeViolation("density: P=" + std::to_string(p[k]) + " < -1e-12 at zeta=" +
                              std::to_string(zeta[k]) + ", t=" + std::to_string(tg.forward_time(s + 1)));
      }
    }
    outflow += cfg.dt * (flux[n - 1] - flux[0]);
    drift_max = std::max(drift_max, std::abs(mass_of(p) + outflow - mass0));
  }

  run.metrics["initial_mass"] = mass0;
  run.metrics["mass_drift_max"] = drift_max;
  run.metrics["boundary_outflow"] = outflow;
  run.metrics["min_value"] = min_value;
  run.sort_by_time();
  return run;
}

std::vector<std::size_t> jump_detector(const ScalarGrid& grid, double threshold_factor) {
  const auto& v = grid.values;
  if (v.size() < 4) throw std::invalid_argument("jump_detector needs at least 4 grid points");
  const std::size_t m = v.size() - 1;
  std::vector<double> jumps(m);
  double vmax = 0.0;
  for (std::size_t k = 0; k < m; ++k) jumps[k] = std::abs(v[k + 1] - v[k]);
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = kJumpNoiseFloor * vmax;

  std::vector<std::size_t> out;
  std::vector<double> window;
  for (std::size_t k = 0; k < m; ++k) {
    window.clear();
    const std::size_t lo = k >= kJumpWindow ? k - kJumpWindow : 0;
    const std::size_t hi = std::min(m - 1, k + kJumpWindow);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j != k) window.push_back(jumps[j]);
    }
    if (jumps[k] > threshold_factor * median_of(window) && jumps[k] > floor) out.push_back(k);
  }
  return out;
}

double max_slope(const ScalarGrid& grid) {
  const auto& v = grid.values;
  const double nn = static_cast<double>(grid.n());
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) best = std::max(best, std::abs(v[k + 1] - v[k]) * nn);
  return best;
}

std::vector<std::pair<double, double>> max_slope_series(const RunArtifact& run) {
  if (run.snapshots.size() < 2) throw std::invalid_argument("max_slope_series needs >= 2 snapshots");
  std::vector<std::pair<double, double>> out;
  out.reserve(run.snapshots.size());
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto g = run.scalar(i);
    out.emplace_back(g.t, max_slope(g));
  }
  return out;
}

SignCheck sign_condition_check(const ScalarGrid& grid) {
  if (grid.values.empty()) return {};
  return {grid.values.front() >= -kSignTolerance, grid.values.back() <= kSignTolerance};
}

DiagnosticRow diagnose(const ScalarGrid& grid, double jump_factor, std::optional<double> mass) {
  DiagnosticRow row;
  row.t = grid.t;
  if (mass) row.mass = *mass;
  row.max_slope = max_slope(grid);
  if (grid.values.size() >= 4) {
    const auto jumps = jump_detector(grid, jump_factor);
    if (!jumps.empty()) {
      row.shock_zeta_min = jump_location(jumps.front(), grid.n());
      row.shock_zeta_max = jump_location(jumps.back(), grid.n());
    }
  }
  const auto sign = sign_condition_check(grid);
  row.sign_ok_left = sign.left_ok;
  row.sign_ok_right = sign.right_ok;
  return row;
}

ShockCurve shock_curve(const RunArtifact& run, double threshold_factor) {
  ShockCurve curve;
  std::optional<double> previous;
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto g = run.scalar(i);
    if (g.values.size() < 4) continue;
    const auto jumps = jump_detector(g, threshold_factor);
    if (jumps.empty()) continue;

    // Group indices no more than two cells apart into clusters.
    std::vector<std::pair<double, double>> clusters;  // (centre, largest jump)
    std::size_t start = 0;
    for (std::size_t j = 1; j <= jumps.size(); ++j) {
      if (j == jumps.size() || jumps[j] - jumps[j - 1] > 2) {
        double centre = 0.0;
        double biggest = 0.0;
        for (std::size_t c = start; c < j; ++c) {
          centre += jump_location(jumps[c], g.n());
          biggest = std::max(biggest, std::abs(g.values[jumps[c] + 1] - g.values[jumps[c]]));
        }
        clusters.emplace_back(centre / static_cast<double>(j - start), biggest);
        start = j;
      }
    }
    auto best = clusters.begin();
    for (auto it = clusters.begin(); it != clusters.end(); ++it) {
      const bool closer = previous && std::abs(it->first - *previous) < std::abs(best->first - *previous);
      const bool bigger = !previous && it->second > best->second;
      if (closer || bigger) best = it;
    }
    previous = best->first;
    curve.times.push_back(g.t);
    curve.locations.push_back(best->first);
  }
  return curve;
}

std::vector<double> shock_speed(const ShockCurve& curve) {
  const std::size_t m = curve.times.size();
  if (m < 2 || curve.locations.size() != m) throw std::invalid_argument("shock_speed needs >= 2 points");
  std::vector<double> speed(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == m ? m - 1 : i + 1;
    speed[i] = (curve.locations[hi] - curve.locations[lo]) / (curve.times[hi] - curve.times[lo]);
  }
  return speed;
}

}  // namespace twostate
