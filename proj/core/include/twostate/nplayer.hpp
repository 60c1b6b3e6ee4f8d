#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "twostate/grid.hpp"
#include "twostate/types.hpp"

namespace twostate {

/// Right-hand side of the N+1 player equilibrium system on the simplex grid,
/// with the coupling f(i, zeta_k) evaluated once at construction.
///
/// evaluate() returns du/dt; the backward march is u(t - dt) = u(t) - dt * du/dt.
/// Index k reads only k-1, k, k+1, and the boundary rows never read outside [0, N].
class NPlayerOperator {
 public:
  NPlayerOperator(const ModelSpec& model, std::size_t n);

  std::size_t n() const noexcept { return n_; }

  /// du/dt for indices [k_begin, k_end).
  void evaluate(std::span<const double> u1, std::span<const double> u2, std::span<double> du1,
                std::span<double> du2, std::size_t k_begin, std::size_t k_end) const;

  std::pair<double, double> evaluate_at(std::span<const double> u1, std::span<const double> u2,
                                        std::size_t k) const;

 private:
  std::size_t n_;
  std::vector<double> zeta_;
  std::vector<double> f1_;
  std::vector<double> f2_;
};

/// (du1/dt, du2/dt) on the whole grid.
std::pair<std::vector<double>, std::vector<double>> rhs_nplayer(const ValueGrid& grid,
                                                                const ModelSpec& model);

/// Terminal grid u^i_k(T) = psi(i, zeta_k).
ValueGrid terminal_values(const ModelSpec& model, std::size_t n, double t_final);

/// Called at every time level (including T and 0) of a backward march.
using ValueObserver = std::function<void(const ValueGrid&)>;

/// Explicit Euler march of the N+1 player system from T back to 0.
///
/// Records the grids nearest to cfg.snapshot_times (fields "u1", "u2") with
/// diagnostics on w = u1 - u2. Throws NumericalError if |u| exceeds cfg.blowup_bound.
RunArtifact solve_nplayer(const ModelSpec& model, const SolverConfig& cfg,
                          const ValueObserver& observer = {});

/// w = u1 - u2.
ScalarGrid extract_w(const ValueGrid& grid);

}  // namespace twostate
