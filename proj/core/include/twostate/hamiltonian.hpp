#pragma once

#include "twostate/types.hpp"

namespace twostate {

/// (x)^+ with (0)^+ = 0.
constexpr double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

/// Switching rates (alpha_1, alpha_2) of a player; the diagonal entry is minus the outflow.
struct RateVector {
  double to_state1 = 0.0;
  double to_state2 = 0.0;

  constexpr double sum() const noexcept { return to_state1 + to_state2; }
};

/// h(z, theta, i) = f(i, theta) - 1/2 ((z^i - z^j)^+)^2 for the quadratic switching cost.
/// Throws std::domain_error if the coupling is not finite at theta.
double hamiltonian_h(ValuePair z, SimplexPoint theta, State i, const ModelSpec& model);

/// Same as hamiltonian_h with the coupling value already evaluated.
constexpr double hamiltonian_from_coupling(double coupling, ValuePair z, State i) noexcept {
  const double gap = positive_part(z.of(i) - z.of(other(i)));
  return coupling - 0.5 * (gap * gap);
}

/// Optimal rate alpha*(z, theta, i); does not depend on theta for the quadratic cost.
constexpr RateVector optimal_rate(ValuePair z, State i) noexcept {
  if (i == State::one) {
    const double jump = positive_part(z.u1 - z.u2);
    return {-jump, jump};
  }
  const double jump = positive_part(z.u2 - z.u1);
  return {jump, -jump};
}

inline RateVector optimal_rate(ValuePair z, SimplexPoint /*theta*/, State i) noexcept {
  return optimal_rate(z, i);
}

/// Mean-field drift g_1(U, theta) = -theta_1 (U1-U2)^+ + theta_2 (U2-U1)^+; g_2 = -g_1.
constexpr double drift_g(ValuePair u, SimplexPoint theta) noexcept {
  return -theta.theta1() * positive_part(u.u1 - u.u2) + theta.theta2() * positive_part(u.u2 - u.u1);
}

}  // namespace twostate
