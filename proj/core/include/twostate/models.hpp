#pragma once

#include <cstddef>

#include "twostate/types.hpp"

namespace twostate {

/// CES productivity parameters: autonomy weights a1, a2 in [0,1] and elasticity r != 0.
struct CesParams {
  double a1 = 0.5;
  double a2 = 0.9;
  double r = 0.75;
};

/// Isoelastic utility parameters: elasticity eta > 0 and minimum prices s1, s2 >= 0.
struct IsoParams {
  double eta = 1.0;
  double s1 = 0.1;
  double s2 = 0.075;
};

void validate(const CesParams& p);
void validate(const IsoParams& p);

/// Singular-utility clamp used by the consumer model: theta_i is evaluated on [eps, 1].
inline double default_clamp(std::size_t n_grid) { return 1.0 / (10.0 * static_cast<double>(n_grid)); }

/// f(1,theta) = [a1 theta1^r + (1-a1)(1-theta1)^r]^(1/r),
/// f(2,theta) = [a2 (1-theta2)^r + (1-a2) theta2^r]^(1/r).
double ces_productivity(State i, SimplexPoint theta, const CesParams& p);

/// (x^(1-eta) - 1)/(1-eta), or ln x when eta == 1.
double isoelastic(double x, double eta);

/// Isoelastic utility of good i including the minimum price: isoelastic(theta_i) + s_i.
double isoelastic_utility(State i, SimplexPoint theta, const IsoParams& p);

/// Shock model: f(1,theta) = 1 - theta1, f(2,theta) = theta1, psi(i) = theta_i - 1/2,
/// potential F = theta1 theta2 and Psi0 = 1/2 (theta1 - 1/2)^2 + 1/2 (theta2 - 1/2)^2.
ModelSpec shock_model();

/// Paradigm model. The coupling is the CES productivity itself (with the usual
/// positive quadratic switching cost); terminal values u1 = 1 - theta1, u2 = 1 - theta2.
ModelSpec paradigm_model(const CesParams& p);

/// Consumer model. The coupling is the price s_i - isoelastic(theta_i), with theta_i
/// clamped to [clamp, 1]; terminal values u1 = 1 - theta1, u2 = 1 - theta2.
ModelSpec consumer_model(const IsoParams& p, double clamp);

}  // namespace twostate
