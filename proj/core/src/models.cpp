#include "twostate/models.hpp"

#include <algorithm>
#include <cmath>

namespace twostate {

void validate(const CesParams& p) {
  if (!(p.a1 >= 0.0 && p.a1 <= 1.0) || !(p.a2 >= 0.0 && p.a2 <= 1.0)) {
    throw ConfigError("CES weights a1, a2 must lie in [0, 1]");
  }
  if (p.r == 0.0 || !std::isfinite(p.r)) throw ConfigError("CES elasticity r must be nonzero");
}

void validate(const IsoParams& p) {
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) throw ConfigError("isoelastic eta must be positive");
  if (!(p.s1 >= 0.0) || !(p.s2 >= 0.0)) throw ConfigError("minimum prices s1, s2 must be nonnegative");
}

double ces_productivity(State i, SimplexPoint theta, const CesParams& p) {
  if (i == State::one) {
    const double t1 = theta.theta1();
    return std::pow(p.a1 * std::pow(t1, p.r) + (1.0 - p.a1) * std::pow(1.0 - t1, p.r), 1.0 / p.r);
  }
  const double t2 = theta.theta2();
  return std::pow(p.a2 * std::pow(1.0 - t2, p.r) + (1.0 - p.a2) * std::pow(t2, p.r), 1.0 / p.r);
}

double isoelastic(double x, double eta) {
  if (eta == 1.0) return std::log(x);
  return (std::pow(x, 1.0 - eta) - 1.0) / (1.0 - eta);
}

double isoelastic_utility(State i, SimplexPoint theta, const IsoParams& p) {
  const double s = i == State::one ? p.s1 : p.s2;
  return isoelastic(theta.theta(i), p.eta) + s;
}

ModelSpec shock_model() {
  ModelSpec m;
  m.name = "shock";
  m.f = [](State i, SimplexPoint th) { return i == State::one ? 1.0 - th.theta1() : 1.0 - th.theta2(); };
  m.psi = [](State i, SimplexPoint th) { return th.theta(i) - 0.5; };
  m.potential = Potential{
      [](SimplexPoint th) { return th.theta1() * th.theta2(); },
      [](SimplexPoint th) {
        const double a = th.theta1() - 0.5;
        const double b = th.theta2() - 0.5;
        return 0.5 * a * a + 0.5 * b * b;
      }};
  return m;
}

namespace {

double terminal_cost(State i, SimplexPoint th) { return 1.0 - th.theta(i); }

}  // namespace

ModelSpec paradigm_model(const CesParams& p) {
  validate(p);
  ModelSpec m;
  m.name = "paradigm";
  m.f = [p](State i, SimplexPoint th) { return ces_productivity(i, th, p); };
  m.psi = terminal_cost;
  return m;
}

ModelSpec consumer_model(const IsoParams& p, double clamp) {
  validate(p);
  if (!(clamp > 0.0 && clamp < 1.0)) throw ConfigError("consumer clamp must lie in (0, 1)");
  ModelSpec m;
  m.name = "consumer";
  m.f = [p, clamp](State i, SimplexPoint th) {
    const double s = i == State::one ? p.s1 : p.s2;
    return s - isoelastic(std::clamp(th.theta(i), clamp, 1.0), p.eta);
  };
  m.psi = terminal_cost;
  return m;
}

}  // namespace twostate
