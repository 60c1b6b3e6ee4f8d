#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twostate {

/// The two states a player can occupy.
enum class State : int { one = 1, two = 2 };

constexpr State other(State i) noexcept { return i == State::one ? State::two : State::one; }

/// Population distribution theta = (zeta, 1 - zeta); zeta is the fraction in state 1.
struct SimplexPoint {
  double zeta = 0.0;

  constexpr double theta1() const noexcept { return zeta; }
  constexpr double theta2() const noexcept { return 1.0 - zeta; }
  constexpr double theta(State i) const noexcept { return i == State::one ? theta1() : theta2(); }
};

/// Values (or value differences) of a player in state 1 and state 2.
struct ValuePair {
  double u1 = 0.0;
  double u2 = 0.0;

  constexpr double of(State i) const noexcept { return i == State::one ? u1 : u2; }
};

using CouplingFn = std::function<double(State, SimplexPoint)>;
using PotentialFn = std::function<double(SimplexPoint)>;

/// Potential F with f(i, theta) = dF/dtheta_i, and the terminal potential Psi0.
struct Potential {
  PotentialFn F;
  PotentialFn psi0;
};

/// A two-state game: running-cost coupling f, terminal values psi, optional potential.
struct ModelSpec {
  std::string name;
  CouplingFn f;
  CouplingFn psi;
  std::optional<Potential> potential;
};

// Errors. Everything the solvers throw derives from one of these.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a solver leaves its stability region (values exceed the blow-up bound).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a scheme invariant (e.g. positivity of the density) is violated.
class SchemeViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace twostate
