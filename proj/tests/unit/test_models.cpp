#include <doctest.h>

#include <cmath>

#include "twostate/grid.hpp"
#include "twostate/models.hpp"

using namespace twostate;

TEST_CASE("shock model components") {
  const ModelSpec m = shock_model();
  CHECK(m.f(State::one, SimplexPoint{0.25}) == doctest::Approx(0.75));
  CHECK(m.f(State::two, SimplexPoint{0.25}) == doctest::Approx(0.25));
  CHECK(m.psi(State::one, SimplexPoint{0.5}) == 0.0);
  CHECK(m.psi(State::two, SimplexPoint{0.5}) == 0.0);
  REQUIRE(m.potential);
  CHECK(m.potential->F(SimplexPoint{0.5}) == doctest::Approx(0.25));
  CHECK(m.potential->psi0(SimplexPoint{0.5}) == 0.0);
}

TEST_CASE("shock potential generates the coupling along the simplex") {
  const ModelSpec m = shock_model();
  for (std::size_t n : {20u, 100u}) {
    const double h = 1.0 / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double z = grid_zeta(k, n);
      const double dF = (m.potential->F(SimplexPoint{z + h}) - m.potential->F(SimplexPoint{z - h})) / (2 * h);
      const double df = m.f(State::one, SimplexPoint{z}) - m.f(State::two, SimplexPoint{z});
      worst = std::max(worst, std::abs(dF - df));
    }
    CHECK(worst <= 2.0 * h * h);
  }
}

TEST_CASE("CES productivity values") {
  const CesParams p{0.5, 0.9, 0.75};
  CHECK(ces_productivity(State::one, SimplexPoint{0.5}, p) == doctest::Approx(0.5));
  CHECK(ces_productivity(State::two, SimplexPoint{0.0}, p) == doctest::Approx(std::pow(0.1, 4.0 / 3.0)));
  CHECK(std::pow(0.1, 4.0 / 3.0) == doctest::Approx(0.046416).epsilon(1e-5));
}

TEST_CASE("CES symmetry and monotonicity") {
  const CesParams sym{0.5, 0.9, 0.75};
  for (std::size_t k = 0; k <= 100; ++k) {
    const double z = grid_zeta(k, 100);
    CHECK(ces_productivity(State::one, SimplexPoint{z}, sym) ==
          doctest::Approx(ces_productivity(State::one, SimplexPoint{1.0 - z}, sym)).epsilon(1e-12));
  }
  for (const CesParams& lean : {CesParams{0.8, 0.9, 1.0}, CesParams{1.0, 0.9, 0.75}, CesParams{1.0, 0.9, 2.0}}) {
    for (std::size_t k = 0; k < 100; ++k) {
      CHECK(ces_productivity(State::one, SimplexPoint{grid_zeta(k + 1, 100)}, lean) >=
            ces_productivity(State::one, SimplexPoint{grid_zeta(k, 100)}, lean));
    }
  }
  // With a1 < 1 and r != 1 the slope at theta1 -> 1 is unbounded below.
  const CesParams curved{0.8, 0.9, 0.75};
  CHECK(ces_productivity(State::one, SimplexPoint{1.0}, curved) <
        ces_productivity(State::one, SimplexPoint{0.99}, curved));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(CesParams{1.5, 0.9, 0.75}), ConfigError);
  CHECK_THROWS_AS(validate(CesParams{0.5, 0.9, 0.0}), ConfigError);
  CHECK_THROWS_AS(validate(IsoParams{0.0, 0.1, 0.1}), ConfigError);
  CHECK_THROWS_AS(validate(IsoParams{1.0, -0.1, 0.1}), ConfigError);
  CHECK_THROWS_AS(consumer_model(IsoParams{}, 0.0), ConfigError);
  CHECK_NOTHROW(validate(CesParams{}));
  CHECK_NOTHROW(validate(IsoParams{}));
}

TEST_CASE("isoelastic utility") {
  CHECK(isoelastic_utility(State::one, SimplexPoint{1.0}, IsoParams{1.0, 0.1, 0.2}) == doctest::Approx(0.1));
  CHECK(isoelastic_utility(State::one, SimplexPoint{0.25}, IsoParams{0.5, 0.075, 0.1}) == doctest::Approx(-0.925));
  CHECK(isoelastic_utility(State::two, SimplexPoint{0.75}, IsoParams{0.5, 0.1, 0.075}) == doctest::Approx(-0.925));
}

TEST_CASE("isoelastic limit at eta = 1") {
  const double eps = default_clamp(100);
  for (std::size_t k = 0; k <= 100; ++k) {
    const double x = std::max(grid_zeta(k, 100), eps);
    CHECK(std::abs(isoelastic(x, 1.0 + 1e-6) - std::log(x)) <= 1e-4);
    CHECK(std::abs(isoelastic(x, 1.0 - 1e-6) - std::log(x)) <= 1e-4);
  }
}

TEST_CASE("consumer coupling is clamped at the empty state") {
  const IsoParams p{1.0, 0.1, 0.075};
  const double eps = default_clamp(100);
  CHECK(eps == doctest::Approx(1e-3));
  const ModelSpec m = consumer_model(p, eps);
  CHECK(m.f(State::one, SimplexPoint{0.0}) == doctest::Approx(0.1 - std::log(1e-3)));
  CHECK(m.f(State::two, SimplexPoint{1.0}) == doctest::Approx(0.075 - std::log(1e-3)));
  CHECK(m.f(State::one, SimplexPoint{1.0}) == doctest::Approx(0.1));
  CHECK(std::isfinite(m.f(State::one, SimplexPoint{0.0})));
}

TEST_CASE("terminal data of the paradigm and consumer models") {
  for (const ModelSpec& m : {paradigm_model(CesParams{}), consumer_model(IsoParams{}, default_clamp(100))}) {
    CHECK(m.psi(State::one, SimplexPoint{0.3}) == doctest::Approx(0.7));
    CHECK(m.psi(State::two, SimplexPoint{0.3}) == doctest::Approx(0.3));
    CHECK(m.psi(State::one, SimplexPoint{1.0}) == 0.0);
    CHECK(m.psi(State::two, SimplexPoint{0.0}) == 0.0);
    CHECK_FALSE(m.potential);
  }
}
