#include <doctest.h>

#include <cmath>
#include <vector>

#include "twostate/models.hpp"
#include "twostate/nplayer.hpp"
#include "twostate/shock.hpp"

using namespace twostate;

namespace {

SolverConfig small(std::size_t n, double dt, double t_final, std::vector<double> snaps) {
  SolverConfig c;
  c.n_grid = n;
  c.dt = dt;
  c.t_final = t_final;
  c.snapshot_times = std::move(snaps);
  return c;
}

}  // namespace

TEST_CASE("rhs_nplayer hand-evaluated cases at N=2") {
  const ModelSpec m = shock_model();
  {
    const auto [d1, d2] = rhs_nplayer(ValueGrid{0.0, {0, 0, 0}, {1, 1, 1}}, m);
    CHECK(d1[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(d2[1] == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    const auto [d1, d2] = rhs_nplayer(ValueGrid{0.0, {0, 1, 2}, {0, 0, 0}}, m);
    CHECK(d1[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rhs_nplayer is local") {
  const ModelSpec m = shock_model();
  const std::size_t n = 12;
  std::vector<double> u1(n + 1), u2(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    u1[k] = std::sin(1.3 * k);
    u2[k] = std::cos(0.7 * k);
  }
  const auto [a1, a2] = rhs_nplayer(ValueGrid{0.0, u1, u2}, m);
  for (std::size_t j = 0; j <= n; ++j) {
    auto v1 = u1, v2 = u2;
    v1[j] += 0.37;
    v2[j] -= 0.21;
    const auto [b1, b2] = rhs_nplayer(ValueGrid{0.0, v1, v2}, m);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k + 1 >= j && k <= j + 1) continue;
      CHECK(b1[k] == a1[k]);
      CHECK(b2[k] == a2[k]);
    }
  }
}

TEST_CASE("extract_w") {
  const auto w = extract_w(ValueGrid{0.0, {1, 1}, {0, 2}});
  CHECK(w.values == std::vector<double>{1.0, -1.0});
  const auto z = extract_w(ValueGrid{0.0, {0.3, 0.4, 0.5}, {0.3, 0.4, 0.5}});
  for (double v : z.values) CHECK(v == 0.0);
  const auto term = extract_w(terminal_values(shock_model(), 10, 1.0));
  for (std::size_t k = 0; k <= 10; ++k) CHECK(term.values[k] == doctest::Approx(2.0 * grid_zeta(k, 10) - 1.0));
}

TEST_CASE("terminal snapshot equals psi exactly") {
  for (const ModelSpec& m : {shock_model(), paradigm_model(CesParams{}), consumer_model(IsoParams{}, 0.02)}) {
    const RunArtifact run = solve_nplayer(m, small(50, 1e-3, 0.5, {0.0, 0.5}));
    const auto& snap = run.snapshots[*run.find_time(0.5)];
    for (std::size_t k = 0; k <= 50; ++k) {
      const SimplexPoint th{grid_zeta(k, 50)};
      CHECK(snap.fields[0][k] == m.psi(State::one, th));
      CHECK(snap.fields[1][k] == m.psi(State::two, th));
    }
  }
}

TEST_CASE("shock model stays symmetric under zeta -> 1 - zeta with states swapped") {
  double worst = 0.0;
  solve_nplayer(shock_model(), small(60, 1e-4, 2.0, {0.0}), [&](const ValueGrid& g) {
    for (std::size_t k = 0; k <= g.n(); ++k) worst = std::max(worst, std::abs(g.u1[k] - g.u2[g.n() - k]));
  });
  CHECK(worst <= 1e-8);
}

TEST_CASE("grid refinement at early backward times") {
  // The system is autonomous, so half a unit before T is a run with horizon 0.5.
  auto w_at = [](std::size_t n) {
    const RunArtifact run = solve_nplayer(shock_model(), small(n, 2.5e-5, 0.5, {0.0}));
    return run.scalar(0).values;
  };
  const auto ref = w_at(400);
  auto err = [&](std::size_t n) {
    const auto v = w_at(n);
    const std::size_t stride = 400 / n;
    double e = 0.0;
    for (std::size_t k = 0; k <= n; ++k) e = std::max(e, std::abs(v[k] - ref[k * stride]));
    return e;
  };
  const double e100 = err(100), e200 = err(200);
  const double ratio = e100 / e200;
  MESSAGE("refinement errors N=100: " << e100 << " N=200: " << e200 << " ratio " << ratio);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 3.0);
}

TEST_CASE("blow-up is reported") {
  SolverConfig c = small(100, 0.05, 10.0, {0.0});
  c.blowup_bound = 50.0;
  CHECK_THROWS_AS(solve_nplayer(shock_model(), c), NumericalError);
}

TEST_CASE("cfl warning") {
  SolverConfig c = small(100, 1e-2, 1.0, {0.0});
  c.cfl_limit = 0.1;
  const RunArtifact run = solve_nplayer(shock_model(), c);
  REQUIRE(run.warnings.size() == 1);
  CHECK(run.warnings[0].rfind("cfl", 0) == 0);
}

TEST_CASE("snapshots are served by the nearest step and sorted") {
  const RunArtifact run = solve_nplayer(shock_model(), small(20, 0.1, 1.0, {0.71, 0.0, 0.33}));
  REQUIRE(run.snapshots.size() == 3);
  CHECK(run.snapshots[0].t == doctest::Approx(0.0));
  CHECK(run.snapshots[1].t == doctest::Approx(0.3));
  CHECK(run.snapshots[2].t == doctest::Approx(0.7));
  CHECK(run.diagnostics.size() == 3);
  CHECK(run.diagnostics[1].t == run.snapshots[1].t);
}

TEST_CASE("results do not depend on the thread count") {
  SolverConfig c = small(100, 1e-4, 2.0, {0.0, 1.0});
  const RunArtifact serial = solve_nplayer(shock_model(), c);
  c.threads = 4;
  const RunArtifact threaded = solve_nplayer(shock_model(), c);
  for (std::size_t i = 0; i < serial.snapshots.size(); ++i) {
    CHECK(serial.snapshots[i].fields == threaded.snapshots[i].fields);
  }
}

TEST_CASE("shock model: jump of w at t=0 sits at 0.5") {
  const RunArtifact run = solve_nplayer(shock_model(), small(100, 1e-4, 10.0, {0.0}));
  const ScalarGrid w = run.scalar(0);
  std::size_t kmax = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    if (std::abs(w.values[k + 1] - w.values[k]) > std::abs(w.values[kmax + 1] - w.values[kmax])) kmax = k;
  }
  CHECK(std::abs(jump_location(kmax, 100) - 0.5) <= 0.02);
}

TEST_CASE("paradigm model: u1 at t=0 is smallest at zeta=0") {
  const RunArtifact run = solve_nplayer(paradigm_model(CesParams{0.5, 0.9, 0.75}), small(100, 1e-4, 10.0, {0.0}));
  const auto& u1 = run.snapshots[0].fields[0];
  CHECK(std::min_element(u1.begin(), u1.end()) - u1.begin() == 0);
}
