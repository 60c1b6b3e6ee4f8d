#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "twostate/csv.hpp"
#include "twostate/experiment.hpp"
#include "twostate/models.hpp"

using namespace twostate;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("twostate_unit_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

RunArtifact constant_run(double value, std::size_t n, std::vector<double> times) {
  RunArtifact r;
  r.field_names = {"value"};
  for (double t : times) r.snapshots.push_back({t, {std::vector<double>(n + 1, value)}});
  return r;
}

}  // namespace

TEST_CASE("config file parsing") {
  std::istringstream in(R"(
# comment
[experiment]
model = consumer
solver = scalar
out_dir = results/x
plot = true

[grid]
n_grid = 50
dt = 0.001
t_final = 2
snapshots = 2, 0, 1
threads = 3

[consumer]
eta = 0.5
s1 = 0.075
s2 = 0.1
clamp = 0.01

[compare]
exclusion = 3
)");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.model == "consumer");
  CHECK(c.solver == "scalar");
  CHECK(c.out_dir == std::filesystem::path("results/x"));
  CHECK(c.plot);
  CHECK(c.grid.n_grid == 50);
  CHECK(c.grid.dt == 0.001);
  CHECK(c.grid.t_final == 2.0);
  CHECK(c.grid.snapshot_times == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(c.grid.threads == 3);
  CHECK(c.iso.eta == 0.5);
  CHECK(c.iso.s1 == 0.075);
  CHECK(c.iso.s2 == 0.1);
  CHECK(c.clamp == 0.01);
  CHECK(c.exclusion_cells == 3);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("config defaults") {
  const ExperimentConfig c = default_config();
  CHECK(c.grid.n_grid == 100);
  CHECK(c.grid.dt == 1e-4);
  CHECK(c.grid.t_final == 10.0);
  CHECK(resolved_snapshots(c) == std::vector<double>{0.0, 2.5, 5.0, 7.5, 10.0});
  CHECK(c.density_n_grid == 125);
}

TEST_CASE("config errors") {
  ExperimentConfig c = default_config();
  CHECK_THROWS_AS(apply_setting(c, "grid.nope", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "grid.n_grid", "1.5"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "grid.dt", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "experiment.model", "weather"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "experiment.plot", "maybe"), ConfigError);
  std::istringstream bad("[grid]\nwidth = 3\n");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  c.model = "paradigm";
  c.solver = "hjb";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.solver = "nplayer";
  c.ces.r = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = default_config();
  c.grid.dt = 0.3;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("compare_runs") {
  const RunArtifact one = constant_run(1.0, 10, {0.0, 1.0});
  const RunArtifact two = constant_run(2.0, 10, {0.0, 1.0});
  CHECK(compare_runs(one, one, Norm::l1) == 0.0);
  CHECK(compare_runs(one, two, Norm::linf) == 1.0);
  CHECK(compare_runs(one, two, Norm::l1) == doctest::Approx(1.1));
  CHECK(compare_runs(one, two, Norm::l1, IndexWindow{0, 4}) == doctest::Approx(0.6));
  CHECK(compare_runs(one, constant_run(2.0, 40, {0.0, 1.0}), Norm::linf) == 1.0);
  CHECK_THROWS_AS(compare_runs(one, constant_run(1.0, 10, {0.5}), Norm::l1), ConfigError);
}

TEST_CASE("shock window") {
  std::vector<double> step(101);
  for (std::size_t k = 0; k <= 100; ++k) step[k] = k > 49 ? 1.0 : -1.0;
  const auto w = shock_window(ScalarGrid{0.0, step}, 5.0, 5);
  REQUIRE(w);
  CHECK(w->first == 45);
  CHECK(w->last == 54);
  std::vector<double> lin(101);
  for (std::size_t k = 0; k <= 100; ++k) lin[k] = grid_zeta(k, 100);
  CHECK_FALSE(shock_window(ScalarGrid{0.0, lin}, 5.0, 5));
}

TEST_CASE("nplayer experiment writes snapshots whose terminal rows equal psi") {
  ExperimentConfig c = default_config();
  c.out_dir = scratch("nplayer");
  c.grid.t_final = 1.0;
  c.grid.dt = 1e-3;
  const auto result = run_experiment(c);
  CHECK(result.files.size() == 6);
  const csv::Table t = csv::read_table(c.out_dir / "nplayer_t1.000000.csv");
  const ModelSpec m = shock_model();
  for (const auto& row : t.rows) {
    CHECK(row[0] == 1.0);
    CHECK(row[2] == m.psi(State::one, SimplexPoint{row[1]}));
    CHECK(row[3] == m.psi(State::two, SimplexPoint{row[1]}));
  }
  const csv::Table d = csv::read_table(c.out_dir / "diagnostics.csv");
  CHECK(d.header == std::vector<std::string>{"t", "mass", "max_slope", "shock_zeta_min", "shock_zeta_max",
                                             "sign_ok_left", "sign_ok_right"});
  CHECK(d.rows.size() == 5);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("compare experiment") {
  ExperimentConfig c = default_config();
  c.solver = "compare";
  c.out_dir = scratch("compare");
  c.plot = true;
  const auto result = run_experiment(c);
  const csv::Table t = csv::read_table(c.out_dir / "compare.csv");
  CHECK(t.header == std::vector<std::string>{"zeta", "w_nplayer", "dupsilon"});
  CHECK(t.rows.size() == 101);
  CHECK(result.summary.at("compare.l1_excluded") <= 0.05);
  CHECK(std::filesystem::exists(c.out_dir / "compare.svg"));
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("consumer diagnostics report the jump near 0.65") {
  ExperimentConfig c = default_config();
  c.model = "consumer";
  c.out_dir = scratch("consumer");
  c.grid.snapshot_times = {0.0};
  run_experiment(c);
  const csv::Table d = csv::read_table(c.out_dir / "diagnostics.csv");
  REQUIRE(d.rows.size() == 1);
  CHECK(std::abs(d.rows[0][d.column("shock_zeta_min")] - 0.65) <= 0.05);
  CHECK(std::abs(d.rows[0][d.column("shock_zeta_max")] - 0.65) <= 0.05);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("density experiment from either w source") {
  for (const char* source : {"nplayer", "scalar"}) {
    ExperimentConfig c = default_config();
    c.solver = "density";
    c.w_source = source;
    c.grid.t_final = 2.0;
    c.out_dir = scratch(std::string("density_") + source);
    const auto result = run_experiment(c);
    CHECK(result.summary.at("density.mass_drift_max") <= 1e-6);
    CHECK(result.summary.at("density.min_value") >= -1e-12);
    const csv::Table t = csv::read_table(c.out_dir / "density_t0.000000.csv");
    CHECK(t.header == std::vector<std::string>{"t", "zeta", "value"});
    CHECK(t.rows.size() == 126);
    std::filesystem::remove_all(c.out_dir);
  }
}
