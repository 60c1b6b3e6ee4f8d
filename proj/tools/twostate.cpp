#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "twostate/csv.hpp"
#include "twostate/experiment.hpp"
#include "twostate/types.hpp"

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n' ? ' ' : c);
  }
  return out;
}

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << "error kind=" << kind << " message=\"" << escape(message) << "\"\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-state mean field game solvers"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  std::string config_path;
  std::optional<std::string> model, solver, snapshots, out_dir;
  std::optional<std::size_t> n_grid;
  std::optional<double> dt, t_final;
  std::optional<unsigned> threads;
  bool plot = false;
  std::vector<std::string> sets;

  run->add_option("config", config_path, "INI config file")->required();
  run->add_option("--model", model, "shock | paradigm | consumer");
  run->add_option("--solver", solver, "nplayer | hjb | scalar | density | compare");
  run->add_option("--n-grid", n_grid, "grid size N");
  run->add_option("--dt", dt, "time step");
  run->add_option("--t-final", t_final, "horizon T");
  run->add_option("--snapshots", snapshots, "comma-separated snapshot times");
  run->add_option("--out-dir", out_dir, "output directory");
  auto* plot_flag = run->add_flag("--plot", plot, "write SVG line plots");
  run->add_option("--threads", threads, "worker threads (1 = serial)");
  run->add_option("--set", sets, "section.key=value override (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("config", e.what(), 2);
  }

  try {
    auto cfg = twostate::load_config(config_path);
    if (model) twostate::apply_setting(cfg, "experiment.model", *model);
    if (solver) twostate::apply_setting(cfg, "experiment.solver", *solver);
    if (n_grid) cfg.grid.n_grid = *n_grid;
    if (dt) cfg.grid.dt = *dt;
    if (t_final) cfg.grid.t_final = *t_final;
    if (snapshots) twostate::apply_setting(cfg, "grid.snapshots", *snapshots);
    if (out_dir) cfg.out_dir = *out_dir;
    if (plot_flag->count() > 0) cfg.plot = plot;
    if (threads) cfg.grid.threads = *threads;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw twostate::ConfigError("--set expects section.key=value, got '" + s + "'");
      twostate::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }

    const auto result = twostate::run_experiment(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning " << w << '\n';
    for (const auto& [k, v] : result.summary) std::cout << k << '=' << twostate::csv::format_double(v) << '\n';
    std::cout << "files=" << result.files.size() << " out_dir=" << cfg.out_dir.string() << '\n';
    return 0;
  } catch (const twostate::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const twostate::SchemeViolation& e) {
    return fail("scheme", e.what(), 3);
  } catch (const twostate::NumericalError& e) {
    return fail("blowup", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
