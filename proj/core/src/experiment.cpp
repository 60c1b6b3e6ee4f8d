#include "twostate/experiment.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "twostate/csv.hpp"
#include "twostate/hjb.hpp"
#include "twostate/nplayer.hpp"
#include "twostate/plot.hpp"
#include "twostate/shock.hpp"

namespace twostate {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n\"'");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"'");
  return s.substr(first, last - first + 1);
}

double to_real(const std::string& key, const std::string& value) {
  try {
    const double x = csv::parse_double(trim(value));
    if (!std::isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a real number, got '" + value + "'");
  }
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const double x = to_real(key, value);
  if (x < 0.0 || x != std::floor(x) || x > 1e15) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& value) {
  std::string v = trim(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::string to_choice(const std::string& key, const std::string& value,
                      std::initializer_list<const char*> allowed) {
  const std::string v = trim(value);
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw ConfigError(key + ": expected one of " + list + ", got '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  for (char c : value + ",") {
    if (c == ',' || c == ' ' || c == '\t' || c == '[' || c == ']') {
      if (!trim(item).empty()) out.push_back(to_real(key, item));
      item.clear();
    } else {
      item += c;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment.model",
       [](auto& c, auto& k, auto& v) { c.model = to_choice(k, v, {"shock", "paradigm", "consumer"}); }},
      {"experiment.solver",
       [](auto& c, auto& k, auto& v) {
         c.solver = to_choice(k, v, {"nplayer", "hjb", "scalar", "density", "compare"});
       }},
      {"experiment.out_dir", [](auto& c, auto&, auto& v) { c.out_dir = trim(v); }},
      {"experiment.plot", [](auto& c, auto& k, auto& v) { c.plot = to_bool(k, v); }},
      {"grid.n_grid", [](auto& c, auto& k, auto& v) { c.grid.n_grid = to_count(k, v); }},
      {"grid.dt", [](auto& c, auto& k, auto& v) { c.grid.dt = to_real(k, v); }},
      {"grid.t_final", [](auto& c, auto& k, auto& v) { c.grid.t_final = to_real(k, v); }},
      {"grid.snapshots", [](auto& c, auto& k, auto& v) { c.grid.snapshot_times = to_list(k, v); }},
      {"grid.threads",
       [](auto& c, auto& k, auto& v) { c.grid.threads = static_cast<unsigned>(to_count(k, v)); }},
      {"grid.blowup_bound", [](auto& c, auto& k, auto& v) { c.grid.blowup_bound = to_real(k, v); }},
      {"grid.cfl_limit", [](auto& c, auto& k, auto& v) { c.grid.cfl_limit = to_real(k, v); }},
      {"grid.jump_factor", [](auto& c, auto& k, auto& v) { c.grid.jump_factor = to_real(k, v); }},
      {"hjb.c_d", [](auto& c, auto& k, auto& v) { c.c_d = to_real(k, v); }},
      {"density.n_grid", [](auto& c, auto& k, auto& v) { c.density_n_grid = to_count(k, v); }},
      {"density.dt", [](auto& c, auto& k, auto& v) { c.density_dt = to_real(k, v); }},
      {"density.w_source",
       [](auto& c, auto& k, auto& v) { c.w_source = to_choice(k, v, {"nplayer", "scalar"}); }},
      {"compare.exclusion", [](auto& c, auto& k, auto& v) { c.exclusion_cells = to_count(k, v); }},
      {"paradigm.a1", [](auto& c, auto& k, auto& v) { c.ces.a1 = to_real(k, v); }},
      {"paradigm.a2", [](auto& c, auto& k, auto& v) { c.ces.a2 = to_real(k, v); }},
      {"paradigm.r", [](auto& c, auto& k, auto& v) { c.ces.r = to_real(k, v); }},
      {"consumer.eta", [](auto& c, auto& k, auto& v) { c.iso.eta = to_real(k, v); }},
      {"consumer.s1", [](auto& c, auto& k, auto& v) { c.iso.s1 = to_real(k, v); }},
      {"consumer.s2", [](auto& c, auto& k, auto& v) { c.iso.s2 = to_real(k, v); }},
      {"consumer.clamp", [](auto& c, auto& k, auto& v) { c.clamp = to_real(k, v); }},
  };
  return table;
}

std::string time_tag(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
  SolverConfig sc = cfg.grid;
  sc.snapshot_times = resolved_snapshots(cfg);
  return sc;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_run(const RunArtifact& run, const std::string& prefix, const std::filesystem::path& dir,
               ExperimentResult& result) {
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto path = dir / (prefix + "_t" + time_tag(run.snapshots[i].t) + ".csv");
    csv::write_table(path, csv::values_table(run, i));
    result.files.push_back(path);
  }
  result.warnings.insert(result.warnings.end(), run.warnings.begin(), run.warnings.end());
}

void write_diagnostics(const RunArtifact& run, const std::filesystem::path& path, ExperimentResult& result) {
  csv::write_table(path, csv::diagnostics_table(run.diagnostics));
  result.files.push_back(path);
}

void plot_run(const RunArtifact& run, const std::string& prefix, const std::string& title,
              const std::filesystem::path& dir, ExperimentResult& result) {
  for (std::size_t f = 0; f < run.field_names.size(); ++f) {
    std::vector<plot::Series> series;
    for (const auto& snap : run.snapshots) {
      series.push_back({"t=" + time_tag(snap.t), grid_points(snap.fields[f].size() - 1), snap.fields[f]});
    }
    const auto path = dir / (prefix + "_" + run.field_names[f] + ".svg");
    plot::write_svg(path, title + " " + run.field_names[f], "zeta", series);
    result.files.push_back(path);
  }
}

void add_final_summary(const RunArtifact& run, ExperimentResult& result) {
  for (const auto& [k, v] : run.metrics) result.summary[run.solver + "." + k] = v;
  if (run.diagnostics.empty()) return;
  const auto& first = run.diagnostics.front();
  result.summary[run.solver + ".t0.shock_zeta_min"] = first.shock_zeta_min;
  result.summary[run.solver + ".t0.shock_zeta_max"] = first.shock_zeta_max;
  result.summary[run.solver + ".t0.max_slope"] = first.max_slope;
}

/// Dense record of w = u1 - u2 along a backward n-player march, for driving the density.
RunArtifact dense_w_nplayer(const ModelSpec& model, const SolverConfig& sc, std::size_t stride) {
  RunArtifact w;
  w.solver = "w";
  w.n_grid = sc.n_grid;
  w.field_names = {"w"};
  std::size_t level = 0;
  const double half = 0.5 * sc.dt;
  auto observer = [&](const ValueGrid& g) {
    if (level % stride == 0 || std::abs(g.t) < half) {
      w.snapshots.push_back({g.t, {extract_w(g).values}});
    }
    ++level;
  };
  SolverConfig quiet = sc;
  quiet.snapshot_times = {0.0};
  solve_nplayer(model, quiet, observer);
  w.sort_by_time();
  return w;
}

}  // namespace

ExperimentConfig default_config() { return ExperimentConfig{}; }

std::vector<double> resolved_snapshots(const ExperimentConfig& cfg) {
  if (!cfg.grid.snapshot_times.empty()) return cfg.grid.snapshot_times;
  const double t = cfg.grid.t_final;
  return {0.0, 0.25 * t, 0.5 * t, 0.75 * t, t};
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(trim(key));
  if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
  it->second(cfg, it->first, value);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg = default_config();
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string value;
    for (const auto& part : item.inputs) value += (value.empty() ? "" : ",") + part;
    apply_setting(cfg, item.fullname(), value);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in);
}

void validate(const ExperimentConfig& cfg) {
  const SolverConfig sc = solver_config(cfg);
  make_time_grid(sc);
  if (cfg.grid.n_grid < 4) throw ConfigError("grid.n_grid must be at least 4");
  if (!(cfg.grid.jump_factor > 0.0)) throw ConfigError("grid.jump_factor must be positive");
  if (!(cfg.grid.blowup_bound > 0.0)) throw ConfigError("grid.blowup_bound must be positive");
  if (cfg.clamp && !(*cfg.clamp > 0.0 && *cfg.clamp < 1.0)) {
    throw ConfigError("consumer.clamp must lie in (0, 1)");
  }
  const ModelSpec model = make_model(cfg);
  if ((cfg.solver == "hjb" || cfg.solver == "compare") && !model.potential) {
    throw ConfigError("solver " + cfg.solver + " needs a potential game; model '" + cfg.model + "' has none");
  }
  if (cfg.solver == "density") {
    SolverConfig dc = sc;
    dc.n_grid = cfg.density_n_grid;
    dc.dt = cfg.density_dt;
    make_time_grid(dc);
  }
}

ModelSpec make_model(const ExperimentConfig& cfg) {
  try {
    if (cfg.model == "shock") return shock_model();
    if (cfg.model == "paradigm") return paradigm_model(cfg.ces);
    if (cfg.model == "consumer") return consumer_model(cfg.iso, cfg.clamp.value_or(default_clamp(cfg.grid.n_grid)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown model '" + cfg.model + "'");
}

double compare_runs(const RunArtifact& a, const RunArtifact& b, Norm norm, std::optional<IndexWindow> exclusion) {
  if (a.snapshots.empty()) throw ConfigError("compare: first run has no snapshots");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    const auto j = b.find_time(a.snapshots[i].t);
    if (!j) throw ConfigError("compare: no snapshot at t=" + time_tag(a.snapshots[i].t) + " in second run");
    const auto va = a.scalar(i).values;
    auto vb = b.scalar(*j).values;
    if (vb.size() != va.size()) vb = resample(vb, va.size() - 1);
    const double h = 1.0 / static_cast<double>(va.size() - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < va.size(); ++k) {
      if (exclusion && k >= exclusion->first && k <= exclusion->last) continue;
      const double d = std::abs(va[k] - vb[k]);
      acc = norm == Norm::l1 ? acc + h * d : std::max(acc, d);
    }
    worst = std::max(worst, acc);
  }
  return worst;
}

std::optional<IndexWindow> shock_window(const ScalarGrid& grid, double jump_factor, std::size_t cells) {
  const auto jumps = jump_detector(grid, jump_factor);
  if (jumps.empty()) return std::nullopt;
  // Largest cluster of jump indices no more than two apart.
  std::size_t best_first = jumps.front(), best_last = jumps.front(), best_size = 0;
  std::size_t start = 0;
  for (std::size_t j = 1; j <= jumps.size(); ++j) {
    if (j == jumps.size() || jumps[j] - jumps[j - 1] > 2) {
      if (j - start > best_size) {
        best_size = j - start;
        best_first = jumps[start];
        best_last = jumps[j - 1];
      }
      start = j;
    }
  }
  // Jump k sits between nodes k and k+1; drop `cells` nodes on each side of the interface.
  const std::size_t n = grid.n();
  IndexWindow w;
  w.first = best_first + 1 > cells ? best_first + 1 - cells : 0;
  w.last = std::min(n, best_last + cells);
  return w;
}

RunArtifact derivative_run(const RunArtifact& hjb_run) {
  RunArtifact out;
  out.solver = hjb_run.solver;
  out.n_grid = hjb_run.n_grid;
  out.field_names = {"dupsilon"};
  out.diagnostics = hjb_run.diagnostics;
  out.warnings = hjb_run.warnings;
  out.metrics = hjb_run.metrics;
  for (std::size_t i = 0; i < hjb_run.snapshots.size(); ++i) {
    out.snapshots.push_back({hjb_run.snapshots[i].t, {derivative_of_upsilon(hjb_run.scalar(i)).values}});
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const ModelSpec model = make_model(cfg);
  const SolverConfig sc = solver_config(cfg);
  ExperimentResult result;
  ensure_dir(cfg.out_dir);
  const auto& dir = cfg.out_dir;
  const std::string title = cfg.model;

  if (cfg.solver == "nplayer" || cfg.solver == "scalar") {
    const RunArtifact run = cfg.solver == "nplayer" ? solve_nplayer(model, sc) : solve_scalar(model, sc);
    write_run(run, cfg.solver, dir, result);
    write_diagnostics(run, dir / "diagnostics.csv", result);
    if (cfg.plot) plot_run(run, cfg.solver, title, dir, result);
    add_final_summary(run, result);
  } else if (cfg.solver == "hjb") {
    const RunArtifact run = solve_hjb(model, HjConfig{sc, cfg.c_d});
    write_run(run, "hjb", dir, result);
    write_diagnostics(run, dir / "diagnostics.csv", result);
    if (cfg.plot) {
      plot_run(run, "hjb", title, dir, result);
      plot_run(derivative_run(run), "hjb", title, dir, result);
    }
    add_final_summary(run, result);
  } else if (cfg.solver == "density") {
    SolverConfig dc = sc;
    dc.n_grid = cfg.density_n_grid;
    dc.dt = cfg.density_dt;
    const std::size_t stride = 10;
    RunArtifact w;
    if (cfg.w_source == "nplayer") {
      w = dense_w_nplayer(model, sc, stride);
    } else {
      SolverConfig wc = sc;
      wc.snapshot_times = {0.0, sc.t_final};
      wc.record_stride = stride;
      w = solve_scalar(model, wc);
    }
    const RunArtifact run = solve_density(w, dc);
    write_run(run, "density", dir, result);
    write_diagnostics(run, dir / "diagnostics.csv", result);
    if (cfg.plot) plot_run(run, "density", title, dir, result);
    add_final_summary(run, result);
  } else if (cfg.solver == "compare") {
    SolverConfig cc = sc;
    if (std::find(cc.snapshot_times.begin(), cc.snapshot_times.end(), 0.0) == cc.snapshot_times.end()) {
      cc.snapshot_times.insert(cc.snapshot_times.begin(), 0.0);
    }
    const RunArtifact np = solve_nplayer(model, cc);
    const RunArtifact hj = solve_hjb(model, HjConfig{cc, cfg.c_d});
    const RunArtifact dhj = derivative_run(hj);
    write_run(np, "nplayer", dir, result);
    write_run(hj, "hjb", dir, result);
    write_diagnostics(np, dir / "diagnostics.csv", result);
    write_diagnostics(hj, dir / "diagnostics_hjb.csv", result);

    const auto i0 = np.find_time(0.0);
    const auto j0 = dhj.find_time(0.0);
    const ScalarGrid w0 = np.scalar(*i0);
    const ScalarGrid d0 = dhj.scalar(*j0);
    csv::Table table;
    table.header = {"zeta", "w_nplayer", "dupsilon"};
    for (std::size_t k = 0; k < w0.values.size(); ++k) {
      table.rows.push_back({w0.zeta(k), w0.values[k], d0.values[k]});
    }
    const auto path = dir / "compare.csv";
    csv::write_table(path, table);
    result.files.push_back(path);

    RunArtifact np0 = np, dhj0 = dhj;
    np0.snapshots = {np.snapshots[*i0]};
    dhj0.snapshots = {dhj.snapshots[*j0]};
    const auto window = shock_window(w0, cfg.grid.jump_factor, cfg.exclusion_cells);
    result.summary["compare.l1_excluded"] = compare_runs(np0, dhj0, Norm::l1, window);
    result.summary["compare.l1_all"] = compare_runs(np0, dhj0, Norm::l1);
    result.summary["compare.linf_all"] = compare_runs(np0, dhj0, Norm::linf);
    add_final_summary(np, result);
    add_final_summary(hj, result);
    if (cfg.plot) {
      const auto svg = dir / "compare.svg";
      plot::write_svg(svg, title + " t=0", "zeta",
                      {{"u1-u2 (n-player)", grid_points(w0.n()), w0.values},
                       {"dUpsilon/dzeta", grid_points(d0.n()), d0.values}});
      result.files.push_back(svg);
    }
  }
  return result;
}

}  // namespace twostate
