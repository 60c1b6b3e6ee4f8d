#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twostate/grid.hpp"
#include "twostate/models.hpp"
#include "twostate/types.hpp"

namespace twostate {

/// Everything one `run` invocation needs. Keys in config files are
/// `<section>.<key>`; see README for the full list.
struct ExperimentConfig {
  // [experiment]
  std::string model = "shock";     // shock | paradigm | consumer
  std::string solver = "nplayer";  // nplayer | hjb | scalar | density | compare
  std::filesystem::path out_dir = "out";
  bool plot = false;

  // [grid]
  SolverConfig grid{};

  // [hjb]
  std::optional<double> c_d;

  // [density]
  std::size_t density_n_grid = 125;
  double density_dt = 1e-4;
  std::string w_source = "nplayer";  // nplayer | scalar

  // [compare]
  std::size_t exclusion_cells = 5;

  // [paradigm], [consumer]
  CesParams ces{};
  IsoParams iso{};
  std::optional<double> clamp;  // default 1/(10 N)
};

/// Defaults: N=100, dt=1e-4, T=10. Snapshots left empty resolve to {0, T/4, T/2, 3T/4, T}.
ExperimentConfig default_config();

std::vector<double> resolved_snapshots(const ExperimentConfig& cfg);

/// Applies one `section.key = value` assignment. Throws ConfigError on unknown keys
/// or malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads an INI-style file ([section] headers, key = value lines, # comments).
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::istream& in);

/// Checks cross-field constraints (model exists, hjb needs a potential, ...).
void validate(const ExperimentConfig& cfg);

ModelSpec make_model(const ExperimentConfig& cfg);

enum class Norm { l1, linf };

/// Indices [first, last] (inclusive, on the first run's grid) left out of a comparison.
struct IndexWindow {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Discrete norm of the difference of the scalar fields of `a` and `b`, maximised over
/// the snapshots of `a`. Every snapshot of `a` needs a snapshot of `b` at the same time
/// (ConfigError otherwise); `b` is interpolated onto `a`'s grid if the sizes differ.
/// L1 is h * sum |a - b|.
double compare_runs(const RunArtifact& a, const RunArtifact& b, Norm norm,
                    std::optional<IndexWindow> exclusion = std::nullopt);

/// Jump indices of the largest detected cluster on `grid`, widened by `cells` on each
/// side and clipped to the grid. Empty if the detector does not fire.
std::optional<IndexWindow> shock_window(const ScalarGrid& grid, double jump_factor, std::size_t cells);

/// Replaces each Upsilon snapshot by its centred derivative (field "dupsilon").
RunArtifact derivative_run(const RunArtifact& hjb_run);

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
  std::map<std::string, double> summary;
};

/// Runs the selected pipeline and writes CSVs (and SVG plots if enabled) to out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace twostate
