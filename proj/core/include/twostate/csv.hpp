#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "twostate/grid.hpp"

namespace twostate::csv {

/// Shortest-round-trip is not enough for diffing across platforms; we always
/// print 17 significant digits. NaN prints as "nan".
std::string format_double(double x);
double parse_double(std::string_view text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
};

void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(const std::filesystem::path& path);

/// Values file for one snapshot: columns (t, zeta, u1, u2) for value-pair runs,
/// otherwise (t, zeta, value).
Table values_table(const RunArtifact& run, std::size_t snapshot);

/// Columns (t, mass, max_slope, shock_zeta_min, shock_zeta_max, sign_ok_left, sign_ok_right).
Table diagnostics_table(const std::vector<DiagnosticRow>& rows);

}  // namespace twostate::csv
