#include "twostate/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twostate::csv {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

void write_table(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line)) return table;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != table.header.size()) throw std::runtime_error("ragged row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table values_table(const RunArtifact& run, std::size_t snapshot) {
  const auto& snap = run.snapshots.at(snapshot);
  Table table;
  table.header = {"t", "zeta"};
  if (snap.fields.size() == 2) {
    table.header.insert(table.header.end(), {"u1", "u2"});
  } else {
    table.header.emplace_back("value");
  }
  const std::size_t points = snap.fields.at(0).size();
  const std::size_t n = points - 1;
  for (std::size_t k = 0; k < points; ++k) {
    std::vector<double> row{snap.t, grid_zeta(k, n)};
    for (const auto& f : snap.fields) row.push_back(f[k]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table diagnostics_table(const std::vector<DiagnosticRow>& rows) {
  Table table;
  table.header = {"t", "mass", "max_slope", "shock_zeta_min", "shock_zeta_max", "sign_ok_left", "sign_ok_right"};
  for (const auto& r : rows) {
    table.rows.push_back({r.t, r.mass, r.max_slope, r.shock_zeta_min, r.shock_zeta_max,
                          r.sign_ok_left ? 1.0 : 0.0, r.sign_ok_right ? 1.0 : 0.0});
  }
  return table;
}

}  // namespace twostate::csv
