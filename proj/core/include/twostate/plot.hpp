#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace twostate::plot {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal SVG line plot; cosmetic only.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::vector<Series>& series);

}  // namespace twostate::plot
