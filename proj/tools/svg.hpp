#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "moat/eaf.hpp"

namespace moat::tools {

/// One plotted series: mean line plus an optional confidence band.
struct LabeledCurve {
  std::string label;
  std::vector<std::int64_t> budgets;
  std::vector<double> mean;
  std::vector<double> lo;  // empty: no band
  std::vector<double> hi;
};

/// Static line plot with shaded bands, legend and a log-scaled x axis.
/// Each polyline carries its series in data-budgets / data-values attributes
/// (shortest round-trip decimals, matching the CSV export byte for byte).
void write_curves_svg(const std::filesystem::path& path,
                      const std::string& title, const std::string& y_label,
                      const std::vector<LabeledCurve>& curves);

/// Attainment heat map: one rectangle per cell, shaded by fraction in [0,1].
void write_eaf_svg(const std::filesystem::path& path, const std::string& title,
                   const moat::EafGrid& grid);

/// Signed attainment difference, shaded blue (negative) to red (positive).
void write_eaf_diff_svg(const std::filesystem::path& path,
                        const std::string& title,
                        const moat::EafDiffGrid& grid);

}  // namespace moat::tools
