#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/timeseries.hpp"

namespace invlab::harness {

/// Numeric CSV with one header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
  /// (first column, named column); rows with non-finite values are skipped.
  TimeSeries series(std::string_view name, bool magnitude = false) const;
};

Table read_csv(const std::filesystem::path& path);
std::string format_double(double v);  // %.17g

}  // namespace invlab::harness
