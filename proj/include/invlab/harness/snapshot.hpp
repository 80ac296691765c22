#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "invlab/grid.hpp"

namespace invlab::harness {

/// Binary field dump:
///   "INVLAB1 <nx> <ny> <nfields> <t>\n", one name line per field, then the
///   fields as little-endian float64, row-major with x2 fastest, in header order.
struct Snapshot {
  int nx = 0;
  int ny = 0;
  double t = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> fields;
};

void write_snapshot(const std::filesystem::path& path, double t,
                    const std::vector<std::string>& names, const std::vector<const Field*>& fields);
/// Throws ValidationError on malformed headers or a truncated payload.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace invlab::harness
