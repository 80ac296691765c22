#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/dynamics.hpp"

namespace invlab::harness {

/// Validated contents of a `key = value` run file.
struct RunConfig {
  ModelKind model = ModelKind::SingularScalar;
  int nx = 256;
  int ny = 256;
  double lx = 0.0;  // 0 means 2π
  double ly = 0.0;
  /// Preset name or an expression in x1, x2 for θ (ρ for the modified model).
  std::string ic;
  /// Expression for ω when `ic` is an expression; "0" by default.
  std::string ic_omega = "0";
  double t_end = 0.0;
  double dt = 1e-3;
  double cfl = 0.4;
  bool dealias = true;
  bool project_symmetry = false;
  double hyperviscosity = 0.0;
  std::filesystem::path output_dir = "out";
  /// 0 writes only the initial and final snapshots.
  double snapshot_interval = 0.0;
  /// 0 picks t_end / 100 (or one row when t_end = 0).
  double series_interval = 0.0;
  std::vector<std::string> diagnostics;
  /// Absolute ceiling on max|∇θ|, or nullopt for the resolution ceiling.
  std::optional<double> grad_ceiling = 1e6;

  StepControl step_control() const;
  Grid2D grid() const;
  /// Canonical `key = value` lines, parseable again by parse_config.
  std::string echo() const;
};

/// Names accepted by the `diagnostics` key.
const std::vector<std::string>& known_diagnostics();

/// Throws ValidationError ("line N: ...") on unknown or duplicate keys, bad
/// values and missing model / ic / t_end.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// max|θ0| / (4 min(dx, dy)): the largest gradient the grid can carry with a
/// few points across the front.
double resolution_ceiling(const Grid2D& g, double theta_sup);

}  // namespace invlab::harness
