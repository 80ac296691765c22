#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "invlab/diagnostics.hpp"
#include "invlab/dynamics.hpp"
#include "invlab/harness/config.hpp"
#include "invlab/timeseries.hpp"

namespace invlab::harness {

enum ExitCode : int { kOk = 0, kCrash = 1, kValidation = 2, kBlowup = 3, kOracleFailure = 4 };

struct RunReport {
  int exit_status = kOk;
  std::optional<BlowupSignal> blowup;
  long steps = 0;
  std::size_t series_rows = 0;
  std::size_t snapshots = 0;
  double wall_seconds = 0.0;
  double t_final = 0.0;
};

/// Runs one config, writing series.csv, snapshot files and meta.txt into
/// config.output_dir. Scalar runs log t,L2,Linf,mean,supgrad,min_axis_slope;
/// vorticity runs log t,L2,Linf,mean,supgrad,L2_omega,supgrad_omega.
RunReport run(const RunConfig& config);

struct OracleReport {
  std::string family;
  std::string preset;
  std::string label;
  Residual residual;
  std::size_t npoints = 0;
  double threshold = 1e-10;
  bool passed = false;
  TimeSeries envelope;
};

/// Residuals at npoints random points (|x| <= 1, t in [0, 1], off x2 = 0) plus
/// a growth envelope of |∂x2 θ| (|∂x2 ω| for the modified family) on [-1, 1].
/// Writes envelope.csv when out_dir is given.
OracleReport oracle_check(const std::string& family, const std::string& preset,
                          std::size_t npoints = 500, unsigned seed = 1,
                          const std::optional<std::filesystem::path>& out_dir = std::nullopt);

struct ConvergenceRow {
  int nx = 0;
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;  // log2 ratio against the previous row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> temporal;  // config grid, dt halved per level
  std::vector<ConvergenceRow> spatial;   // nx doubled per level up to config.nx, finest dt
};

/// Max axis error against the Burgers solution at t_end. Needs levels >= 3,
/// the singular scalar model and an x2-even initial condition.
ConvergenceTable convergence(const RunConfig& base, int levels, bool deterministic = false);

/// Worker cap from INVLAB_THREADS (default: hardware concurrency, at least 1).
unsigned worker_limit();

}  // namespace invlab::harness
