#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invlab/dynamics.hpp"
#include "invlab/grid.hpp"
#include "invlab/timeseries.hpp"

namespace invlab {
namespace oracles {
struct FieldSample;
struct OracleField;
}  // namespace oracles

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct SpaceTime {
  double x1 = 0.0;
  double x2 = 0.0;
  double t = 0.0;
};

struct GradMax {
  double value = 0.0;
  Point loc;
};

/// max over nodes of |∇f| with spectral derivatives.
GradMax sup_grad(const Field& f);

double l2_norm(const Field& f);  // (∫ f²)^{1/2}
double linf_norm(const Field& f);
double mean(const Field& f);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct GrowthFit {
  double rate = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  Window window;
  std::size_t samples = 0;
};

/// Least squares of log|v| against t over the window (default: the last half
/// of the series). Needs >= 5 samples in the window and no zero values.
GrowthFit fit_growth_rate(const TimeSeries& s, std::optional<Window> window = std::nullopt);

struct BlowupEstimate {
  double t_est = 0.0;  // +inf when 1/v is not decreasing
  double r2 = 0.0;
  Window window;
  std::optional<std::string> warning;
};

/// Fits a line to (t, 1/v) over the window and returns its root. v is a
/// positive magnitude such as |min slope|. Non-monotone input only attaches a
/// warning.
BlowupEstimate extrapolate_blowup(const TimeSeries& s, std::optional<Window> window = std::nullopt);

struct Residual {
  double theta = 0.0;      // transport equation
  double omega = 0.0;      // vorticity equation (0 for the singular scalar)
  double kinematic = 0.0;  // |u - ∇⊥ψ|, plus |-∂x2 ψ - θ| for the singular scalar
};

/// Equation left-minus-right at one sample under `model`.
Residual residual_at(const oracles::FieldSample& s, ModelKind model);

/// Max residual of a closed-form family over the given points.
Residual residual(const oracles::OracleField& field, ModelKind model,
                  std::span<const SpaceTime> points);

/// Residual of a numerical trajectory at the middle of three equally spaced
/// snapshots: spectral space derivatives, central difference in time, max over
/// nodes. The kinematic slot is left at zero (velocity is reconstructed, not
/// independent data).
Residual residual(const State& prev, const State& mid, const State& next);

/// Random points with |x2| >= min_abs_x2, x in [-extent, extent]², t in [0, t_max].
std::vector<SpaceTime> random_points(std::size_t n, unsigned seed, double extent, double t_max,
                                     double min_abs_x2 = 1e-3);

enum class Parity { Even, Odd };

/// max |f(x1, x2) ∓ f(x1, -x2)| over nodes (− for Even, + for Odd).
double symmetry_error(const Field& f, Parity parity);

struct ConservationRow {
  double t = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double mean = 0.0;
  std::optional<double> l2_omega;
  double l2_drift = 0.0;  // relative to the first row
  double linf_drift = 0.0;
  double mean_drift = 0.0;  // absolute
};

std::vector<ConservationRow> conservation_report(std::span<const State> states);

}  // namespace invlab
