#pragma once

#include <limits>
#include <numbers>
#include <span>

#include "invlab/profile.hpp"
#include "invlab/timeseries.hpp"

namespace invlab::burgers {

/// Axis trace g(x1) = θ0(x1, 0) of a symmetric singular-scalar datum.
struct AxisProfile {
  Profile1D g;
  double period = 2.0 * std::numbers::pi;
};

/// Smooth solution of θ_t + θ θ_x = 0, θ(x, 0) = g(x), up to the first
/// characteristic crossing.
struct BurgersSolution {
  AxisProfile profile;
  double tstar = std::numeric_limits<double>::infinity();
  double gmin = 0.0;
  double gmax = 0.0;

  explicit BurgersSolution(AxisProfile p);
};

/// -1 / min g' when the minimum is negative, +inf otherwise. The minimum comes
/// from a 4096-point scan refined by golden section to 1e-12.
double blowup_time(const AxisProfile& p);

/// Root of θ = g(x - tθ): bisection on [min g, max g] then Newton polish to a
/// residual of 1e-13. Requires 0 <= t < tstar.
double eval(const BurgersSolution& sol, double x, double t);

/// ∂x θ(x, t) = g'(ξ) / (1 + t g'(ξ)), ξ = x - t θ(x, t).
double eval_slope(const BurgersSolution& sol, double x, double t);

/// min over x of eval_slope at each time.
TimeSeries min_slope_series(const BurgersSolution& sol, std::span<const double> times);

}  // namespace invlab::burgers
