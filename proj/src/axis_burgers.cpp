#include "invlab/axis_burgers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invlab/error.hpp"
#include "minimize.hpp"

namespace invlab::burgers {

double blowup_time(const AxisProfile& p) {
  const auto [x, slope] = detail::scan_min(p.g.df, 0.0, p.period);
  (void)x;
  if (slope >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / slope;
}

BurgersSolution::BurgersSolution(AxisProfile p) : profile(std::move(p)) {
  if (!profile.g.f || !profile.g.df) throw ValidationError("burgers: profile lacks g or g'");
  if (!(profile.period > 0.0)) throw ValidationError("burgers: period must be positive");
  tstar = blowup_time(profile);
  const auto& g = profile.g.f;
  gmin = detail::scan_min(g, 0.0, profile.period).second;
  gmax = -detail::scan_min([&g](double s) { return -g(s); }, 0.0, profile.period).second;
}

namespace {

void check_time(const BurgersSolution& sol, double t) {
  if (!(t >= 0.0)) throw ValidationError("burgers: negative time");
  if (!(t < sol.tstar)) {
    std::ostringstream msg;
    msg << "burgers: t = " << t << " is not before the blowup time " << sol.tstar
        << "; the solution is no longer single-valued";
    throw ValidationError(msg.str());
  }
}

}  // namespace

double eval(const BurgersSolution& sol, double x, double t) {
  check_time(sol, t);
  const auto& g = sol.profile.g;
  if (t == 0.0) return g.f(x);
  // F is strictly increasing for t < tstar since F' = 1 + t g' > 0.
  auto F = [&](double th) { return th - g.f(x - t * th); };
  const double pad = 1e-9 * std::max(1.0, sol.gmax - sol.gmin);
  double lo = sol.gmin - pad;
  double hi = sol.gmax + pad;
  if (F(lo) > 0.0 || F(hi) < 0.0)
    throw InternalError("burgers: root not bracketed by [min g, max g]");
  for (int it = 0; it < 200 && hi - lo > 1e-10 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > 0.0 ? hi : lo) = mid;
  }
  double th = 0.5 * (lo + hi);
  double best = th;
  double best_res = std::abs(F(th));
  for (int it = 0; it < 20 && best_res > 1e-13; ++it) {
    const double dF = 1.0 + t * g.df(x - t * th);
    th -= F(th) / dF;
    const double res = std::abs(F(th));
    if (res < best_res) {
      best_res = res;
      best = th;
    }
  }
  return best;
}

double eval_slope(const BurgersSolution& sol, double x, double t) {
  const double th = eval(sol, x, t);
  const double s0 = sol.profile.g.df(x - t * th);
  return s0 / (1.0 + t * s0);
}

TimeSeries min_slope_series(const BurgersSolution& sol, std::span<const double> times) {
  TimeSeries out;
  for (const double t : times) {
    check_time(sol, t);
    const auto slope = [&](double x) { return eval_slope(sol, x, t); };
    out.push(t, detail::scan_min(slope, 0.0, sol.profile.period).second);
  }
  return out;
}

}  // namespace invlab::burgers
