#include "invlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "invlab/error.hpp"
#include "invlab/oracles.hpp"
#include "invlab/spectral.hpp"

namespace invlab {
namespace sp = spectral;

GradMax sup_grad(const Field& f) {
  const Spectrum fh = sp::forward(f);
  const Field fx = sp::inverse_unchecked(sp::ddx1(fh));
  const Field fy = sp::inverse_unchecked(sp::ddx2(fh));
  GradMax best;
  const Grid2D& g = f.grid;
  for (int j = 0; j < g.nx; ++j) {
    for (int k = 0; k < g.ny; ++k) {
      const double v = std::hypot(fx(j, k), fy(j, k));
      if (v > best.value) best = {v, {g.x1(j), g.x2(k)}};
    }
  }
  return best;
}

double l2_norm(const Field& f) {
  double acc = 0.0;
  for (const double v : f.values) acc += v * v;
  return std::sqrt(acc * f.grid.dx() * f.grid.dy());
}

double linf_norm(const Field& f) {
  double m = 0.0;
  for (const double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double mean(const Field& f) {
  double acc = 0.0;
  for (const double v : f.values) acc += v;
  return acc / static_cast<double>(f.values.size());
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A flat series is fitted perfectly.
  fit.r2 = syy <= 1e-300 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

Window resolve_window(const TimeSeries& s, std::optional<Window> window) {
  if (s.empty()) throw ValidationError("empty time series");
  if (window) {
    if (!(window->hi > window->lo)) throw ValidationError("window must satisfy lo < hi");
    return *window;
  }
  const double t0 = s.t(0);
  const double t1 = s.t(s.size() - 1);
  return {0.5 * (t0 + t1), t1};
}

std::vector<std::size_t> in_window(const TimeSeries& s, const Window& w) {
  const double tol = 1e-12 * std::max(1.0, std::abs(w.hi));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.t(i) >= w.lo - tol && s.t(i) <= w.hi + tol) idx.push_back(i);
  return idx;
}

}  // namespace

GrowthFit fit_growth_rate(const TimeSeries& s, std::optional<Window> window) {
  const Window w = resolve_window(s, window);
  const auto idx = in_window(s, w);
  if (idx.size() < 5)
    throw ValidationError("fit_growth_rate: need at least 5 samples in the window, found " +
                          std::to_string(idx.size()));
  std::vector<double> x, y;
  for (const auto i : idx) {
    if (s.v(i) == 0.0)
      throw ValidationError("fit_growth_rate: zero value at t = " + std::to_string(s.t(i)) +
                            "; log undefined");
    x.push_back(s.t(i));
    y.push_back(std::log(std::abs(s.v(i))));
  }
  const LineFit fit = least_squares(x, y);
  return {fit.slope, fit.intercept, fit.r2, w, idx.size()};
}

BlowupEstimate extrapolate_blowup(const TimeSeries& s, std::optional<Window> window) {
  const Window w = resolve_window(s, window);
  const auto idx = in_window(s, w);
  if (idx.size() < 2)
    throw ValidationError("extrapolate_blowup: need at least 2 samples in the window");
  BlowupEstimate est;
  est.window = w;
  std::vector<double> x, y;
  bool monotone = true;
  for (std::size_t n = 0; n < idx.size(); ++n) {
    const double v = std::abs(s.v(idx[n]));
    if (v == 0.0) throw ValidationError("extrapolate_blowup: zero magnitude in window");
    if (n > 0 && v < std::abs(s.v(idx[n - 1]))) monotone = false;
    x.push_back(s.t(idx[n]));
    y.push_back(1.0 / v);
  }
  if (!monotone) est.warning = "values not increasing over the window; low confidence";
  const LineFit fit = least_squares(x, y);
  est.r2 = fit.r2;
  // A slope indistinguishable from zero relative to the data means no crossing.
  double scale = 0.0;
  for (const double v : y) scale = std::max(scale, std::abs(v));
  if (fit.slope < -1e-12 * scale / std::max(1e-300, w.hi - w.lo)) {
    est.t_est = -fit.intercept / fit.slope;
  } else {
    est.t_est = std::numeric_limits<double>::infinity();
  }
  return est;
}

Residual residual_at(const oracles::FieldSample& s, ModelKind model) {
  Residual r;
  r.theta = std::abs(s.theta_t + s.u1 * s.theta_x1 + s.u2 * s.theta_x2);
  r.kinematic = std::max(std::abs(s.u1 + s.psi_x2), std::abs(s.u2 - s.psi_x1));
  if (model == ModelKind::SingularScalar) {
    r.kinematic = std::max(r.kinematic, std::abs(-s.psi_x2 - s.theta));
    return r;
  }
  if (!s.has_omega)
    throw ValidationError(std::string("residual: model ") + std::string(to_string(model)) +
                          " needs vorticity partials the sample does not provide");
  const double transport = s.omega_t + s.u1 * s.omega_x1 + s.u2 * s.omega_x2;
  const double forcing = model == ModelKind::Boussinesq ? s.theta_x1
                                                        : -2.0 * s.theta * s.theta_x2;
  r.omega = std::abs(transport - forcing);
  return r;
}

Residual residual(const oracles::OracleField& field, ModelKind model,
                  std::span<const SpaceTime> points) {
  Residual worst;
  for (const auto& p : points) {
    const Residual r = residual_at(field(p.x1, p.x2, p.t), model);
    worst.theta = std::max(worst.theta, r.theta);
    worst.omega = std::max(worst.omega, r.omega);
    worst.kinematic = std::max(worst.kinematic, r.kinematic);
  }
  return worst;
}

Residual residual(const State& prev, const State& mid, const State& next) {
  prev.validate();
  mid.validate();
  next.validate();
  if (prev.model != mid.model || next.model != mid.model)
    throw ValidationError("residual: snapshots from different models");
  const double h1 = mid.t - prev.t;
  const double h2 = next.t - mid.t;
  if (!(h1 > 0.0) || std::abs(h1 - h2) > 1e-9 * h1)
    throw ValidationError("residual: snapshots must be equally spaced in time");

  const Velocity vel = velocity(mid);
  const Spectrum th = sp::forward(mid.theta);
  const Field th_x1 = sp::inverse_unchecked(sp::ddx1(th));
  const Field th_x2 = sp::inverse_unchecked(sp::ddx2(th));
  std::optional<Field> w_x1, w_x2;
  if (mid.omega) {
    const Spectrum wh = sp::forward(*mid.omega);
    w_x1 = sp::inverse_unchecked(sp::ddx1(wh));
    w_x2 = sp::inverse_unchecked(sp::ddx2(wh));
  }

  Residual worst;
  for (std::size_t i = 0; i < mid.theta.values.size(); ++i) {
    oracles::FieldSample s;
    s.u1 = vel.u1.values[i];
    s.u2 = vel.u2.values[i];
    s.psi_x2 = -s.u1;
    s.psi_x1 = s.u2;
    s.theta = mid.theta.values[i];
    s.theta_t = (next.theta.values[i] - prev.theta.values[i]) / (2.0 * h1);
    s.theta_x1 = th_x1.values[i];
    s.theta_x2 = th_x2.values[i];
    if (mid.omega) {
      s.has_omega = true;
      s.omega = mid.omega->values[i];
      s.omega_t = (next.omega->values[i] - prev.omega->values[i]) / (2.0 * h1);
      s.omega_x1 = w_x1->values[i];
      s.omega_x2 = w_x2->values[i];
    }
    Residual r = residual_at(s, mid.model);
    worst.theta = std::max(worst.theta, r.theta);
    worst.omega = std::max(worst.omega, r.omega);
  }
  return worst;
}

std::vector<SpaceTime> random_points(std::size_t n, unsigned seed, double extent, double t_max,
                                     double min_abs_x2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xs(-extent, extent);
  std::uniform_real_distribution<double> ts(0.0, t_max);
  std::vector<SpaceTime> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    SpaceTime p{xs(rng), xs(rng), ts(rng)};
    if (std::abs(p.x2) >= min_abs_x2) pts.push_back(p);
  }
  return pts;
}

double symmetry_error(const Field& f, Parity parity) {
  const Grid2D& g = f.grid;
  const double sign = parity == Parity::Even ? -1.0 : 1.0;
  double worst = 0.0;
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k)
      worst = std::max(worst, std::abs(f(j, k) + sign * f(j, (g.ny - k) % g.ny)));
  return worst;
}

std::vector<ConservationRow> conservation_report(std::span<const State> states) {
  if (states.empty()) throw ValidationError("conservation_report: no states");
  std::vector<ConservationRow> rows;
  for (const auto& s : states) {
    ConservationRow r;
    r.t = s.t;
    r.l2 = l2_norm(s.theta);
    r.linf = linf_norm(s.theta);
    r.mean = mean(s.theta);
    if (s.omega) r.l2_omega = l2_norm(*s.omega);
    rows.push_back(r);
  }
  const auto& base = rows.front();
  auto rel = [](double v, double ref) { return ref == 0.0 ? v - ref : (v - ref) / ref; };
  for (auto& r : rows) {
    r.l2_drift = rel(r.l2, base.l2);
    r.linf_drift = rel(r.linf, base.linf);
    r.mean_drift = r.mean - base.mean;
  }
  return rows;
}

}  // namespace invlab
