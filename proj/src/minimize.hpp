#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace invlab::detail {

/// Golden-section search for a minimum of f on [a, b], assumed unimodal.
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol = 1e-12) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Minimum of f over [lo, hi]: uniform scan with `samples` points, then
/// golden-section refinement in the two cells around the best sample.
template <class F>
std::pair<double, double> scan_min(F&& f, double lo, double hi, int samples = 4096,
                                   double tol = 1e-12) {
  const double h = (hi - lo) / (samples - 1);
  int best = 0;
  double fbest = f(lo);
  for (int i = 1; i < samples; ++i) {
    const double v = f(lo + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double a = lo + std::max(0, best - 1) * h;
  const double b = lo + std::min(samples - 1, best + 1) * h;
  auto refined = golden_min(f, a, b, tol);
  if (refined.second < fbest) return refined;
  return {lo + best * h, fbest};
}

}  // namespace invlab::detail
