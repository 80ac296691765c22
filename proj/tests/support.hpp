#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "invlab/grid.hpp"

namespace testsupport {

/// One Fourier mode a cos(k1 x1 + k2 x2) + b sin(k1 x1 + k2 x2).
struct Mode {
  int k1, k2;
  double a, b;
};

/// Closed-form trigonometric polynomial with exact derivatives.
struct TrigPoly {
  std::vector<Mode> modes;

  double operator()(double x1, double x2) const {
    double s = 0.0;
    for (const auto& m : modes) {
      const double p = m.k1 * x1 + m.k2 * x2;
      s += m.a * std::cos(p) + m.b * std::sin(p);
    }
    return s;
  }
  double d1(double x1, double x2) const { return deriv(x1, x2, 1, 0); }
  double d2(double x1, double x2) const { return deriv(x1, x2, 0, 1); }
  double deriv(double x1, double x2, int w1, int w2) const {
    double s = 0.0;
    for (const auto& m : modes) {
      const double p = m.k1 * x1 + m.k2 * x2;
      const double w = w1 * m.k1 + w2 * m.k2;
      s += w * (-m.a * std::sin(p) + m.b * std::cos(p));
    }
    return s;
  }
};

/// Random trig polynomial with |k1|, |k2| <= kmax; zero-mean if requested.
inline TrigPoly random_poly(std::mt19937_64& rng, int kmax, int nmodes, bool zero_mean = false,
                            bool zero_x2_mean = false) {
  std::uniform_int_distribution<int> k(-kmax, kmax);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  TrigPoly p;
  while (static_cast<int>(p.modes.size()) < nmodes) {
    Mode m{k(rng), k(rng), c(rng), c(rng)};
    if (zero_mean && m.k1 == 0 && m.k2 == 0) continue;
    if (zero_x2_mean && m.k2 == 0) continue;
    p.modes.push_back(m);
  }
  return p;
}

inline invlab::Field sample(const invlab::Grid2D& g, const TrigPoly& p) {
  return invlab::Field::sample(g, [&](double x1, double x2) { return p(x1, x2); });
}

inline double max_diff(const invlab::Field& a, const invlab::Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double max_abs(const invlab::Field& a) {
  double m = 0.0;
  for (double v : a.values) m = std::max(m, std::abs(v));
  return m;
}

inline invlab::Field random_field(const invlab::Grid2D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  invlab::Field f(g);
  for (double& v : f.values) v = u(rng);
  return f;
}

}  // namespace testsupport
