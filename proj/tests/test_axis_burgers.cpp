#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "invlab/axis_burgers.hpp"
#include "invlab/diagnostics.hpp"
#include "invlab/error.hpp"

using namespace invlab;
using burgers::AxisProfile;
using burgers::BurgersSolution;

namespace {

const double pi = std::numbers::pi;

/// Brute-force minimum of g' over 10^6 samples of one period.
double brute_min_slope(const Profile1D& g) {
  double m = INFINITY;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) m = std::min(m, g.df(2 * pi * i / n));
  return m;
}

/// Plain bisection for θ = g(x - tθ); no Newton step.
double bisect(const Profile1D& g, double x, double t) {
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((mid - g(x - t * mid)) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Profile1D scaled(const Profile1D& g, double lambda) {
  Profile1D s = g;
  s.f = [g, lambda](double x) { return lambda * g.f(x); };
  s.df = [g, lambda](double x) { return lambda * g.df(x); };
  return s;
}

}  // namespace

TEST_CASE("profile derivatives match centred differences") {
  for (const auto& g : {Profile1D::cosine(), Profile1D::cosine(2.0), Profile1D::sine(), Profile1D::tanh()}) {
    for (int i = 0; i < 64; ++i) {
      const double x = -3.0 + 6.0 * i / 63.0;
      double prev = 0.0;
      for (double h : {1e-3, 5e-4}) {
        const double err = std::abs((g(x + h) - g(x - h)) / (2 * h) - g.df(x));
        if (prev > 1e-11) CHECK(prev / err == Catch::Approx(4.0).epsilon(0.1));
        CHECK(err < 1e-5);
        prev = err;
      }
    }
  }
}

TEST_CASE("blowup time of cos is 1") {
  const AxisProfile p{Profile1D::cosine()};
  const double brute = brute_min_slope(p.g);
  CHECK(brute == Catch::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(burgers::blowup_time(p) - 1.0) <= 1e-10);
  CHECK(std::abs(burgers::blowup_time(p) - (-1.0 / brute)) <= 1e-10);
}

TEST_CASE("blowup time of cos 2x is one half") {
  const AxisProfile p{Profile1D::cosine(2.0)};
  CHECK(brute_min_slope(p.g) == Catch::Approx(-2.0).epsilon(1e-10));
  CHECK(std::abs(burgers::blowup_time(p) - 0.5) <= 1e-10);
}

TEST_CASE("constant data never blows up") {
  CHECK(burgers::blowup_time(AxisProfile{Profile1D::constant(0.3)}) == INFINITY);
  const BurgersSolution sol(AxisProfile{Profile1D::constant(0.3)});
  CHECK(sol.tstar == INFINITY);
  CHECK(burgers::eval(sol, 1.0, 50.0) == Catch::Approx(0.3));
  CHECK(burgers::eval_slope(sol, 1.0, 50.0) == 0.0);
}

TEST_CASE("Burgers scaling law") {
  const AxisProfile p{Profile1D::cosine()};
  const double t0 = burgers::blowup_time(p);
  for (double lambda : {0.5, 2.0, 10.0})
    CHECK(burgers::blowup_time(AxisProfile{scaled(p.g, lambda)}) == Catch::Approx(t0 / lambda).epsilon(1e-12));
}

TEST_CASE("eval examples") {
  const BurgersSolution sol(AxisProfile{Profile1D::cosine()});
  CHECK(std::abs(burgers::eval(sol, pi / 2, 0.5)) < 1e-13);
  CHECK(burgers::eval(sol, 1.234, 0.0) == std::cos(1.234));
  // θ = cos(θ/2), independently solved at high precision.
  const double root = 0.900367222589747146;
  CHECK(std::abs(burgers::eval(sol, 0.0, 0.5) - root) < 1e-13);
  CHECK(std::abs(bisect(sol.profile.g, 0.0, 0.5) - root) < 1e-13);
}

TEST_CASE("eval rejects times at or past the blowup") {
  const BurgersSolution sol(AxisProfile{Profile1D::cosine()});
  CHECK_THROWS_AS(burgers::eval(sol, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(burgers::eval(sol, 0.0, 1.5), ValidationError);
  CHECK_THROWS_AS(burgers::eval(sol, 0.0, -0.1), ValidationError);
  CHECK_THROWS_AS(burgers::eval_slope(sol, 0.0, 1.0), ValidationError);
}

TEST_CASE("eval satisfies the implicit equation and agrees with bisection") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> x(-2 * pi, 2 * pi), frac(0.0, 0.99);
  for (const auto& g : {Profile1D::cosine(), Profile1D::cosine(2.0), Profile1D::sine()}) {
    const BurgersSolution sol(AxisProfile{g});
    for (int i = 0; i < 200; ++i) {
      const double xi = x(rng), t = frac(rng) * sol.tstar;
      const double th = burgers::eval(sol, xi, t);
      CHECK(std::abs(th - g(xi - t * th)) <= 1e-13);
      CHECK(std::abs(th - bisect(g, xi, t)) <= 1e-9);
    }
  }
}

TEST_CASE("values are carried along characteristics") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> x(-pi, pi);
  const BurgersSolution sol(AxisProfile{Profile1D::cosine()});
  const double t = sol.tstar / 2;
  for (int i = 0; i < 100; ++i) {
    const double x0 = x(rng), v = std::cos(x0);
    CHECK(std::abs(burgers::eval(sol, x0 + t * v, t) - v) < 1e-12);
  }
}

TEST_CASE("eval_slope examples and finite-difference agreement") {
  const BurgersSolution sol(AxisProfile{Profile1D::cosine()});
  CHECK(burgers::eval_slope(sol, 0.7, 0.0) == Catch::Approx(-std::sin(0.7)));
  // The steepest characteristic starts where g' = -sin is -1, at pi/2, and
  // carries g = 0, so it stays put.
  for (double t : {0.5, 0.9, 0.99, 0.999})
    CHECK(burgers::eval_slope(sol, pi / 2, t) == Catch::Approx(-1.0 / (1.0 - t)).epsilon(1e-10));

  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> x(-pi, pi), frac(0.0, 0.9);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double xi = x(rng), t = frac(rng);
    const double fd = (burgers::eval(sol, xi + h, t) - burgers::eval(sol, xi - h, t)) / (2 * h);
    const double s = burgers::eval_slope(sol, xi, t);
    CHECK(std::abs(fd - s) < 1e-7 * std::max(1.0, std::abs(s)) / (1.0 - t) / (1.0 - t));
  }
}

TEST_CASE("min_slope_series for cos follows -1/(1-t)") {
  const BurgersSolution sol(AxisProfile{Profile1D::cosine()});
  const std::vector<double> times = {0.0, 0.25, 0.5};
  const TimeSeries s = burgers::min_slope_series(sol, times);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s.v(0) + 1.0) < 1e-8);
  CHECK(std::abs(s.v(1) + 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(s.v(2) + 2.0) < 1e-8);

  std::vector<double> dense;
  for (int i = 0; i <= 80; ++i) dense.push_back(0.01 * i);
  const TimeSeries d = burgers::min_slope_series(sol, dense);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(std::abs(d.v(i) + 1.0 / (1.0 - d.t(i))) < 1e-8);
    // The reciprocal magnitude is affine with root 1.
    CHECK(std::abs(1.0 / std::abs(d.v(i)) - (1.0 - d.t(i))) < 1e-8);
  }
  const std::vector<double> late = {1.0};
  CHECK_THROWS_AS(burgers::min_slope_series(sol, late), ValidationError);
}

TEST_CASE("min_slope_series for constant data is zero") {
  const BurgersSolution sol(AxisProfile{Profile1D::constant(2.0)});
  const std::vector<double> times = {0.0, 1.0, 5.0};
  const TimeSeries s = burgers::min_slope_series(sol, times);
  for (double v : s.values()) CHECK(v == 0.0);
}
