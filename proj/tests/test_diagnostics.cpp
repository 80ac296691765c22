#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "invlab/diagnostics.hpp"
#include "invlab/error.hpp"
#include "invlab/oracles.hpp"
#include "support.hpp"

using namespace invlab;
using oracles::Family;
using oracles::FieldSample;
using oracles::OracleField;

namespace {

const double pi = std::numbers::pi;

TimeSeries sampled(double lo, double hi, int n, const std::function<double(double)>& f) {
  TimeSeries s;
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    s.push(t, f(t));
  }
  return s;
}

std::vector<OracleField> shipped() {
  return {oracles::preset(Family::Wedge, "sin"), oracles::preset(Family::MovingDomain, "identity"),
          oracles::preset(Family::ModifiedReduced, "linear"),
          oracles::preset(Family::ModifiedReduced, "oscillatory"),
          oracles::preset(Family::Stationary, "const")};
}

OracleField perturbed(const OracleField& f, double eps) {
  OracleField p = f;
  p.eval = [inner = f.eval, eps](double x1, double x2, double t) {
    FieldSample s = inner(x1, x2, t);
    s.theta += eps * x1;
    s.theta_x1 += eps;
    return s;
  };
  return p;
}

State scalar(Field theta, double t = 0.0) {
  State s;
  s.theta = std::move(theta);
  s.t = t;
  return s;
}

}  // namespace

TEST_CASE("time series invariants") {
  TimeSeries s;
  s.push(0.0, 1.0);
  CHECK_THROWS_AS(s.push(0.0, 2.0), ValidationError);
  CHECK_THROWS_AS(s.push(-1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(s.push(1.0, NAN), ValidationError);
  CHECK_THROWS_AS(s.push(1.0, INFINITY), ValidationError);
  CHECK(s.size() == 1);
}

TEST_CASE("sup_grad examples") {
  const Grid2D g(64, 64);
  const GradMax a = sup_grad(Field::sample(g, [](double, double x2) { return std::sin(x2); }));
  CHECK(a.value == Catch::Approx(1.0).epsilon(1e-12));
  CHECK((std::abs(a.loc.x2) < 1e-12 || std::abs(a.loc.x2 - pi) < 1e-12));
  CHECK(sup_grad(Field(g, 4.0)).value < 1e-14);

  // Brute force on the closed form over a dense grid.
  double brute = 0.0;
  for (int i = 0; i < 1000; ++i)
    for (int j = 0; j < 1000; ++j) {
      const double x1 = 2 * pi * i / 1000, x2 = 2 * pi * j / 1000;
      brute = std::max(brute, std::hypot(std::sin(x1) * std::cos(x2), std::cos(x1) * std::sin(x2)));
    }
  const double v = sup_grad(Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); })).value;
  CHECK(brute == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(v == Catch::Approx(brute).epsilon(1e-12));
}

TEST_CASE("sup_grad of a single mode is |A||k|") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> amp(-3.0, 3.0);
  const Grid2D g(32, 32);
  for (auto [k1, k2] : {std::pair{3, 4}, std::pair{0, 5}, std::pair{2, 0}, std::pair{4, 4}}) {
    const double a = amp(rng);
    const Field f = Field::sample(g, [&](double x1, double x2) { return a * std::cos(k1 * x1 + k2 * x2); });
    CHECK(std::abs(sup_grad(f).value - std::abs(a) * std::hypot(k1, k2)) < 1e-10);
  }
}

TEST_CASE("norms") {
  const Grid2D g(32, 32);
  const Field f = Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); });
  CHECK(l2_norm(f) == Catch::Approx(pi).epsilon(1e-14));
  CHECK(linf_norm(f) == Catch::Approx(1.0));
  CHECK(std::abs(mean(f)) < 1e-15);
  CHECK(mean(Field(g, 2.0)) == Catch::Approx(2.0));
}

TEST_CASE("fit_growth_rate examples") {
  const GrowthFit e = fit_growth_rate(sampled(0, 3, 20, [](double t) { return std::exp(t); }), Window{0, 3});
  CHECK(std::abs(e.rate - 1.0) < 1e-10);
  CHECK(e.r2 == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(e.samples == 20);

  const GrowthFit c = fit_growth_rate(sampled(0, 3, 20, [](double) { return 7.0; }), Window{0, 3});
  CHECK(std::abs(c.rate) < 1e-14);

  const GrowthFit m = fit_growth_rate(
      sampled(0, 6, 61, [](double t) { return 2 * std::exp(t) * (std::exp(t) - 1); }), Window{4, 6});
  CHECK(std::abs(m.rate - 2.0) < 1e-2);
  CHECK(m.window.lo == 4.0);
  CHECK(m.window.hi == 6.0);
}

TEST_CASE("fit_growth_rate recovers exact rates for any window") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> rate(-3.0, 3.0), amp(0.1, 10.0), lo(0.0, 1.5), len(0.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const double r = rate(rng), a = amp(rng), w0 = lo(rng), w1 = w0 + len(rng);
    const TimeSeries s = sampled(0, 3, 41, [&](double t) { return a * std::exp(r * t); });
    const GrowthFit f = fit_growth_rate(s, Window{w0, w1});
    CHECK(std::abs(f.rate - r) < 1e-10);
    CHECK(std::abs(f.intercept - std::log(a)) < 1e-9);
    CHECK(f.r2 >= 0.0);
    CHECK(f.r2 <= 1.0 + 1e-12);
  }
}

TEST_CASE("fit_growth_rate defaults to the last half") {
  const TimeSeries s = sampled(0, 10, 101, [](double t) { return t < 5 ? 1.0 : std::exp(2 * (t - 5)); });
  const GrowthFit f = fit_growth_rate(s);
  CHECK(f.window.lo == Catch::Approx(5.0));
  CHECK(f.window.hi == Catch::Approx(10.0));
  CHECK(f.rate == Catch::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("fit_growth_rate rejects unusable input") {
  CHECK_THROWS_AS(fit_growth_rate(sampled(0, 1, 4, [](double t) { return std::exp(t); })), ValidationError);
  CHECK_THROWS_AS(fit_growth_rate(sampled(0, 1, 10, [](double t) { return t > 0.5 ? 0.0 : 1.0; }), Window{0, 1}),
                  ValidationError);
  CHECK_THROWS_AS(fit_growth_rate(sampled(0, 1, 10, [](double t) { return std::exp(t); }), Window{2, 3}),
                  ValidationError);
}

TEST_CASE("extrapolate_blowup examples") {
  const BlowupEstimate b = extrapolate_blowup(sampled(0, 0.8, 81, [](double t) { return 1 / (1 - t); }), Window{0, 0.8});
  CHECK(std::abs(b.t_est - 1.0) < 1e-8);
  CHECK(b.t_est > b.window.hi);
  CHECK_FALSE(b.warning);

  const BlowupEstimate c = extrapolate_blowup(sampled(0, 1, 11, [](double) { return 3.0; }), Window{0, 1});
  CHECK(c.t_est == INFINITY);

  const BlowupEstimate w = extrapolate_blowup(
      sampled(0, 1, 21, [](double t) { return 1.0 / (1.2 - t) + 0.05 * std::sin(40 * t); }), Window{0, 1});
  CHECK(w.warning);
}

TEST_CASE("extrapolate_blowup is exact on reciprocal-affine data") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> ts(0.5, 5.0), a(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double tstar = ts(rng), c = a(rng);
    // v = 1 / (c (tstar - t)), sampled well before tstar; signs ignored.
    const double sign = trial % 2 ? -1.0 : 1.0;
    const TimeSeries s = sampled(0, 0.8 * tstar, 30, [&](double t) { return sign / (c * (tstar - t)); });
    CHECK(std::abs(extrapolate_blowup(s, Window{0, 0.8 * tstar}).t_est - tstar) < 1e-8 * tstar);
  }
}

TEST_CASE("oracle residuals vanish on the shipped families") {
  const auto pts = random_points(500, 7, 1.0, 1.0);
  for (const auto& f : shipped()) {
    INFO(f.label);
    const Residual r = residual(f, f.model, pts);
    CHECK(r.theta <= 1e-11);
    CHECK(r.omega <= 1e-11);
    CHECK(r.kinematic <= 1e-11);
  }
  // The wedge and moving-domain fields also solve the Boussinesq system.
  CHECK(residual(oracles::preset(Family::Wedge, "sin"), ModelKind::Boussinesq, pts).omega <= 1e-11);
  CHECK(residual(oracles::preset(Family::MovingDomain, "identity"), ModelKind::Boussinesq, pts).theta <= 1e-11);
}

TEST_CASE("perturbed fields have visible residuals") {
  const auto pts = random_points(500, 11, 1.0, 1.0);
  for (double eps : {1e-3, 1e-2}) {
    // θ + ε x1 shifts the Boussinesq forcing by exactly ε.
    const Residual w = residual(perturbed(oracles::preset(Family::Wedge, "sin"), eps), ModelKind::Boussinesq, pts);
    CHECK(std::abs(w.omega - eps) < 1e-15);
    for (const auto& f : shipped()) {
      INFO(f.label << " eps=" << eps);
      const Residual r = residual(perturbed(f, eps), f.model, pts);
      CHECK(std::max({r.theta, r.omega, r.kinematic}) >= eps / 2);
    }
  }
}

TEST_CASE("residual needs vorticity partials for vorticity models") {
  const auto pts = random_points(5, 1, 1.0, 1.0);
  CHECK_THROWS_AS(residual(oracles::preset(Family::Stationary, "const"), ModelKind::Boussinesq, pts), ValidationError);
}

TEST_CASE("random_points respects its bounds and seed") {
  const auto a = random_points(300, 5, 2.0, 0.5, 0.1);
  const auto b = random_points(300, 5, 2.0, 0.5, 0.1);
  REQUIRE(a.size() == 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].x2) >= 0.1);
    CHECK(std::abs(a[i].x1) <= 2.0);
    CHECK(a[i].t >= 0.0);
    CHECK(a[i].t <= 0.5);
    CHECK(a[i].x1 == b[i].x1);
  }
}

TEST_CASE("numerical residual from snapshot triples") {
  const Grid2D g(64, 64);
  StepControl c;
  c.dt = 1e-3;
  std::vector<State> snaps;
  const std::vector<Observer> obs = {{0.01, [&](const State& s) { snaps.push_back(s); }}};
  integrate(scalar(Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); })), c, 0.02, obs);
  REQUIRE(snaps.size() == 3);
  const Residual r = residual(snaps[0], snaps[1], snaps[2]);
  // Central difference error ~ (h²/6)|θ_ttt| with h = 0.01.
  CHECK(r.theta < 1e-4);
  CHECK(r.theta > 0.0);
  CHECK_THROWS_AS(residual(snaps[0], snaps[1], snaps[1]), ValidationError);

  // A field that does not move is not a solution unless it is stationary.
  State frozen = snaps[0];
  frozen.t = 0.02;
  State mid = snaps[0];
  mid.t = 0.01;
  CHECK(residual(snaps[0], mid, frozen).theta > 0.1);
}

TEST_CASE("symmetry_error examples") {
  const Grid2D g(32, 32);
  const Field even = Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(3 * x2); });
  const Field odd = Field::sample(g, [](double, double x2) { return std::sin(x2); });
  CHECK(symmetry_error(even, Parity::Even) < 1e-14);  // sampling roundoff of cos(3 x2)
  CHECK(symmetry_error(odd, Parity::Even) == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(symmetry_error(odd, Parity::Odd) < 1e-15);
}

TEST_CASE("conservation_report") {
  const Grid2D g(32, 32);
  const Field f = Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2) + 0.3 * std::sin(2 * x1); });
  const std::vector<State> one = {scalar(f)};
  const auto r1 = conservation_report(one);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].l2_drift == 0.0);
  CHECK(r1[0].linf_drift == 0.0);
  CHECK(r1[0].mean_drift == 0.0);
  CHECK_FALSE(r1[0].l2_omega);

  // A rigid shift by whole cells rearranges the values.
  Field shifted(g);
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k) shifted(j, k) = f((j + 5) % g.nx, k);
  const std::vector<State> two = {scalar(f), scalar(shifted, 1.0)};
  const auto r2 = conservation_report(two);
  CHECK(r2[1].linf_drift == 0.0);
  CHECK(std::abs(r2[1].l2_drift) < 1e-15);

  CHECK_THROWS_AS(conservation_report(std::vector<State>{}), ValidationError);
}

TEST_CASE("256^2 transport conserves L2 through t = 0.5", "[slow]") {
  const Grid2D g(256, 256);
  std::vector<State> snaps;
  const std::vector<Observer> obs = {{0.1, [&](const State& s) { snaps.push_back(s); }}};
  StepControl c;
  c.dt = 1e-3;
  integrate(scalar(Field::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); })), c, 0.5, obs);
  const auto rows = conservation_report(snaps);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) CHECK(std::abs(r.l2_drift) <= 1e-6);
}
