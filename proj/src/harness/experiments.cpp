#include "invlab/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "invlab/axis_burgers.hpp"
#include "invlab/error.hpp"
#include "invlab/harness/csv.hpp"
#include "invlab/harness/presets.hpp"
#include "invlab/harness/snapshot.hpp"
#include "invlab/oracles.hpp"
#include "invlab/spectral.hpp"

namespace invlab::harness {

namespace sp = invlab::spectral;

namespace {

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.bin", i);
  return buf;
}

std::string series_header(ModelKind m) {
  return evolves_vorticity(m) ? "t,L2,Linf,mean,supgrad,L2_omega,supgrad_omega"
                              : "t,L2,Linf,mean,supgrad,min_axis_slope";
}

/// Minimum of ∂x1 θ over the nodes on x2 = 0 (row k = 0).
double min_axis_slope(const Field& theta) {
  const Field d = sp::inverse_unchecked(sp::ddx1(sp::forward(theta)));
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d.grid.nx; ++j) m = std::min(m, d(j, 0));
  return m;
}

/// Rows and snapshots shared by the solver and oracle paths.
class Recorder {
 public:
  Recorder(const RunConfig& cfg, ModelKind model)
      : cfg_(cfg), model_(model), series_(cfg.output_dir / "series.csv") {
    if (!series_) throw ValidationError("cannot write " + (cfg.output_dir / "series.csv").string());
    series_ << series_header(model) << '\n';
  }

  void row(double t, const std::vector<double>& values) {
    series_ << format_double(t);
    for (double v : values) series_ << ',' << format_double(v);
    series_ << '\n';
    series_.flush();
    ++rows_;
    last_row_t_ = t;
  }

  void snapshot(double t, const Field& theta, const std::optional<Field>& omega) {
    std::vector<std::string> names = {model_ == ModelKind::ModifiedBoussinesq ? "rho" : "theta"};
    std::vector<const Field*> fields = {&theta};
    if (omega) {
      names.push_back("omega");
      fields.push_back(&*omega);
    }
    write_snapshot(cfg_.output_dir / snapshot_name(snaps_), t, names, fields);
    ++snaps_;
    last_snap_t_ = t;
  }

  std::size_t rows() const { return rows_; }
  std::size_t snaps() const { return snaps_; }
  std::optional<double> last_row_t() const { return last_row_t_; }
  std::optional<double> last_snap_t() const { return last_snap_t_; }

 private:
  const RunConfig& cfg_;
  ModelKind model_;
  std::ofstream series_;
  std::size_t rows_ = 0;
  std::size_t snaps_ = 0;
  std::optional<double> last_row_t_;
  std::optional<double> last_snap_t_;
};

std::vector<double> solver_row(const State& s) {
  std::vector<double> v = {l2_norm(s.theta), linf_norm(s.theta), mean(s.theta),
                           sup_grad(s.theta).value};
  if (s.omega) {
    v.push_back(l2_norm(*s.omega));
    v.push_back(sup_grad(*s.omega).value);
  } else {
    v.push_back(min_axis_slope(s.theta));
  }
  return v;
}

struct OracleFrame {
  Field theta;
  Field omega;
  double supgrad = 0.0;
  double supgrad_omega = 0.0;
};

OracleFrame sample_oracle(const oracles::OracleField& field, const Grid2D& g, double t) {
  OracleFrame f{Field(g), Field(g)};
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k) {
      const auto s = field(oracle_x1(g, j), oracle_x2(g, k), t);
      f.theta(j, k) = s.theta;
      f.omega(j, k) = s.omega;
      f.supgrad = std::max(f.supgrad, std::hypot(s.theta_x1, s.theta_x2));
      f.supgrad_omega = std::max(f.supgrad_omega, std::hypot(s.omega_x1, s.omega_x2));
    }
  return f;
}

std::vector<double> sample_times(double t_end, double interval) {
  std::vector<double> out;
  const double eps = 1e-12 * std::max(1.0, t_end);
  for (long i = 0;; ++i) {
    const double t = static_cast<double>(i) * interval;
    if (t >= t_end - eps) break;
    out.push_back(t);
  }
  out.push_back(t_end);
  return out;
}

double series_interval(const RunConfig& cfg) {
  if (cfg.series_interval > 0.0) return cfg.series_interval;
  return cfg.t_end > 0.0 ? cfg.t_end / 100.0 : 1.0;
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw ValidationError("cannot create output dir '" + cfg.output_dir.string() + "'");

  const Grid2D grid = cfg.grid();
  const PresetInfo* preset = find_preset(cfg.ic);
  const bool oracle_run = preset && preset->oracle;
  Recorder rec(cfg, cfg.model);
  RunReport report;
  std::ostringstream extra;
  double ceiling = 0.0;

  if (oracle_run) {
    const auto field = oracle_preset(cfg.ic);
    const double si = series_interval(cfg);
    std::vector<double> times = sample_times(cfg.t_end, si);
    if (cfg.snapshot_interval > 0.0) {
      for (double t : sample_times(cfg.t_end, cfg.snapshot_interval)) times.push_back(t);
      std::sort(times.begin(), times.end());
      times.erase(std::unique(times.begin(), times.end()), times.end());
    }
    auto on_grid = [](double t, double h) {
      const double r = t / h;
      return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, r);
    };
    const OracleFrame first = sample_oracle(field, grid, 0.0);
    ceiling = cfg.grad_ceiling ? *cfg.grad_ceiling : resolution_ceiling(grid, linf_norm(first.theta));
    for (double t : times) {
      const OracleFrame f = t == 0.0 ? first : sample_oracle(field, grid, t);
      const bool last = t == cfg.t_end;
      if (on_grid(t, si) || last)
        rec.row(t, {l2_norm(f.theta), linf_norm(f.theta), mean(f.theta), f.supgrad,
                    l2_norm(f.omega), f.supgrad_omega});
      if (t == 0.0 || last || (cfg.snapshot_interval > 0.0 && on_grid(t, cfg.snapshot_interval)))
        rec.snapshot(t, f.theta, f.omega);
      report.t_final = t;
      if (!(f.supgrad <= ceiling)) {
        std::ostringstream msg;
        msg << "max|grad theta| = " << f.supgrad << " exceeds ceiling " << ceiling
            << " at t = " << t;
        report.blowup = BlowupSignal{t, f.supgrad, msg.str()};
        if (rec.last_snap_t() != t) rec.snapshot(t, f.theta, f.omega);
        break;
      }
    }
    extra << "source = closed-form family sampled on the grid (x2 centred on 0)\n";
  } else {
    State s0 = initial_state(cfg.model, grid, cfg.ic, cfg.ic_omega);
    ceiling = cfg.grad_ceiling ? *cfg.grad_ceiling : resolution_ceiling(grid, linf_norm(s0.theta));
    const State initial = s0;
    std::vector<Observer> observers;
    observers.push_back({series_interval(cfg), [&](const State& s) { rec.row(s.t, solver_row(s)); }});
    if (cfg.snapshot_interval > 0.0)
      observers.push_back({cfg.snapshot_interval, [&](const State& s) { rec.snapshot(s.t, s.theta, s.omega); }});
    else
      rec.snapshot(s0.t, s0.theta, s0.omega);

    IntegrateOptions opts;
    opts.project_symmetry = cfg.project_symmetry;
    opts.grad_ceiling = ceiling;
    IntegrationResult res = integrate(std::move(s0), cfg.step_control(), cfg.t_end, observers, opts);
    const State& fin = res.state;
    if (rec.last_row_t() != fin.t) rec.row(fin.t, solver_row(fin));
    if (rec.last_snap_t() != fin.t) rec.snapshot(fin.t, fin.theta, fin.omega);
    report.steps = res.steps;
    report.blowup = res.blowup;
    report.t_final = fin.t;

    auto wants = [&](const char* d) {
      return std::find(cfg.diagnostics.begin(), cfg.diagnostics.end(), d) != cfg.diagnostics.end();
    };
    if (wants("conservation")) {
      const std::vector<State> pair = {initial, fin};
      const auto rows = conservation_report(pair);
      extra << "conservation.l2_drift = " << format_double(rows.back().l2_drift) << '\n'
            << "conservation.linf_drift = " << format_double(rows.back().linf_drift) << '\n'
            << "conservation.mean_drift = " << format_double(rows.back().mean_drift) << '\n';
    }
    if (wants("symmetry")) {
      const Parity p = cfg.model == ModelKind::SingularScalar ? Parity::Even : Parity::Odd;
      extra << "symmetry.theta = " << format_double(symmetry_error(fin.theta, p)) << '\n';
      if (fin.omega) extra << "symmetry.omega = " << format_double(symmetry_error(*fin.omega, p)) << '\n';
    }
    if (wants("axis")) {
      if (cfg.model != ModelKind::SingularScalar) {
        extra << "axis = not applicable\n";
      } else {
        const burgers::BurgersSolution sol(axis_profile(cfg.ic, grid.lx));
        extra << "axis.tstar = " << format_double(sol.tstar) << '\n';
        if (fin.t < sol.tstar) {
          double err = 0.0;
          for (int j = 0; j < grid.nx; ++j)
            err = std::max(err, std::abs(fin.theta(j, 0) - burgers::eval(sol, grid.x1(j), fin.t)));
          extra << "axis.max_error = " << format_double(err) << '\n';
        }
      }
    }
  }

  report.series_rows = rec.rows();
  report.snapshots = rec.snaps();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.exit_status = report.blowup ? kBlowup : kOk;

  std::ofstream meta(cfg.output_dir / "meta.txt", std::ios::trunc);
  meta << cfg.echo();
  meta << "grad_ceiling_value = " << format_double(ceiling) << '\n'
       << "steps = " << report.steps << '\n'
       << "t_final = " << format_double(report.t_final) << '\n';
  if (report.blowup)
    meta << "blowup = yes\n"
         << "blowup.t = " << format_double(report.blowup->t) << '\n'
         << "blowup.max_grad = " << format_double(report.blowup->max_grad) << '\n'
         << "blowup.reason = " << report.blowup->reason << '\n';
  else
    meta << "blowup = none\n";
  meta << extra.str();
  meta << "wall_clock_seconds = " << format_double(report.wall_seconds) << '\n';
  return report;
}

OracleReport oracle_check(const std::string& family, const std::string& preset, std::size_t npoints,
                          unsigned seed, const std::optional<std::filesystem::path>& out_dir) {
  if (npoints == 0) throw ValidationError("oracle-check: npoints must be positive");
  const oracles::Family fam = oracles::parse_family(family);
  const oracles::OracleField field = oracles::preset(fam, preset);
  OracleReport rep;
  rep.family = std::string(oracles::to_string(fam));
  rep.preset = preset;
  rep.label = field.label;
  rep.npoints = npoints;
  const auto points = random_points(npoints, seed, 1.0, 1.0);
  rep.residual = residual(field, field.model, points);
  const double worst = std::max({rep.residual.theta, rep.residual.omega, rep.residual.kinematic});
  rep.passed = worst <= rep.threshold;

  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.05 * i);
  const auto target = fam == oracles::Family::ModifiedReduced ? oracles::EnvelopeTarget::Omega
                                                              : oracles::EnvelopeTarget::Theta;
  rep.envelope = oracles::growth_envelope(field, -1.0, 1.0, times, target);

  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    std::ofstream out(*out_dir / "envelope.csv", std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + (*out_dir / "envelope.csv").string());
    out << (target == oracles::EnvelopeTarget::Omega ? "t,sup_abs_omega_x2\n" : "t,sup_abs_theta_x2\n");
    for (std::size_t i = 0; i < rep.envelope.size(); ++i)
      out << format_double(rep.envelope.t(i)) << ',' << format_double(rep.envelope.v(i)) << '\n';
  }
  return rep;
}

unsigned worker_limit() {
  if (const char* env = std::getenv("INVLAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void run_jobs(std::vector<std::function<void()>>& jobs, unsigned workers) {
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  if (workers <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs.size());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        try {
          jobs[i]();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ConvergenceTable convergence(const RunConfig& base, int levels, bool deterministic) {
  if (levels < 3) throw ValidationError("convergence: need at least 3 levels, got " + std::to_string(levels));
  if (base.model != ModelKind::SingularScalar)
    throw ValidationError("convergence: the Burgers axis reference needs the singular-scalar model");
  if (!(base.t_end > 0.0)) throw ValidationError("convergence: t_end must be positive");
  const Grid2D g0 = base.grid();
  const burgers::BurgersSolution sol(axis_profile(base.ic, g0.lx));
  if (!(base.t_end < sol.tstar))
    throw ValidationError("convergence: t_end must precede the axis blowup time " +
                          format_double(sol.tstar));
  {
    const State s = initial_state(base.model, g0, base.ic, base.ic_omega);
    if (symmetry_error(s.theta, Parity::Even) > 1e-12 * std::max(1.0, linf_norm(s.theta)))
      throw ValidationError("convergence: initial condition is not even in x2");
  }
  const int coarsest = base.nx >> (levels - 1);
  const int coarsest_y = base.ny >> (levels - 1);
  if (coarsest < 8 || coarsest_y < 8 || (base.nx % (1 << (levels - 1))) || (base.ny % (1 << (levels - 1))))
    throw ValidationError("convergence: grid too small for " + std::to_string(levels) + " spatial levels");

  auto axis_error = [&](int nx, int ny, double dt) {
    RunConfig c = base;
    c.nx = nx;
    c.ny = ny;
    c.dt = dt;
    const Grid2D g = c.grid();
    IntegrateOptions opts;
    opts.project_symmetry = c.project_symmetry;
    opts.grad_ceiling = std::numeric_limits<double>::infinity();
    auto res = integrate(initial_state(c.model, g, c.ic, c.ic_omega), c.step_control(), c.t_end, {}, opts);
    if (res.blowup) throw BlowupError(res.blowup->reason, res.blowup->t, res.blowup->max_grad);
    double err = 0.0;
    for (int j = 0; j < g.nx; ++j)
      err = std::max(err, std::abs(res.state.theta(j, 0) - burgers::eval(sol, g.x1(j), c.t_end)));
    return err;
  };

  ConvergenceTable table;
  table.temporal.resize(levels);
  table.spatial.resize(levels);
  const double finest_dt = base.dt / std::ldexp(1.0, levels - 1);
  std::vector<std::function<void()>> jobs;
  for (int i = 0; i < levels; ++i) {
    const double dt = base.dt / std::ldexp(1.0, i);
    table.temporal[i].nx = base.nx;
    table.temporal[i].dt = dt;
    jobs.push_back([&, i, dt] { table.temporal[i].error = axis_error(base.nx, base.ny, dt); });
  }
  // The finest spatial level is the finest temporal run.
  for (int i = 0; i + 1 < levels; ++i) {
    const int shift = levels - 1 - i;
    table.spatial[i].nx = base.nx >> shift;
    table.spatial[i].dt = finest_dt;
    jobs.push_back([&, i, shift] {
      table.spatial[i].error = axis_error(base.nx >> shift, base.ny >> shift, finest_dt);
    });
  }
  run_jobs(jobs, deterministic ? 1u : worker_limit());
  table.spatial.back() = table.temporal.back();
  table.spatial.back().order.reset();

  auto orders = [](std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].error > 0.0 && rows[i - 1].error > 0.0)
        rows[i].order = std::log2(rows[i - 1].error / rows[i].error);
  };
  orders(table.temporal);
  orders(table.spatial);
  return table;
}

}  // namespace invlab::harness
