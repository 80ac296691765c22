// invlab: command-line driver for runs, oracle checks, convergence studies and
// post-processing of series files.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "invlab/diagnostics.hpp"
#include "invlab/error.hpp"
#include "invlab/harness/config.hpp"
#include "invlab/harness/csv.hpp"
#include "invlab/harness/experiments.hpp"
#include "invlab/harness/presets.hpp"

namespace h = invlab::harness;
using h::format_double;

namespace {

std::optional<invlab::Window> parse_window(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw invlab::ValidationError("--window expects a,b");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    invlab::Window w{std::stod(a, &used), 0.0};
    if (used != a.size()) throw std::invalid_argument(a);
    w.hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (!(w.hi > w.lo)) throw invlab::ValidationError("--window needs a < b");
    return w;
  } catch (const std::logic_error&) {
    throw invlab::ValidationError("--window expects two numbers a,b, got '" + text + "'");
  }
}

int cmd_run(const std::string& path) {
  const h::RunConfig cfg = h::load_config(path);
  const h::RunReport r = h::run(cfg);
  std::cout << "output: " << cfg.output_dir.string() << "\n"
            << "steps: " << r.steps << "  series rows: " << r.series_rows
            << "  snapshots: " << r.snapshots << "\n"
            << "t_final: " << format_double(r.t_final) << "  wall: " << r.wall_seconds << " s\n";
  if (r.blowup) std::cout << "BLOWUP at t = " << format_double(r.blowup->t) << ": " << r.blowup->reason << "\n";
  return r.exit_status;
}

int cmd_oracle(const std::string& family, const std::string& preset, std::size_t npoints,
               unsigned seed, const std::string& out) {
  const h::OracleReport r =
      h::oracle_check(family, preset, npoints, seed,
                      out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
  std::cout << "family: " << r.family << "  preset: " << r.preset << "  (" << r.label << ")\n"
            << "points: " << r.npoints << "\n"
            << "residual.theta: " << format_double(r.residual.theta) << "\n"
            << "residual.omega: " << format_double(r.residual.omega) << "\n"
            << "residual.kinematic: " << format_double(r.residual.kinematic) << "\n"
            << (r.passed ? "PASS" : "FAIL") << " (threshold " << r.threshold << ")\n";
  return r.passed ? h::kOk : h::kOracleFailure;
}

void print_rows(const char* title, const std::vector<h::ConvergenceRow>& rows) {
  std::cout << title << "\n  nx,dt,error,order\n";
  for (const auto& r : rows)
    std::cout << "  " << r.nx << ',' << format_double(r.dt) << ',' << format_double(r.error) << ','
              << (r.order ? format_double(*r.order) : std::string("-")) << "\n";
}

int cmd_convergence(const std::string& path, int levels, bool deterministic) {
  const h::ConvergenceTable t = h::convergence(h::load_config(path), levels, deterministic);
  print_rows("temporal", t.temporal);
  print_rows("spatial", t.spatial);
  return h::kOk;
}

int cmd_fit(const std::string& path, const std::string& column, const std::string& window) {
  const auto fit = invlab::fit_growth_rate(h::read_csv(path).series(column), parse_window(window));
  std::cout << "rate: " << format_double(fit.rate) << "\n"
            << "intercept: " << format_double(fit.intercept) << "\n"
            << "r2: " << format_double(fit.r2) << "\n"
            << "window: " << format_double(fit.window.lo) << "," << format_double(fit.window.hi) << "\n"
            << "samples: " << fit.samples << "\n";
  return h::kOk;
}

int cmd_blowup(const std::string& path, const std::string& column, const std::string& window) {
  const auto est =
      invlab::extrapolate_blowup(h::read_csv(path).series(column, true), parse_window(window));
  std::cout << "t_est: " << format_double(est.t_est) << "\n"
            << "r2: " << format_double(est.r2) << "\n"
            << "window: " << format_double(est.window.lo) << "," << format_double(est.window.hi) << "\n";
  if (est.warning) std::cout << "warning: " << *est.warning << "\n";
  return h::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invlab: singular active scalar and Boussinesq blowup laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "integrate a config and write series.csv, snapshots, meta.txt");
  run->add_option("config", config_path, "config file")->required();

  std::string family, preset, preset_opt, out;
  std::size_t npoints = 500;
  unsigned seed = 1;
  auto* oracle = app.add_subcommand("oracle-check", "residuals of a closed-form family");
  oracle->add_option("family", family, "wedge | moving-domain | modified | stationary")->required();
  auto* pos_preset = oracle->add_option("preset_name", preset, "profile preset");
  oracle->add_option("--preset", preset_opt, "profile preset")->excludes(pos_preset);
  oracle->add_option("--npoints", npoints, "random sample points")->capture_default_str();
  oracle->add_option("--seed", seed, "RNG seed")->capture_default_str();
  oracle->add_option("--out", out, "directory for envelope.csv");

  int levels = 0;
  bool deterministic = false;
  auto* conv = app.add_subcommand("convergence", "dt and nx refinement against the Burgers axis solution");
  conv->add_option("config", config_path, "base config")->required();
  conv->add_option("--levels", levels, "refinement levels (>= 3)")->required();
  conv->add_flag("--deterministic", deterministic, "run levels serially");

  std::string csv, column, window;
  auto* fit = app.add_subcommand("fit-growth", "exponential rate of a series column");
  fit->add_option("csv", csv, "series file")->required();
  fit->add_option("--column,-c", column, "column name")->required();
  fit->add_option("--window,-w", window, "t_lo,t_hi (default: last half)");

  auto* blow = app.add_subcommand("blowup-est", "blowup time from 1/|v| of a series column");
  blow->add_option("csv", csv, "series file")->required();
  blow->add_option("--window,-w", window, "t_lo,t_hi (default: last half)");
  blow->add_option("--column,-c", column, "column name (default min_axis_slope)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : h::kValidation;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*oracle) {
      if (preset.empty()) preset = preset_opt;
      if (preset.empty()) throw invlab::ValidationError("oracle-check: missing preset");
      return cmd_oracle(family, preset, npoints, seed, out);
    }
    if (*conv) return cmd_convergence(config_path, levels, deterministic);
    if (*fit) return cmd_fit(csv, column, window);
    if (*blow) return cmd_blowup(csv, column.empty() ? "min_axis_slope" : column, window);
  } catch (const invlab::BlowupError& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return h::kBlowup;
  } catch (const invlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::kValidation;
  } catch (const std::exception& e) {
    std::cerr << "crash: " << e.what() << "\n";
    return h::kCrash;
  }
  return h::kCrash;
}
