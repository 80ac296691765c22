#include "invlab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "invlab/error.hpp"
#include "invlab/harness/csv.hpp"
#include "invlab/harness/expression.hpp"
#include "invlab/harness/presets.hpp"

namespace invlab::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct LineError {
  int line;
  std::string what;
};

double to_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out))
    throw ValidationError("expected a number, got '" + v + "'");
  return out;
}

int to_int(const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ValidationError("expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ValidationError("expected true or false, got '" + v + "'");
}

double positive(double v, const char* what) {
  if (!(v > 0.0)) throw ValidationError(std::string(what) + " must be positive");
  return v;
}

double nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw ValidationError(std::string(what) + " must be non-negative");
  return v;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"model", [](RunConfig& c, const std::string& v) { c.model = parse_model(v); }},
      {"ic", [](RunConfig& c, const std::string& v) { c.ic = v; }},
      {"ic.omega", [](RunConfig& c, const std::string& v) {
         Expression::parse(v);
         c.ic_omega = v;
       }},
      {"t_end", [](RunConfig& c, const std::string& v) { c.t_end = nonnegative(to_double(v), "t_end"); }},
      {"grid.nx", [](RunConfig& c, const std::string& v) { c.nx = to_int(v); }},
      {"grid.ny", [](RunConfig& c, const std::string& v) { c.ny = to_int(v); }},
      {"grid.lx", [](RunConfig& c, const std::string& v) { c.lx = positive(to_double(v), "grid.lx"); }},
      {"grid.ly", [](RunConfig& c, const std::string& v) { c.ly = positive(to_double(v), "grid.ly"); }},
      {"dt", [](RunConfig& c, const std::string& v) { c.dt = positive(to_double(v), "dt"); }},
      {"cfl", [](RunConfig& c, const std::string& v) {
         c.cfl = to_double(v);
         if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ValidationError("cfl must lie in (0, 1]");
       }},
      {"dealias", [](RunConfig& c, const std::string& v) { c.dealias = to_bool(v); }},
      {"project_symmetry", [](RunConfig& c, const std::string& v) { c.project_symmetry = to_bool(v); }},
      {"hyperviscosity", [](RunConfig& c, const std::string& v) {
         c.hyperviscosity = nonnegative(to_double(v), "hyperviscosity");
       }},
      {"output.dir", [](RunConfig& c, const std::string& v) {
         if (v.empty()) throw ValidationError("output.dir must not be empty");
         c.output_dir = v;
       }},
      {"output.snapshot_interval", [](RunConfig& c, const std::string& v) {
         c.snapshot_interval = nonnegative(to_double(v), "output.snapshot_interval");
       }},
      {"output.series_interval", [](RunConfig& c, const std::string& v) {
         c.series_interval = nonnegative(to_double(v), "output.series_interval");
       }},
      {"diagnostics", [](RunConfig& c, const std::string& v) {
         c.diagnostics = split_list(v);
         const auto& known = known_diagnostics();
         for (const auto& d : c.diagnostics)
           if (std::find(known.begin(), known.end(), d) == known.end())
             throw ValidationError("unknown diagnostic '" + d + "'");
       }},
      {"blowup.grad_ceiling", [](RunConfig& c, const std::string& v) {
         if (v == "resolution") c.grad_ceiling = std::nullopt;
         else c.grad_ceiling = positive(to_double(v), "blowup.grad_ceiling");
       }},
  };
  return table;
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw ValidationError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

const std::vector<std::string>& known_diagnostics() {
  static const std::vector<std::string> names = {"conservation", "symmetry", "axis"};
  return names;
}

StepControl RunConfig::step_control() const {
  StepControl c;
  c.dt = dt;
  c.cfl = cfl;
  c.dealias = dealias;
  c.hyperviscosity = hyperviscosity;
  return c;
}

Grid2D RunConfig::grid() const {
  const double two_pi = 2.0 * std::numbers::pi;
  return Grid2D(nx, ny, lx > 0.0 ? lx : two_pi, ly > 0.0 ? ly : two_pi);
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  const Grid2D g = grid();
  out << "model = " << to_string(model) << '\n'
      << "ic = " << ic << '\n'
      << (evolves_vorticity(model) ? "ic.omega = " + ic_omega + "\n" : std::string())
      << "t_end = " << format_double(t_end) << '\n'
      << "grid.nx = " << nx << '\n'
      << "grid.ny = " << ny << '\n'
      << "grid.lx = " << format_double(g.lx) << '\n'
      << "grid.ly = " << format_double(g.ly) << '\n'
      << "dt = " << format_double(dt) << '\n'
      << "cfl = " << format_double(cfl) << '\n'
      << "dealias = " << (dealias ? "true" : "false") << '\n'
      << "project_symmetry = " << (project_symmetry ? "true" : "false") << '\n'
      << "hyperviscosity = " << format_double(hyperviscosity) << '\n'
      << "output.dir = " << output_dir.string() << '\n'
      << "output.snapshot_interval = " << format_double(snapshot_interval) << '\n'
      << "output.series_interval = " << format_double(series_interval) << '\n';
  if (!diagnostics.empty()) {
    out << "diagnostics = ";
    for (std::size_t i = 0; i < diagnostics.size(); ++i) out << (i ? "," : "") << diagnostics[i];
    out << '\n';
  }
  out << "blowup.grad_ceiling = "
      << (grad_ceiling ? format_double(*grad_ceiling) : std::string("resolution")) << '\n';
  return out.str();
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_at(lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail_at(lineno, "missing key");
    const auto it = setters().find(key);
    if (it == setters().end()) fail_at(lineno, "unknown key '" + key + "'");
    if (auto prev = seen.find(key); prev != seen.end())
      fail_at(lineno, "duplicate key '" + key + "' (first set on line " +
                          std::to_string(prev->second) + ")");
    seen[key] = lineno;
    if (value.empty()) fail_at(lineno, "missing value for '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const ValidationError& e) {
      fail_at(lineno, key + ": " + e.what());
    }
  }

  for (const char* required : {"model", "ic", "t_end"})
    if (!seen.count(required)) throw ValidationError(std::string("missing required key '") + required + "'");

  auto line_of = [&](const char* key) { return seen.count(key) ? seen.at(key) : 0; };
  try {
    (void)cfg.grid();
  } catch (const ValidationError& e) {
    fail_at(std::max(line_of("grid.nx"), line_of("grid.ny")), e.what());
  }
  if (const PresetInfo* p = find_preset(cfg.ic)) {
    if (p->model != cfg.model)
      fail_at(line_of("ic"), "preset '" + cfg.ic + "' belongs to model " +
                                 std::string(to_string(p->model)) + ", not " +
                                 std::string(to_string(cfg.model)));
  } else {
    try {
      Expression::parse(cfg.ic);
    } catch (const ValidationError& e) {
      fail_at(line_of("ic"), std::string("ic is neither a preset nor a valid ") + e.what());
    }
  }
  if (seen.count("ic.omega") && !evolves_vorticity(cfg.model))
    fail_at(line_of("ic.omega"), "ic.omega given for a model without vorticity");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

double resolution_ceiling(const Grid2D& g, double theta_sup) {
  return std::max(theta_sup, 1e-300) / (4.0 * std::min(g.dx(), g.dy()));
}

}  // namespace invlab::harness
