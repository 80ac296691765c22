#include "invlab/harness/presets.hpp"

#include <cmath>

#include "invlab/error.hpp"
#include "invlab/harness/expression.hpp"

namespace invlab::harness {

const std::vector<PresetInfo>& preset_registry() {
  static const std::vector<PresetInfo> registry = {
      {"singular-cos", ModelKind::SingularScalar,
       "theta0 = cos x1 cos x2 (psi0 = -cos x1 sin x2); axis blowup at t = 1", false},
      {"boussinesq-odd", ModelKind::Boussinesq, "theta0 = cos x1 sin x2, omega0 = 0", false},
      {"modified-sin", ModelKind::ModifiedBoussinesq,
       "rho0 = sin x2, omega0 = 0; stays x1-independent", false},
      {"wedge-sin", ModelKind::Boussinesq, "wedge family, theta0 = sin (sampled exactly)", true},
      {"moving-identity", ModelKind::Boussinesq,
       "moving-domain family, omega0 = theta0 = identity (sampled exactly)", true},
      {"modified-linear", ModelKind::ModifiedBoussinesq,
       "modified family, rho0 = identity, omega0 = sign (sampled exactly)", true},
      {"modified-oscillatory", ModelKind::ModifiedBoussinesq,
       "modified family, rho0 = sin, omega0 = sign (sampled exactly)", true},
  };
  return registry;
}

const PresetInfo* find_preset(std::string_view name) {
  for (const auto& p : preset_registry())
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

Field sample_expr(const Grid2D& g, const std::string& text) {
  const Expression e = Expression::parse(text);
  Field f = Field::sample(g, [&](double x1, double x2) { return e(x1, x2); });
  if (const long bad = f.first_nonfinite(); bad >= 0)
    throw ValidationError("initial condition '" + text + "' is not finite at node (" +
                          std::to_string(bad / g.ny) + ", " + std::to_string(bad % g.ny) + ")");
  return f;
}

}  // namespace

State initial_state(ModelKind model, const Grid2D& grid, const std::string& ic,
                    const std::string& ic_omega) {
  State s;
  s.model = model;
  s.t = 0.0;
  if (const PresetInfo* p = find_preset(ic)) {
    if (p->oracle)
      throw ValidationError("preset '" + ic + "' is a closed-form family, not a solver state");
    if (p->model != model)
      throw ValidationError("preset '" + ic + "' belongs to model " +
                            std::string(to_string(p->model)));
    if (ic == "singular-cos") {
      s.theta = Field::sample(grid, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); });
    } else if (ic == "boussinesq-odd") {
      s.theta = Field::sample(grid, [](double x1, double x2) { return std::cos(x1) * std::sin(x2); });
      s.omega = Field(grid);
    } else {
      s.theta = Field::sample(grid, [](double, double x2) { return std::sin(x2); });
      s.omega = Field(grid);
    }
  } else {
    s.theta = sample_expr(grid, ic);
    if (evolves_vorticity(model)) s.omega = sample_expr(grid, ic_omega);
  }
  s.validate();
  return s;
}

oracles::OracleField oracle_preset(std::string_view name) {
  using oracles::Family;
  if (name == "wedge-sin") return oracles::preset(Family::Wedge, "sin");
  if (name == "moving-identity") return oracles::preset(Family::MovingDomain, "identity");
  if (name == "modified-linear") return oracles::preset(Family::ModifiedReduced, "linear");
  if (name == "modified-oscillatory") return oracles::preset(Family::ModifiedReduced, "oscillatory");
  throw ValidationError("'" + std::string(name) + "' is not an oracle preset");
}

double oracle_x1(const Grid2D& g, int j) { return g.x1(j); }
double oracle_x2(const Grid2D& g, int k) { return g.x2(k) - 0.5 * g.ly; }

burgers::AxisProfile axis_profile(const std::string& ic, double period) {
  if (ic == "singular-cos") return {Profile1D::cosine(), period};
  if (const PresetInfo* p = find_preset(ic))
    throw ValidationError("preset '" + p->name + "' has no Burgers axis reduction");
  const Expression e = Expression::parse(ic);
  Profile1D g;
  g.name = ic;
  g.f = [e](double x) { return e(x, 0.0); };
  g.df = [e](double x) { return e.d_x1(x, 0.0); };
  return {g, period};
}

}  // namespace invlab::harness
