#include "invlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "invlab/diagnostics.hpp"
#include "invlab/error.hpp"
#include "invlab/spectral.hpp"

namespace invlab {
namespace sp = spectral;

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::SingularScalar: return "singular-scalar";
    case ModelKind::Boussinesq: return "boussinesq";
    case ModelKind::ModifiedBoussinesq: return "modified-boussinesq";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  if (name == "singular-scalar" || name == "singular" || name == "scalar")
    return ModelKind::SingularScalar;
  if (name == "boussinesq") return ModelKind::Boussinesq;
  if (name == "modified-boussinesq" || name == "modified")
    return ModelKind::ModifiedBoussinesq;
  throw ValidationError("unknown model '" + std::string(name) +
                        "' (expected singular-scalar, boussinesq or modified-boussinesq)");
}

void State::validate() const {
  if (evolves_vorticity(model) != omega.has_value())
    throw ValidationError(std::string("state: model ") + std::string(to_string(model)) +
                          (omega ? " does not evolve vorticity" : " requires a vorticity field"));
  if (theta.values.size() != theta.grid.size())
    throw ValidationError("state: theta payload does not match its grid");
  if (omega && (!(omega->grid == theta.grid) || omega->values.size() != theta.grid.size()))
    throw ValidationError("state: omega and theta live on different grids");
  if (!(t >= 0.0)) throw ValidationError("state: negative time");
}

void StepControl::validate() const {
  if (!(dt > 0.0)) throw ValidationError("step control: dt must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ValidationError("step control: cfl must lie in (0, 1]");
  if (!(hyperviscosity >= 0.0)) throw ValidationError("step control: hyperviscosity must be >= 0");
}

namespace {

// Moves each k2 = 0 coefficient c(k1) onto k2 = ±1 with weight 1/2, i.e.
// replaces the x2-mean m(x1) by m(x1) cos(2π x2 / ly). Both agree at x2 = 0.
Spectrum lift_x2_mean(const Spectrum& theta) {
  Spectrum out = theta;
  const Grid2D& g = theta.grid;
  for (int i1 = 0; i1 < g.nx; ++i1) {
    const auto c = out.coeffs[g.index(i1, 0)];
    out.coeffs[g.index(i1, 0)] = 0.0;
    out.coeffs[g.index(i1, 1)] += 0.5 * c;
    out.coeffs[g.index(i1, g.ny - 1)] += 0.5 * c;
  }
  return out;
}

Spectrum stream_function(ModelKind model, const Spectrum& theta_hat,
                         const Spectrum* omega_hat) {
  if (model == ModelKind::SingularScalar) return sp::antideriv_x2(lift_x2_mean(theta_hat));
  return sp::poisson_solve(*omega_hat);
}

struct SpectralVelocity {
  Spectrum u1;
  Spectrum u2;
};

SpectralVelocity velocity_hat(const Spectrum& psi_hat) {
  Spectrum u1 = sp::ddx2(psi_hat);
  u1 *= -1.0;
  return {std::move(u1), sp::ddx1(psi_hat)};
}

double max_speed(const Field& u1, const Field& u2) {
  double m = 0.0;
  for (std::size_t i = 0; i < u1.values.size(); ++i)
    m = std::max(m, std::hypot(u1.values[i], u2.values[i]));
  return m;
}

// -(u·∇f) in spectral space, dealiased on request.
Spectrum advection_hat(const Field& u1, const Field& u2, const Spectrum& f_hat, bool dealias) {
  Field adv = hadamard(u1, sp::inverse_unchecked(sp::ddx1(f_hat)));
  adv += hadamard(u2, sp::inverse_unchecked(sp::ddx2(f_hat)));
  Spectrum out = sp::forward(adv);
  if (dealias) sp::dealias_in_place(out);
  out *= -1.0;
  return out;
}

void apply_hyperviscosity(Spectrum& tend, const Spectrum& f_hat, double nu) {
  if (nu == 0.0) return;
  // Δ² has symbol |κ|^4 = (Δ symbol)^2.
  const Spectrum lap = sp::laplacian(sp::laplacian(f_hat));
  for (std::size_t i = 0; i < tend.coeffs.size(); ++i) tend.coeffs[i] -= nu * lap.coeffs[i];
}

struct Evaluation {
  Tendency tendency;
  double max_speed = 0.0;
};

Evaluation evaluate_unguarded(const State& s, const StepControl& ctrl) {
  const Spectrum theta_hat = sp::forward(s.theta);
  std::optional<Spectrum> omega_hat;
  if (s.omega) omega_hat = sp::forward(*s.omega);

  const SpectralVelocity vh =
      velocity_hat(stream_function(s.model, theta_hat, omega_hat ? &*omega_hat : nullptr));
  const Field u1 = sp::inverse_unchecked(vh.u1);
  const Field u2 = sp::inverse_unchecked(vh.u2);

  Evaluation ev;
  ev.max_speed = max_speed(u1, u2);

  Spectrum dtheta_hat = advection_hat(u1, u2, theta_hat, ctrl.dealias);
  apply_hyperviscosity(dtheta_hat, theta_hat, ctrl.hyperviscosity);
  ev.tendency.dtheta = sp::inverse_unchecked(dtheta_hat);

  if (omega_hat) {
    Spectrum domega_hat = advection_hat(u1, u2, *omega_hat, ctrl.dealias);
    if (s.model == ModelKind::Boussinesq) {
      domega_hat += sp::ddx1(theta_hat);
    } else {
      Spectrum sq = sp::forward(hadamard(s.theta, s.theta));
      if (ctrl.dealias) sp::dealias_in_place(sq);
      Spectrum forcing = sp::ddx2(sq);
      forcing *= -1.0;
      domega_hat += forcing;
    }
    apply_hyperviscosity(domega_hat, *omega_hat, ctrl.hyperviscosity);
    ev.tendency.domega = sp::inverse_unchecked(domega_hat);
  }
  return ev;
}

State shifted(const State& s, double h, const Tendency& k) {
  State out = s;
  out.theta.axpy(h, k.dtheta);
  if (out.omega) out.omega->axpy(h, *k.domega);
  return out;
}

double cfl_bound(const Grid2D& g, double cfl, double speed) {
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * std::min(g.dx(), g.dy()) / speed;
}

// Overflow inside a tendency evaluation is a blowup, not bad input.
Evaluation evaluate(const State& s, const StepControl& ctrl) {
  try {
    return evaluate_unguarded(s, ctrl);
  } catch (const NonFiniteError& e) {
    std::ostringstream msg;
    msg << "non-finite tendency at t = " << s.t << " (" << e.what() << ")";
    throw BlowupError(msg.str(), s.t, s.theta.finite() ? sup_grad(s.theta).value : NAN);
  }
}

State rk4_combine(const State& s, const Tendency& k1, double dt, const StepControl& ctrl) {
  Tendency k2, k3, k4;
  try {
    k2 = evaluate(shifted(s, 0.5 * dt, k1), ctrl).tendency;
    k3 = evaluate(shifted(s, 0.5 * dt, k2), ctrl).tendency;
    k4 = evaluate(shifted(s, dt, k3), ctrl).tendency;
  } catch (const BlowupError& e) {
    std::ostringstream msg;
    msg << "non-finite stage inside the step from t = " << s.t << " (" << e.what() << ")";
    throw BlowupError(msg.str(), s.t + dt, sup_grad(s.theta).value);
  }

  State out = s;
  auto combine = [dt](Field& f, const Field& a, const Field& b, const Field& c, const Field& d) {
    for (std::size_t i = 0; i < f.values.size(); ++i)
      f.values[i] += dt / 6.0 * (a.values[i] + 2.0 * b.values[i] + 2.0 * c.values[i] + d.values[i]);
  };
  combine(out.theta, k1.dtheta, k2.dtheta, k3.dtheta, k4.dtheta);
  if (out.omega) combine(*out.omega, *k1.domega, *k2.domega, *k3.domega, *k4.domega);
  out.t = s.t + dt;

  const bool ok = out.theta.finite() && (!out.omega || out.omega->finite());
  if (!ok) {
    std::ostringstream msg;
    msg << "non-finite field after step to t = " << out.t;
    throw BlowupError(msg.str(), out.t, sup_grad(s.theta).value);
  }
  return out;
}

Field reflect_part(const Field& f, double sign) {
  const Grid2D& g = f.grid;
  Field out(g);
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k)
      out(j, k) = 0.5 * (f(j, k) + sign * f(j, (g.ny - k) % g.ny));
  return out;
}

}  // namespace

Velocity velocity(const State& state) {
  state.validate();
  const Spectrum theta_hat = sp::forward(state.theta);
  std::optional<Spectrum> omega_hat;
  if (state.omega) omega_hat = sp::forward(*state.omega);
  const SpectralVelocity vh =
      velocity_hat(stream_function(state.model, theta_hat, omega_hat ? &*omega_hat : nullptr));
  return {sp::inverse_unchecked(vh.u1), sp::inverse_unchecked(vh.u2)};
}

Tendency tendency(const State& state, const StepControl& ctrl) {
  state.validate();
  return evaluate(state, ctrl).tendency;
}

double admissible_dt(const State& state, double cfl) {
  const Velocity v = velocity(state);
  return cfl_bound(state.grid(), cfl, max_speed(v.u1, v.u2));
}

State rk4_step(const State& state, const StepControl& ctrl) {
  state.validate();
  ctrl.validate();
  const Evaluation first = evaluate(state, ctrl);
  const double bound = cfl_bound(state.grid(), ctrl.cfl, first.max_speed);
  if (ctrl.dt > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "rk4_step: dt = " << ctrl.dt << " violates the CFL bound; admissible dt = " << bound;
    throw CflViolation(msg.str(), bound);
  }
  return rk4_combine(state, first.tendency, ctrl.dt, ctrl);
}

State symmetry_project(const State& state) {
  state.validate();
  State out = state;
  if (state.model == ModelKind::SingularScalar) {
    out.theta = reflect_part(state.theta, +1.0);
  } else {
    out.theta = reflect_part(state.theta, -1.0);
    out.omega = reflect_part(*state.omega, -1.0);
  }
  return out;
}

IntegrationResult integrate(State state, const StepControl& ctrl, double t_end,
                            std::span<const Observer> observers, const IntegrateOptions& opts) {
  state.validate();
  ctrl.validate();
  if (!(t_end >= state.t))
    throw ValidationError("integrate: t_end precedes the state time");
  for (const auto& o : observers)
    if (!(o.interval > 0.0)) throw ValidationError("integrate: observer interval must be positive");

  const double t0 = state.t;
  // Snap tolerance for landing on observation times and t_end.
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
  std::vector<long> fired(observers.size(), 0);
  auto next_time = [&](std::size_t i) { return t0 + (fired[i] + 1) * observers[i].interval; };
  auto notify = [&](const State& s) {
    for (std::size_t i = 0; i < observers.size(); ++i) {
      if (s.t == t0 && fired[i] == 0) continue;
      if (std::abs(s.t - next_time(i)) <= eps) {
        ++fired[i];
        observers[i].callback(s);
      }
    }
  };
  for (const auto& o : observers) o.callback(state);

  IntegrationResult result{state, std::nullopt, 0};
  if (opts.project_symmetry) state = symmetry_project(state);

  while (t_end - state.t > eps) {
    Evaluation first;
    try {
      first = evaluate(state, ctrl);
    } catch (const BlowupError& e) {
      result.state = state;
      result.blowup = BlowupSignal{e.t(), e.max_grad(), e.what()};
      return result;
    }
    double dt = std::min(ctrl.dt, cfl_bound(state.grid(), ctrl.cfl, first.max_speed));
    double target = t_end;
    for (std::size_t i = 0; i < observers.size(); ++i) target = std::min(target, next_time(i));
    bool lands = false;
    if (state.t + dt >= target - eps) {
      dt = target - state.t;
      lands = true;
    }
    State next;
    try {
      next = rk4_combine(state, first.tendency, dt, ctrl);
    } catch (const BlowupError& e) {
      result.state = state;
      result.blowup = BlowupSignal{e.t(), e.max_grad(), e.what()};
      return result;
    }
    if (lands) next.t = target;
    if (opts.project_symmetry) next = symmetry_project(next);
    ++result.steps;

    const double grad = sup_grad(next.theta).value;
    state = std::move(next);
    notify(state);
    if (!(grad <= opts.grad_ceiling)) {
      std::ostringstream msg;
      msg << "max|grad theta| = " << grad << " exceeds ceiling " << opts.grad_ceiling
          << " at t = " << state.t;
      result.state = state;
      result.blowup = BlowupSignal{state.t, grad, msg.str()};
      return result;
    }
  }
  result.state = std::move(state);
  return result;
}

}  // namespace invlab
