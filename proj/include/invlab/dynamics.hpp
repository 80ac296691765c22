#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "invlab/grid.hpp"

namespace invlab {

enum class ModelKind {
  SingularScalar,      // u = ∇⊥ψ, -∂x2 ψ = θ
  Boussinesq,          // Δψ = ω, ω forced by ∂x1 θ
  ModifiedBoussinesq,  // Δψ = ω, ω forced by -∂x2(ρ²)
};

std::string_view to_string(ModelKind m);
/// Accepts "singular-scalar", "boussinesq", "modified-boussinesq" (and a few
/// aliases). Throws ValidationError otherwise.
ModelKind parse_model(std::string_view name);
inline bool evolves_vorticity(ModelKind m) { return m != ModelKind::SingularScalar; }

/// Evolved fields at time t. `theta` holds ρ for the modified system.
struct State {
  ModelKind model = ModelKind::SingularScalar;
  double t = 0.0;
  Field theta;
  std::optional<Field> omega;

  const Grid2D& grid() const { return theta.grid; }
  /// Throws ValidationError if omega presence or grids are inconsistent.
  void validate() const;
};

struct StepControl {
  double dt = 1e-3;
  double cfl = 0.4;
  bool dealias = true;
  /// Coefficient of the -ν Δ² damping applied to every evolved field.
  double hyperviscosity = 0.0;

  void validate() const;
};

struct Velocity {
  Field u1;
  Field u2;
};

/// Reconstructs u = ∇⊥ψ. For the singular scalar the x2-mean m(x1) of θ,
/// which -∂x2 ψ = θ cannot absorb on the torus, is carried by m(x1)cos(x2)
/// instead; this keeps u1 = θ and u2 = 0 on the axis x2 = 0 and u exactly
/// divergence-free.
Velocity velocity(const State& state);

struct Tendency {
  Field dtheta;
  std::optional<Field> domega;
};

Tendency tendency(const State& state, const StepControl& ctrl = {});

/// cfl * min(dx, dy) / max|u|; +inf for a motionless state.
double admissible_dt(const State& state, double cfl);

/// Raised when an update produces non-finite values.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double t, double max_grad)
      : std::runtime_error(what), t_(t), max_grad_(max_grad) {}
  double t() const { return t_; }
  /// max|∇θ| of the last finite state.
  double max_grad() const { return max_grad_; }

 private:
  double t_;
  double max_grad_;
};

/// One classical RK4 step of size ctrl.dt. Throws CflViolation if ctrl.dt
/// exceeds the admissible step at the start state, BlowupError if the result
/// is non-finite.
State rk4_step(const State& state, const StepControl& ctrl);

/// Even part of θ in x2 for the singular scalar; odd parts of θ/ρ and ω for
/// the Boussinesq systems. Idempotent.
State symmetry_project(const State& state);

struct Observer {
  double interval = 0.0;
  std::function<void(const State&)> callback;
};

struct IntegrateOptions {
  bool project_symmetry = false;
  /// Stop and signal once max|∇θ| exceeds this.
  double grad_ceiling = 1e6;
};

struct BlowupSignal {
  double t = 0.0;
  double max_grad = 0.0;
  std::string reason;
};

struct IntegrationResult {
  State state;  // final state, or last finite state if blowup is set
  std::optional<BlowupSignal> blowup;
  long steps = 0;
};

/// Advances to t_end with dt = min(ctrl.dt, CFL bound, distance to the next
/// observation), re-evaluated every step. Observers fire at the start time and
/// at every multiple of their interval after it.
IntegrationResult integrate(State state, const StepControl& ctrl, double t_end,
                            std::span<const Observer> observers = {},
                            const IntegrateOptions& opts = {});

}  // namespace invlab
