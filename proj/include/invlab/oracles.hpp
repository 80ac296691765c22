#pragma once

#include <functional>
#include <span>
#include <string>

#include "invlab/dynamics.hpp"
#include "invlab/profile.hpp"
#include "invlab/timeseries.hpp"

namespace invlab::oracles {

/// Point values and first partials of one space-time solution candidate.
/// `theta` is ρ for the modified system.
struct FieldSample {
  double psi = 0.0, psi_x1 = 0.0, psi_x2 = 0.0;
  double u1 = 0.0, u2 = 0.0;
  double theta = 0.0, theta_t = 0.0, theta_x1 = 0.0, theta_x2 = 0.0;
  bool has_omega = false;
  double omega = 0.0, omega_t = 0.0, omega_x1 = 0.0, omega_x2 = 0.0;
};

enum class Family { Wedge, MovingDomain, ModifiedReduced, Stationary };

std::string_view to_string(Family f);
/// "wedge", "moving-domain" (or "moving"), "modified", "stationary".
Family parse_family(std::string_view name);

/// A closed-form field family bound to its profiles.
struct OracleField {
  Family family = Family::Wedge;
  ModelKind model = ModelKind::Boussinesq;
  std::string label;
  std::function<FieldSample(double x1, double x2, double t)> eval;
  /// x1-coordinate of the domain boundary ψ = 0 at (x2, t); metadata only.
  std::function<double(double x2, double t)> boundary_x1;

  FieldSample operator()(double x1, double x2, double t) const { return eval(x1, x2, t); }
};

/// θ = θ0(e^t x2), ψ = ±x2²/2 - x1 x2, ω = ±1 in a wedge x2 = ±2 x1.
FieldSample wedge_eval(const Profile1D& theta0, double x1, double x2, double t);

/// σ(x2, t) solving ∂²x2(σ x2²) = ±2 ω0(e^t x2) with both integration
/// constants zero; the sign flips for x2 < 0. At x2 = 0 the limit ω0(0).
double sigma_from_omega0(const Profile1D& omega0, double x2, double t);

/// ψ = ±σ x2²/2 - x1 x2 with ω = ω0(e^t x2), θ = θ0(e^t x2).
FieldSample moving_domain_eval(const Profile1D& omega0, const Profile1D& theta0, double x1,
                               double x2, double t);

/// x1-independent solution of the modified system with u2 = -x2:
/// ρ = ρ0(e^t x2), ω = ω0(e^t x2) - 2(e^t - 1) ρ0 ρ0'(e^t x2).
FieldSample modified_eval(const Profile1D& rho0, const Profile1D& omega0, double x1, double x2,
                          double t);

OracleField make_wedge(Profile1D theta0);
OracleField make_moving_domain(Profile1D omega0, Profile1D theta0);
OracleField make_modified(Profile1D rho0, Profile1D omega0);
/// θ = c everywhere for the singular scalar: u = (c, 0), ψ = -c x2.
OracleField make_stationary(double c);

/// ρ = sin(2 x2 e^t) with ω = ±1 - (e^t - 1) sin(2 x2 e^t). Not a solution;
/// a negative control for the residual checker. The ρ that goes with this ω
/// is sin(x2 e^t).
OracleField make_modified_printed();

/// Named presets per family, e.g. ("wedge", "sin"), ("modified", "paper-printed").
OracleField preset(Family family, std::string_view name);

enum class EnvelopeTarget { Theta, Omega };

/// sup over x2 in [lo, hi] of |∂x2 θ| (or |∂x2 ω|) at each time, from exact
/// partials by dense sampling plus golden-section refinement.
TimeSeries growth_envelope(const OracleField& field, double lo, double hi,
                           std::span<const double> times,
                           EnvelopeTarget target = EnvelopeTarget::Theta);

}  // namespace invlab::oracles
