#include "invlab/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invlab/error.hpp"
#include "minimize.hpp"

namespace invlab::oracles {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Wedge: return "wedge";
    case Family::MovingDomain: return "moving-domain";
    case Family::ModifiedReduced: return "modified";
    case Family::Stationary: return "stationary";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "wedge") return Family::Wedge;
  if (name == "moving-domain" || name == "moving") return Family::MovingDomain;
  if (name == "modified") return Family::ModifiedReduced;
  if (name == "stationary") return Family::Stationary;
  throw ValidationError("unknown oracle family '" + std::string(name) +
                        "' (expected wedge, moving-domain, modified or stationary)");
}

namespace {

// ∫_0^s fn(r) dr to 1e-10 relative.
template <class F>
double quad(F&& fn, double s, const std::string& label) {
  if (s == 0.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double lo = std::min(0.0, s);
  const double hi = std::max(0.0, s);
  const double val = gauss_kronrod<double, 31>::integrate(fn, lo, hi, 15, 1e-13, &err);
  if (!std::isfinite(val) || !(err <= 1e-10 * std::max(1.0, std::abs(val)))) {
    std::ostringstream msg;
    msg << "quadrature did not converge for profile '" << label << "' on [0, " << s
        << "] (error estimate " << err << ")";
    throw ValidationError(msg.str());
  }
  return s < 0.0 ? -val : val;
}

// ∫_0^s f.
double anti1(const Profile1D& p, double s) {
  if (p.anti1) return p.anti1(s);
  return quad(p.f, s, p.name);
}

// ∫_0^s (s - r) f(r) dr.
double anti2(const Profile1D& p, double s) {
  if (p.anti2) return p.anti2(s);
  return quad([&](double r) { return (s - r) * p.f(r); }, s, p.name);
}

// θ-type fields: f0(e^t x2) and its partials.
void fill_transported(const Profile1D& p, double x2, double t, double& v, double& v_t,
                      double& v_x2) {
  const double et = std::exp(t);
  const double s = et * x2;
  const double d = p.df(s);
  v = p.f(s);
  v_x2 = et * d;
  v_t = x2 * et * d;
}

}  // namespace

FieldSample wedge_eval(const Profile1D& theta0, double x1, double x2, double t) {
  FieldSample out;
  const bool upper = x2 >= 0.0;
  const double sgn = upper ? 1.0 : -1.0;
  out.psi = sgn * 0.5 * x2 * x2 - x1 * x2;
  out.psi_x1 = -x2;
  out.psi_x2 = sgn * x2 - x1;
  out.u1 = -sgn * x2 + x1;
  out.u2 = -x2;
  out.has_omega = true;
  out.omega = sgn;
  fill_transported(theta0, x2, t, out.theta, out.theta_t, out.theta_x2);
  return out;
}

double sigma_from_omega0(const Profile1D& omega0, double x2, double t) {
  const double et = std::exp(t);
  const double s = et * x2;
  const double sgn = x2 >= 0.0 ? 1.0 : -1.0;
  if (s == 0.0) return omega0.f(0.0);
  return sgn * 2.0 * anti2(omega0, s) / (s * s);
}

FieldSample moving_domain_eval(const Profile1D& omega0, const Profile1D& theta0, double x1,
                               double x2, double t) {
  const double et = std::exp(t);
  const double s = et * x2;
  // ψ = P(x2, t) - x1 x2 with P = ±σ x2²/2 = e^{-2t} ∫_0^s (s - r) ω0(r) dr.
  const double P = anti2(omega0, s) / (et * et);
  const double Px2 = anti1(omega0, s) / et;
  FieldSample out;
  out.psi = P - x1 * x2;
  out.psi_x1 = -x2;
  out.psi_x2 = Px2 - x1;
  out.u1 = -Px2 + x1;
  out.u2 = -x2;
  out.has_omega = true;
  fill_transported(omega0, x2, t, out.omega, out.omega_t, out.omega_x2);
  fill_transported(theta0, x2, t, out.theta, out.theta_t, out.theta_x2);
  return out;
}

FieldSample modified_eval(const Profile1D& rho0, const Profile1D& omega0, double x1, double x2,
                          double t) {
  if (!rho0.d2f) throw ValidationError("modified oracle: profile '" + rho0.name + "' lacks f''");
  const double et = std::exp(t);
  const double g = et - 1.0;
  const double s = et * x2;
  const double r = rho0.f(s);
  const double dr = rho0.df(s);
  const double d2r = rho0.d2f(s);
  const double r00 = rho0.f(0.0);
  const double w0 = omega0.f(s);
  const double dw0 = omega0.df(s);
  // (ρ0 ρ0')' = ρ0'² + ρ0 ρ0''
  const double q = r * dr;
  const double dq = dr * dr + r * d2r;

  FieldSample out;
  fill_transported(rho0, x2, t, out.theta, out.theta_t, out.theta_x2);
  out.has_omega = true;
  out.omega = w0 - 2.0 * g * q;
  out.omega_x2 = et * (dw0 - 2.0 * g * dq);
  out.omega_t = x2 * et * dw0 - 2.0 * et * q - 2.0 * g * x2 * et * dq;

  // P'' = ω with P(0) = P'(0) = 0; the ρ0² pieces integrate in closed form
  // up to ∫ρ0².
  const double Px2 = (anti1(omega0, s) - g * (r * r - r00 * r00)) / et;
  const double int_r2 = quad([&](double q2) { return rho0.f(q2) * rho0.f(q2); }, s, rho0.name);
  const double P = (anti2(omega0, s) - g * (int_r2 - s * r00 * r00)) / (et * et);
  out.psi = P - x1 * x2;
  out.psi_x1 = -x2;
  out.psi_x2 = Px2 - x1;
  out.u1 = -Px2 + x1;
  out.u2 = -x2;
  return out;
}

OracleField make_wedge(Profile1D theta0) {
  OracleField f;
  f.family = Family::Wedge;
  f.model = ModelKind::Boussinesq;
  f.label = "wedge/" + theta0.name;
  f.eval = [p = std::move(theta0)](double x1, double x2, double t) {
    return wedge_eval(p, x1, x2, t);
  };
  f.boundary_x1 = [](double x2, double) { return 0.5 * std::abs(x2); };
  return f;
}

OracleField make_moving_domain(Profile1D omega0, Profile1D theta0) {
  OracleField f;
  f.family = Family::MovingDomain;
  f.model = ModelKind::Boussinesq;
  f.label = "moving-domain/" + omega0.name + "," + theta0.name;
  f.boundary_x1 = [w = omega0](double x2, double t) {
    // 2 x1 = ±σ x2
    return 0.5 * (x2 >= 0.0 ? 1.0 : -1.0) * sigma_from_omega0(w, x2, t) * x2;
  };
  f.eval = [w = std::move(omega0), th = std::move(theta0)](double x1, double x2, double t) {
    return moving_domain_eval(w, th, x1, x2, t);
  };
  return f;
}

OracleField make_modified(Profile1D rho0, Profile1D omega0) {
  OracleField f;
  f.family = Family::ModifiedReduced;
  f.model = ModelKind::ModifiedBoussinesq;
  f.label = "modified/" + rho0.name + "," + omega0.name;
  f.eval = [r = std::move(rho0), w = std::move(omega0)](double x1, double x2, double t) {
    return modified_eval(r, w, x1, x2, t);
  };
  return f;
}

OracleField make_stationary(double c) {
  OracleField f;
  f.family = Family::Stationary;
  f.model = ModelKind::SingularScalar;
  f.label = "stationary/const:" + std::to_string(c);
  f.eval = [c](double, double x2, double) {
    FieldSample out;
    out.theta = c;
    out.psi = -c * x2;
    out.psi_x2 = -c;
    out.u1 = c;
    return out;
  };
  return f;
}

OracleField make_modified_printed() {
  OracleField f = make_modified(Profile1D::sine(), Profile1D::sign());
  f.label = "modified/paper-printed";
  f.eval = [consistent = f.eval, r2 = Profile1D::sine(2.0)](double x1, double x2, double t) {
    FieldSample out = consistent(x1, x2, t);
    fill_transported(r2, x2, t, out.theta, out.theta_t, out.theta_x2);
    return out;
  };
  return f;
}

OracleField preset(Family family, std::string_view name) {
  switch (family) {
    case Family::Wedge:
      return make_wedge(Profile1D::by_name(name));
    case Family::MovingDomain:
      if (name == "identity") return make_moving_domain(Profile1D::identity(), Profile1D::identity());
      return make_moving_domain(Profile1D::by_name(name), Profile1D::by_name(name));
    case Family::ModifiedReduced:
      if (name == "linear") return make_modified(Profile1D::identity(), Profile1D::sign());
      if (name == "oscillatory" || name == "oscillatory-consistent")
        return make_modified(Profile1D::sine(), Profile1D::sign());
      if (name == "paper-printed") return make_modified_printed();
      break;
    case Family::Stationary:
      if (name == "const") return make_stationary(1.0);
      if (name.starts_with("const:")) return make_stationary(Profile1D::by_name(name).f(0.0));
      break;
  }
  throw ValidationError("unknown preset '" + std::string(name) + "' for oracle family " +
                        std::string(to_string(family)));
}

TimeSeries growth_envelope(const OracleField& field, double lo, double hi,
                           std::span<const double> times, EnvelopeTarget target) {
  if (!(hi > lo)) throw ValidationError("growth_envelope: empty interval");
  if (target == EnvelopeTarget::Omega && !field(0.0, lo, 0.0).has_omega)
    throw ValidationError("growth_envelope: family " + field.label + " has no vorticity");
  TimeSeries out;
  for (const double t : times) {
    auto neg = [&](double x2) {
      const FieldSample s = field(0.0, x2, t);
      return -std::abs(target == EnvelopeTarget::Theta ? s.theta_x2 : s.omega_x2);
    };
    out.push(t, -detail::scan_min(neg, lo, hi).second);
  }
  return out;
}

}  // namespace invlab::oracles
