#include "invlab/profile.hpp"

#include <cmath>
#include <string>

#include "invlab/error.hpp"

namespace invlab {

Profile1D Profile1D::sine(double a) {
  Profile1D p;
  p.name = a == 1.0 ? "sin" : "sin(" + std::to_string(a) + "s)";
  p.f = [a](double s) { return std::sin(a * s); };
  p.df = [a](double s) { return a * std::cos(a * s); };
  p.d2f = [a](double s) { return -a * a * std::sin(a * s); };
  return p;
}

Profile1D Profile1D::cosine(double a) {
  Profile1D p;
  p.name = a == 1.0 ? "cos" : "cos(" + std::to_string(a) + "s)";
  p.f = [a](double s) { return std::cos(a * s); };
  p.df = [a](double s) { return -a * std::sin(a * s); };
  p.d2f = [a](double s) { return -a * a * std::cos(a * s); };
  return p;
}

Profile1D Profile1D::identity() {
  Profile1D p;
  p.name = "identity";
  p.f = [](double s) { return s; };
  p.df = [](double) { return 1.0; };
  p.d2f = [](double) { return 0.0; };
  p.anti1 = [](double s) { return 0.5 * s * s; };
  p.anti2 = [](double s) { return s * s * s / 6.0; };
  return p;
}

Profile1D Profile1D::constant(double c) {
  Profile1D p;
  p.name = c == 0.0 ? "zero" : "const:" + std::to_string(c);
  p.f = [c](double) { return c; };
  p.df = [](double) { return 0.0; };
  p.d2f = [](double) { return 0.0; };
  p.anti1 = [c](double s) { return c * s; };
  p.anti2 = [c](double s) { return 0.5 * c * s * s; };
  return p;
}

Profile1D Profile1D::sign() {
  Profile1D p;
  p.name = "sign";
  p.f = [](double s) { return s >= 0.0 ? 1.0 : -1.0; };
  p.df = [](double) { return 0.0; };
  p.d2f = [](double) { return 0.0; };
  p.anti1 = [](double s) { return std::abs(s); };
  p.anti2 = [](double s) { return 0.5 * s * std::abs(s); };
  return p;
}

Profile1D Profile1D::tanh() {
  Profile1D p;
  p.name = "tanh";
  p.f = [](double s) { return std::tanh(s); };
  p.df = [](double s) {
    const double c = 1.0 / std::cosh(s);
    return c * c;
  };
  p.d2f = [](double s) {
    const double c = 1.0 / std::cosh(s);
    return -2.0 * std::tanh(s) * c * c;
  };
  return p;
}

Profile1D Profile1D::by_name(std::string_view name) {
  if (name == "sin") return sine();
  if (name == "sin2") return sine(2.0);
  if (name == "cos") return cosine();
  if (name == "cos2") return cosine(2.0);
  if (name == "identity" || name == "id") return identity();
  if (name == "sign") return sign();
  if (name == "tanh") return tanh();
  if (name == "zero") return zero();
  if (name.starts_with("const:")) {
    const std::string value(name.substr(6));
    try {
      std::size_t used = 0;
      const double c = std::stod(value, &used);
      if (used == value.size()) return constant(c);
    } catch (const std::exception&) {
    }
    throw ValidationError("profile: bad constant '" + value + "'");
  }
  throw ValidationError("profile: unknown profile '" + std::string(name) + "'");
}

}  // namespace invlab
