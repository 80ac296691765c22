#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace invlab {

using Fn1 = std::function<double(double)>;

/// A closed-form function of one variable with exact derivatives.
///
/// `anti1` and `anti2` are optional closed forms of ∫_0^s f(r) dr and
/// ∫_0^s (s - r) f(r) dr; when absent, consumers fall back to quadrature.
struct Profile1D {
  std::string name;
  Fn1 f;
  Fn1 df;
  Fn1 d2f;
  Fn1 anti1;
  Fn1 anti2;

  double operator()(double s) const { return f(s); }

  static Profile1D sine(double freq = 1.0);
  static Profile1D cosine(double freq = 1.0);
  static Profile1D identity();
  static Profile1D constant(double c);
  static Profile1D zero() { return constant(0.0); }
  /// sign(s) with sign(0) = +1 (the x2 >= 0 branch); derivative 0.
  static Profile1D sign();
  static Profile1D tanh();

  /// Registry lookup: "sin", "sin2", "cos", "cos2", "identity", "sign",
  /// "tanh", "zero", "const:<c>". Throws ValidationError on unknown names.
  static Profile1D by_name(std::string_view name);
};

}  // namespace invlab
