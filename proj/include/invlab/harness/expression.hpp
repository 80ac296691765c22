#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace invlab::harness {

struct ExprNode;

/// Arithmetic expression in x1 and x2 (constants pi and e; functions sin,
/// cos, tan, exp, log, sqrt, tanh, abs; operators + - * / ^). Parsed once,
/// evaluated with exact first derivatives via forward-mode differentiation.
class Expression {
 public:
  /// Throws ValidationError with the offending column on syntax errors.
  static Expression parse(std::string_view text);

  double operator()(double x1, double x2) const;
  /// ∂/∂x1 and ∂/∂x2 at a point.
  double d_x1(double x1, double x2) const;
  double d_x2(double x1, double x2) const;

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::shared_ptr<const ExprNode> root_;
};

}  // namespace invlab::harness
