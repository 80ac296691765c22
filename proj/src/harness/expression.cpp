#include "invlab/harness/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "invlab/error.hpp"

namespace invlab::harness {

namespace {

struct Dual {
  double v;
  double d;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

Dual power(Dual a, Dual b) {
  const double v = std::pow(a.v, b.v);
  // Constant integer exponents must work for negative bases.
  if (b.d == 0.0) return {v, b.v * std::pow(a.v, b.v - 1.0) * a.d};
  return {v, v * (b.d * std::log(a.v) + b.v * a.d / a.v)};
}

enum class Op { Num, X1, X2, Add, Sub, Mul, Div, Pow, Neg, Call };

}  // namespace

struct ExprNode {
  Op op = Op::Num;
  double value = 0.0;
  std::string fn;
  std::shared_ptr<const ExprNode> a, b;

  Dual eval(double x1, double x2, int wrt) const {
    switch (op) {
      case Op::Num: return {value, 0.0};
      case Op::X1: return {x1, wrt == 1 ? 1.0 : 0.0};
      case Op::X2: return {x2, wrt == 2 ? 1.0 : 0.0};
      case Op::Add: return a->eval(x1, x2, wrt) + b->eval(x1, x2, wrt);
      case Op::Sub: return a->eval(x1, x2, wrt) - b->eval(x1, x2, wrt);
      case Op::Mul: return a->eval(x1, x2, wrt) * b->eval(x1, x2, wrt);
      case Op::Div: return a->eval(x1, x2, wrt) / b->eval(x1, x2, wrt);
      case Op::Pow: return power(a->eval(x1, x2, wrt), b->eval(x1, x2, wrt));
      case Op::Neg: {
        const Dual u = a->eval(x1, x2, wrt);
        return {-u.v, -u.d};
      }
      case Op::Call: return call(a->eval(x1, x2, wrt));
    }
    return {0.0, 0.0};
  }

  Dual call(Dual u) const {
    if (fn == "sin") return {std::sin(u.v), std::cos(u.v) * u.d};
    if (fn == "cos") return {std::cos(u.v), -std::sin(u.v) * u.d};
    if (fn == "tan") {
      const double c = std::cos(u.v);
      return {std::tan(u.v), u.d / (c * c)};
    }
    if (fn == "exp") {
      const double e = std::exp(u.v);
      return {e, e * u.d};
    }
    if (fn == "log") return {std::log(u.v), u.d / u.v};
    if (fn == "sqrt") {
      const double r = std::sqrt(u.v);
      return {r, 0.5 * u.d / r};
    }
    if (fn == "tanh") {
      const double th = std::tanh(u.v);
      return {th, (1.0 - th * th) * u.d};
    }
    // abs
    return {std::abs(u.v), (u.v >= 0.0 ? 1.0 : -1.0) * u.d};
  }
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("expression '" + std::string(s_) + "': " + why + " at column " +
                          std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Op::Add, n, term());
      else if (accept('-')) n = make(Op::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Op::Mul, n, unary());
      else if (accept('/')) n = make(Op::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  // Right-associative; binds tighter than unary minus on its left operand.
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += used;
    auto n = std::make_shared<ExprNode>();
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    if (id == "x1") return make(Op::X1);
    if (id == "x2") return make(Op::X2);
    if (id == "pi" || id == "e") {
      auto n = std::make_shared<ExprNode>();
      n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
      return n;
    }
    static const std::vector<std::string> fns = {"sin", "cos", "tan", "exp",
                                                 "log", "sqrt", "tanh", "abs"};
    if (std::find(fns.begin(), fns.end(), id) == fns.end()) {
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    if (!accept('(')) fail("expected '(' after " + id);
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Call;
    n->fn = id;
    n->a = expr();
    if (!accept(')')) fail("expected ')'");
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(e.text_).parse();
  return e;
}

double Expression::operator()(double x1, double x2) const { return root_->eval(x1, x2, 0).v; }
double Expression::d_x1(double x1, double x2) const { return root_->eval(x1, x2, 1).d; }
double Expression::d_x2(double x1, double x2) const { return root_->eval(x1, x2, 2).d; }

}  // namespace invlab::harness
