#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace causalkit {

enum class BinaryOperator { add, sub, mul, div, pow };
enum class Function { exp, log, sin, cos, abs, min, max, sign };

std::string_view to_string(BinaryOperator op) noexcept;
std::string_view to_string(Function fn) noexcept;
std::size_t arity(Function fn) noexcept;

struct ExprNode;

/// Immutable structural-equation expression.
///
/// An `Expr` is a shared handle to an immutable tree, so copies are cheap
/// and trees can be shared between models and threads. Equality is
/// structural.
class Expr {
public:
  static Expr number(double value);
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(BinaryOperator op, Expr lhs, Expr rhs);
  static Expr call(Function fn, std::vector<Expr> args);

  const ExprNode& node() const noexcept { return *node_; }

  friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const ExprNode> node_;
};

Expr operator+(Expr lhs, Expr rhs);
Expr operator-(Expr lhs, Expr rhs);
Expr operator*(Expr lhs, Expr rhs);
Expr operator/(Expr lhs, Expr rhs);
Expr operator-(Expr operand);

/// Literal. Always finite and non-negative: the grammar spells negative
/// constants as a negation of a literal.
struct NumberLiteral {
  double value;
};

struct VariableRef {
  std::string name;
};

struct UnaryNeg {
  Expr operand;
};

struct BinaryOp {
  BinaryOperator op;
  Expr lhs;
  Expr rhs;
};

struct FunctionCall {
  Function fn;
  std::vector<Expr> args;
};

struct ExprNode : std::variant<NumberLiteral, VariableRef, UnaryNeg, BinaryOp, FunctionCall> {
  using variant::variant;
};

using Bindings = std::map<std::string, double, std::less<>>;

/// Grammar, lowest to highest precedence:
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | identifier | identifier '(' args ')' | '(' sum ')'
///
/// so `-x^2` is `-(x^2)` and `a^b^c` is `a^(b^c)`. Throws ParseError.
Expr parse(std::string_view source);

/// Fully parenthesized canonical text; `parse(print(e)) == e`.
std::string print(const Expr& expr);

/// Throws UnboundVariable for a missing binding and DomainError for
/// division by zero, log of a non-positive value, or any NaN result.
double evaluate(const Expr& expr, const Bindings& bindings);

std::set<std::string> free_variables(const Expr& expr);

bool is_identifier(std::string_view text) noexcept;

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace causalkit
