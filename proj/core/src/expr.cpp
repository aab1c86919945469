#include "causalkit/expr.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "causalkit/errors.hpp"

namespace causalkit {

namespace {

constexpr Function kAllFunctions[] = {Function::exp, Function::log, Function::sin,  Function::cos,
                                      Function::abs, Function::min, Function::max, Function::sign};

std::optional<Function> function_from_name(std::string_view name) {
  for (auto fn : kAllFunctions) {
    if (to_string(fn) == name) return fn;
  }
  return std::nullopt;
}

bool is_identifier_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_identifier_char(char c) { return is_identifier_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

enum class TokenKind { number, identifier, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  TokenKind kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::number:
      return "number";
    case TokenKind::identifier:
      return "identifier";
    case TokenKind::plus:
      return "'+'";
    case TokenKind::minus:
      return "'-'";
    case TokenKind::star:
      return "'*'";
    case TokenKind::slash:
      return "'/'";
    case TokenKind::caret:
      return "'^'";
    case TokenKind::lparen:
      return "'('";
    case TokenKind::rparen:
      return "')'";
    case TokenKind::comma:
      return "','";
    case TokenKind::end:
      return "end of input";
  }
  return "token";
}

class Lexer {
public:
  explicit Lexer(std::string_view source) : source_(source) {}

  Token next() {
    while (pos_ < source_.size() && is_space(source_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ == source_.size()) return {TokenKind::end, start, {}};
    const char c = source_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < source_.size() && is_digit(source_[pos_ + 1])))
      return lex_number(start);
    if (is_identifier_start(c)) {
      while (pos_ < source_.size() && is_identifier_char(source_[pos_])) ++pos_;
      return {TokenKind::identifier, start, source_.substr(start, pos_ - start)};
    }
    ++pos_;
    const auto single = [&](TokenKind kind) { return Token{kind, start, source_.substr(start, 1)}; };
    switch (c) {
      case '+':
        return single(TokenKind::plus);
      case '-':
        return single(TokenKind::minus);
      case '*':
        return single(TokenKind::star);
      case '/':
        return single(TokenKind::slash);
      case '^':
        return single(TokenKind::caret);
      case '(':
        return single(TokenKind::lparen);
      case ')':
        return single(TokenKind::rparen);
      case ',':
        return single(TokenKind::comma);
      default:
        throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
    }
  }

private:
  Token lex_number(std::size_t start) {
    while (pos_ < source_.size() && is_digit(source_[pos_])) ++pos_;
    if (pos_ < source_.size() && source_[pos_] == '.') {
      ++pos_;
      while (pos_ < source_.size() && is_digit(source_[pos_])) ++pos_;
    }
    if (pos_ < source_.size() && (source_[pos_] == 'e' || source_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < source_.size() && (source_[look] == '+' || source_[look] == '-')) ++look;
      if (look < source_.size() && is_digit(source_[look])) {
        pos_ = look;
        while (pos_ < source_.size() && is_digit(source_[pos_])) ++pos_;
      } else {
        throw ParseError(look, "malformed exponent in number literal", "digit");
      }
    }
    const auto text = source_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
      throw ParseError(start, "number literal out of range");
    return {TokenKind::number, start, text, value};
  }

  std::string_view source_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(std::string_view source) : lexer_(source) { advance(); }

  Expr parse_all() {
    Expr expr = parse_sum();
    if (current_.kind != TokenKind::end) {
      if (current_.kind == TokenKind::rparen) throw ParseError(current_.offset, "unbalanced ')'", "operator");
      throw ParseError(current_.offset, "trailing input", "operator or end of input");
    }
    return expr;
  }

private:
  void advance() { current_ = lexer_.next(); }

  void expect(TokenKind kind, std::string_view context) {
    if (current_.kind != kind) {
      throw ParseError(current_.offset, std::string("unexpected ") + std::string(describe(current_.kind)) + " " +
                                            std::string(context),
                       std::string(describe(kind)));
    }
    advance();
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    while (current_.kind == TokenKind::plus || current_.kind == TokenKind::minus) {
      const auto op = current_.kind == TokenKind::plus ? BinaryOperator::add : BinaryOperator::sub;
      advance();
      lhs = Expr::binary(op, std::move(lhs), parse_product());
    }
    return lhs;
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    while (current_.kind == TokenKind::star || current_.kind == TokenKind::slash) {
      const auto op = current_.kind == TokenKind::star ? BinaryOperator::mul : BinaryOperator::div;
      advance();
      lhs = Expr::binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (current_.kind == TokenKind::minus) {
      advance();
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (current_.kind == TokenKind::caret) {
      advance();
      return Expr::binary(BinaryOperator::pow, std::move(base), parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    const Token token = current_;
    switch (token.kind) {
      case TokenKind::number:
        advance();
        return Expr::number(token.number);
      case TokenKind::identifier:
        advance();
        if (current_.kind == TokenKind::lparen) return parse_call(token);
        return Expr::variable(std::string(token.text));
      case TokenKind::lparen: {
        advance();
        Expr inner = parse_sum();
        if (current_.kind != TokenKind::rparen)
          throw ParseError(current_.offset, "unbalanced '('", "')'");
        advance();
        return inner;
      }
      default:
        throw ParseError(token.offset, "unexpected " + std::string(describe(token.kind)),
                         "number, identifier or '('");
    }
  }

  Expr parse_call(const Token& name) {
    const auto fn = function_from_name(name.text);
    if (!fn) throw ParseError(name.offset, "unknown function '" + std::string(name.text) + "'", "known function");
    advance();  // '('
    std::vector<Expr> args;
    if (current_.kind != TokenKind::rparen) {
      args.push_back(parse_sum());
      while (current_.kind == TokenKind::comma) {
        advance();
        args.push_back(parse_sum());
      }
    }
    if (current_.kind != TokenKind::rparen)
      throw ParseError(current_.offset, "unbalanced '(' in call to " + std::string(name.text), "',' or ')'");
    advance();
    if (args.size() != arity(*fn)) {
      throw ParseError(name.offset, std::string(name.text) + " takes " + std::to_string(arity(*fn)) +
                                        " argument(s), got " + std::to_string(args.size()));
    }
    return Expr::call(*fn, std::move(args));
  }

  Lexer lexer_;
  Token current_{TokenKind::end, 0, {}};
};

void print_into(const Expr& expr, std::string& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          out += format_double(node.value);
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, UnaryNeg>) {
          out += "(-";
          print_into(node.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          out += '(';
          print_into(node.lhs, out);
          out += ' ';
          out += to_string(node.op);
          out += ' ';
          print_into(node.rhs, out);
          out += ')';
        } else {
          out += to_string(node.fn);
          out += '(';
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i > 0) out += ", ";
            print_into(node.args[i], out);
          }
          out += ')';
        }
      },
      static_cast<const ExprNode::variant&>(expr.node()));
}

double checked(double value, const char* what) {
  if (std::isnan(value)) throw DomainError(std::string(what) + " produced NaN");
  return value;
}

double eval_node(const Expr& expr, const Bindings& bindings) {
  return std::visit(
      [&bindings](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          const auto it = bindings.find(node.name);
          if (it == bindings.end()) throw UnboundVariable(node.name);
          return it->second;
        } else if constexpr (std::is_same_v<T, UnaryNeg>) {
          return -eval_node(node.operand, bindings);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          const double lhs = eval_node(node.lhs, bindings);
          const double rhs = eval_node(node.rhs, bindings);
          switch (node.op) {
            case BinaryOperator::add:
              return checked(lhs + rhs, "addition");
            case BinaryOperator::sub:
              return checked(lhs - rhs, "subtraction");
            case BinaryOperator::mul:
              return checked(lhs * rhs, "multiplication");
            case BinaryOperator::div:
              if (rhs == 0.0) throw DomainError("division by zero");
              return checked(lhs / rhs, "division");
            case BinaryOperator::pow:
              if (lhs == 0.0 && rhs < 0.0) throw DomainError("zero raised to a negative power");
              return checked(std::pow(lhs, rhs), "power");
          }
          return 0.0;
        } else {
          const double first = eval_node(node.args[0], bindings);
          switch (node.fn) {
            case Function::exp:
              return std::exp(first);
            case Function::log:
              if (!(first > 0.0)) throw DomainError("log of non-positive value " + format_double(first));
              return std::log(first);
            case Function::sin:
              return checked(std::sin(first), "sin");
            case Function::cos:
              return checked(std::cos(first), "cos");
            case Function::abs:
              return std::fabs(first);
            case Function::min:
              return std::fmin(first, eval_node(node.args[1], bindings));
            case Function::max:
              return std::fmax(first, eval_node(node.args[1], bindings));
            case Function::sign:
              return first > 0.0 ? 1.0 : (first < 0.0 ? -1.0 : 0.0);
          }
          return 0.0;
        }
      },
      static_cast<const ExprNode::variant&>(expr.node()));
}

void collect_variables(const Expr& expr, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VariableRef>) {
          out.insert(node.name);
        } else if constexpr (std::is_same_v<T, UnaryNeg>) {
          collect_variables(node.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          collect_variables(node.lhs, out);
          collect_variables(node.rhs, out);
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          for (const auto& arg : node.args) collect_variables(arg, out);
        }
      },
      static_cast<const ExprNode::variant&>(expr.node()));
}

}  // namespace

std::string_view to_string(BinaryOperator op) noexcept {
  switch (op) {
    case BinaryOperator::add:
      return "+";
    case BinaryOperator::sub:
      return "-";
    case BinaryOperator::mul:
      return "*";
    case BinaryOperator::div:
      return "/";
    case BinaryOperator::pow:
      return "^";
  }
  return "?";
}

std::string_view to_string(Function fn) noexcept {
  switch (fn) {
    case Function::exp:
      return "exp";
    case Function::log:
      return "log";
    case Function::sin:
      return "sin";
    case Function::cos:
      return "cos";
    case Function::abs:
      return "abs";
    case Function::min:
      return "min";
    case Function::max:
      return "max";
    case Function::sign:
      return "sign";
  }
  return "?";
}

std::size_t arity(Function fn) noexcept { return fn == Function::min || fn == Function::max ? 2 : 1; }

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !is_identifier_start(text.front())) return false;
  for (char c : text) {
    if (!is_identifier_char(c)) return false;
  }
  return true;
}

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

Expr Expr::number(double value) {
  if (!std::isfinite(value) || std::signbit(value))
    throw InvalidParams("number literal must be finite and non-negative, got " + format_double(value));
  return Expr(std::make_shared<const ExprNode>(NumberLiteral{value}));
}

Expr Expr::variable(std::string name) {
  if (!is_identifier(name)) throw InvalidParams("invalid variable name '" + name + "'");
  return Expr(std::make_shared<const ExprNode>(VariableRef{std::move(name)}));
}

Expr Expr::negate(Expr operand) { return Expr(std::make_shared<const ExprNode>(UnaryNeg{std::move(operand)})); }

Expr Expr::binary(BinaryOperator op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(BinaryOp{op, std::move(lhs), std::move(rhs)}));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
  if (args.size() != arity(fn)) {
    throw InvalidParams(std::string(to_string(fn)) + " takes " + std::to_string(arity(fn)) + " argument(s)");
  }
  return Expr(std::make_shared<const ExprNode>(FunctionCall{fn, std::move(args)}));
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = static_cast<const ExprNode::variant&>(*lhs.node_);
  const auto& b = static_cast<const ExprNode::variant&>(*rhs.node_);
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& left) {
        using T = std::decay_t<decltype(left)>;
        const auto& right = std::get<T>(b);
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          return left.value == right.value;
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return left.name == right.name;
        } else if constexpr (std::is_same_v<T, UnaryNeg>) {
          return left.operand == right.operand;
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          return left.op == right.op && left.lhs == right.lhs && left.rhs == right.rhs;
        } else {
          return left.fn == right.fn && left.args == right.args;
        }
      },
      a);
}

Expr operator+(Expr lhs, Expr rhs) { return Expr::binary(BinaryOperator::add, std::move(lhs), std::move(rhs)); }
Expr operator-(Expr lhs, Expr rhs) { return Expr::binary(BinaryOperator::sub, std::move(lhs), std::move(rhs)); }
Expr operator*(Expr lhs, Expr rhs) { return Expr::binary(BinaryOperator::mul, std::move(lhs), std::move(rhs)); }
Expr operator/(Expr lhs, Expr rhs) { return Expr::binary(BinaryOperator::div, std::move(lhs), std::move(rhs)); }
Expr operator-(Expr operand) { return Expr::negate(std::move(operand)); }

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string print(const Expr& expr) {
  std::string out;
  print_into(expr, out);
  return out;
}

double evaluate(const Expr& expr, const Bindings& bindings) { return eval_node(expr, bindings); }

std::set<std::string> free_variables(const Expr& expr) {
  std::set<std::string> out;
  collect_variables(expr, out);
  return out;
}

}  // namespace causalkit
