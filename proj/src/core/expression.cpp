#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "error.hpp"

namespace yf {
namespace detail {

enum class Var { S, T, ExtentS, ExtentT };
enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

struct ExprNode {
  struct Number { double value; };
  struct Variable { Var var; };
  struct Unary { char op; std::unique_ptr<ExprNode> arg; };
  struct Binary { char op; std::unique_ptr<ExprNode> lhs, rhs; };
  struct Call { Func fn; std::unique_ptr<ExprNode> arg; };

  std::variant<Number, Variable, Unary, Binary, Call> node;
};

namespace {

struct Env {
  double s, t, S, T;
};

double eval(const ExprNode& n, const Env& env) {
  return std::visit(
      [&](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExprNode::Number>) {
          return v.value;
        } else if constexpr (std::is_same_v<V, ExprNode::Variable>) {
          switch (v.var) {
            case Var::S: return env.s;
            case Var::T: return env.t;
            case Var::ExtentS: return env.S;
            case Var::ExtentT: return env.T;
          }
          return 0.0;
        } else if constexpr (std::is_same_v<V, ExprNode::Unary>) {
          const double a = eval(*v.arg, env);
          return v.op == '-' ? -a : a;
        } else if constexpr (std::is_same_v<V, ExprNode::Binary>) {
          const double a = eval(*v.lhs, env);
          const double b = eval(*v.rhs, env);
          switch (v.op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            case '^': return std::pow(a, b);
          }
          return 0.0;
        } else {
          const double a = eval(*v.arg, env);
          switch (v.fn) {
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Tan: return std::tan(a);
            case Func::Exp: return std::exp(a);
            case Func::Log: return std::log(a);
            case Func::Sqrt: return std::sqrt(a);
            case Func::Abs: return std::abs(a);
          }
          return 0.0;
        }
      },
      n.node);
}

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr make(auto&& alt) {
  auto n = std::make_unique<ExprNode>();
  n->node = std::forward<decltype(alt)>(alt);
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('+'|'-') unary | power
// power  := atom ('^' unary)?
// atom   := number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "expression '" + std::string(text_) + "': " + what +
                                    " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_pow() {
    skip_ws();
    if (text_.substr(pos_, 2) == "**") {
      pos_ += 2;
      return true;
    }
    return accept('^');
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(ExprNode::Binary{'+', std::move(lhs), term()});
      } else if (accept('-')) {
        lhs = make(ExprNode::Binary{'-', std::move(lhs), term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      skip_ws();
      if (text_.substr(pos_, 2) == "**") return lhs;
      if (accept('*')) {
        lhs = make(ExprNode::Binary{'*', std::move(lhs), unary()});
      } else if (accept('/')) {
        lhs = make(ExprNode::Binary{'/', std::move(lhs), unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(ExprNode::Unary{'-', unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept_pow()) return make(ExprNode::Binary{'^', std::move(base), unary()});
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    error(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) error("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make(ExprNode::Number{v});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "s") return make(ExprNode::Variable{Var::S});
    if (name == "t") return make(ExprNode::Variable{Var::T});
    if (name == "S") return make(ExprNode::Variable{Var::ExtentS});
    if (name == "T") return make(ExprNode::Variable{Var::ExtentT});
    if (name == "pi") return make(ExprNode::Number{std::numbers::pi});
    if (name == "e") return make(ExprNode::Number{std::numbers::e});

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin}, {"cos", Func::Cos},   {"tan", Func::Tan}, {"exp", Func::Exp},
        {"log", Func::Log}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
    };
    for (const auto& [fname, fn] : kFuncs) {
      if (name == fname) {
        if (!accept('(')) error("expected '(' after " + std::string(name));
        NodePtr arg = expr();
        if (!accept(')')) error("expected ')'");
        return make(ExprNode::Call{fn, std::move(arg)});
      }
    }
    error("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

Expression::Expression(std::string text, std::shared_ptr<const detail::ExprNode> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) {
  detail::Parser parser(text);
  return Expression(std::string(text), parser.parse());
}

double Expression::evaluate(double s, double t, double S, double T) const {
  return detail::eval(*root_, detail::Env{s, t, S, T});
}

GridFunction sample_expression(const Expression& expr, const GridSpec& grid) {
  return sample_function(
      [&](double s, double t) { return expr.evaluate(s, t, grid.S(), grid.T()); }, grid);
}

GridFunction sample_expression(std::string_view text, const GridSpec& grid) {
  return sample_expression(Expression::parse(text), grid);
}

}  // namespace yf
