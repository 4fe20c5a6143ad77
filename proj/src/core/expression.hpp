#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "grid.hpp"

namespace yf {

namespace detail {
struct ExprNode;
}

// A compiled real expression over the variables s and t.
//
// Grammar: numbers, s, t, S, T (grid extents), pi, e; binary + - * / and
// right-associative ^ (or **); unary +/-; calls to sin, cos, tan, exp, log,
// sqrt, abs. Example: "sin(2*pi*s/T)^2 * cos(t)".
class Expression {
 public:
  static Expression parse(std::string_view text);

  double evaluate(double s, double t, double S = 1.0, double T = 1.0) const;
  const std::string& text() const { return text_; }

 private:
  Expression(std::string text, std::shared_ptr<const detail::ExprNode> root);

  std::string text_;
  std::shared_ptr<const detail::ExprNode> root_;
};

GridFunction sample_expression(const Expression& expr, const GridSpec& grid);
GridFunction sample_expression(std::string_view text, const GridSpec& grid);

}  // namespace yf
