#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egregium/fields.hpp"

namespace egregium {

/// Immutable arithmetic expression over named variables.
///
/// Grammar: + - * / ^ (right associative), unary minus, parentheses,
/// decimal literals, the constant `pi`, and the functions sin, cos, sinh,
/// cosh, exp, sqrt. Variables are resolved to indices at parse time.
/// Differentiation is symbolic with light constant folding.
class Expression {
 public:
  /// Throws Error{SpecParse} on malformed input or unknown identifiers.
  static Expression parse(std::string_view text, const std::vector<std::string>& variables);
  static Expression constant(double value);
  static Expression variable(int index);

  double evaluate(std::span<const double> values) const;
  Expression derivative(int variable) const;
  std::string to_string() const;

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Variable names x1..x{count}.
std::vector<std::string> indexed_names(std::string_view stem, int count);

/// Scalar field with exact symbolic derivatives up to order 3.
ScalarField scalar_field_from_expression(const Expression& expr, int arity);

/// Map with exact symbolic derivatives up to order 3.
VectorMap vector_map_from_expressions(const std::vector<Expression>& components, int arity);

}  // namespace egregium
