#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smurf {

/// Immutable arithmetic expression over variables x1..xM.
///
/// Grammar (highest precedence first):
///   primary := number | pi | e | x<k> | name '(' expr {',' expr} ')' | '(' expr ')'
///   power   := primary ['^' unary]            (right associative)
///   unary   := '-' unary | power
///   term    := unary {('*' | '/') unary}
///   expr    := term {('+' | '-') term}
/// Functions: exp log sin cos tan tanh sqrt abs cas sigmoid (one argument each).
class Expression {
 public:
  struct Node;

  /// Throws ParseError with the offending byte offset.
  static Expression parse(std::string_view text);

  double evaluate(std::span<const double> vars) const;
  /// Largest variable index used (0 for a constant expression).
  int max_variable() const noexcept { return max_var_; }
  /// Canonical text with minimal parentheses; parse(to_string()) re-prints identically.
  std::string to_string() const;

 private:
  explicit Expression(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
  int max_var_ = 0;
};

inline Expression parse_expression(std::string_view text) { return Expression::parse(text); }

}  // namespace smurf
