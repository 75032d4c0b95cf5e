#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace hullbound {

// Parsed scalar expression in the single free variable `x`.
//
// Grammar, loosest binding first:
//   additive        :=  multiplicative (('+' | '-') multiplicative)*
//   multiplicative  :=  unary (('*' | '/') unary)*
//   unary           :=  '-' unary | power
//   power           :=  primary ('^' unary)?          // right associative
//   primary         :=  number | 'x' | 'pi'
//                     | ('sin'|'cos'|'exp'|'log'|'abs'|'sqrt') '(' additive ')'
//                     | '(' additive ')'
//
// So "2^3^2" is 2^(3^2) and "-x^2" is -(x^2). Nesting is limited to a depth
// of 64. An Expr is immutable after parse and safe to evaluate concurrently.
class Expr {
public:
  struct Node;

  // IEEE double evaluation at x. Domain failures (log of a nonpositive value,
  // division by zero, zero to a negative power, negative base with fractional
  // exponent, sqrt of a negative) and non-finite intermediates throw EvalError
  // rather than propagating NaN/inf.
  double eval(double x) const;

  // Text form that reparses to a structurally identical tree.
  std::string to_string() const;

  std::size_t node_count() const noexcept;
  std::size_t depth() const noexcept;

  const std::string& source() const noexcept { return source_; }

  friend bool structurally_equal(const Expr& a, const Expr& b) noexcept;
  friend Expr parse_expr(std::string_view source);

private:
  Expr(std::shared_ptr<const Node> root, std::string source);

  std::shared_ptr<const Node> root_;
  std::string source_;
};

inline constexpr std::size_t kMaxExprDepth = 64;

// Parses `source`; throws ParseError (with a byte offset) on syntax errors,
// unknown identifiers, and nesting beyond kMaxExprDepth.
Expr parse_expr(std::string_view source);

bool structurally_equal(const Expr& a, const Expr& b) noexcept;

}  // namespace hullbound
