#pragma once

#include <memory>
#include <string>

#include "skewsim/errors.hpp"

namespace skewsim {

class ExprSyntaxError : public Error {
public:
  using Error::Error;
};

/// Tiny arithmetic language for user drifts.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'pi' | fn '(' expr ')' | '(' expr ')'
///            | 'piecewise' '(' 'x' '>=' expr '?' expr ':' expr ')'
///   fn      := sin | cos | sqrt | exp | log
///
/// The threshold of piecewise must not depend on x.
class Expression {
public:
  Expression() = default;
  static Expression parse(const std::string& source);

  double operator()(double x) const { return eval(x, false); }
  /// Value with every piecewise switch taken as a left limit, so that at
  /// x == c the "< c" branch is used.
  double left_limit(double x) const { return eval(x, true); }

  const std::string& source() const noexcept { return source_; }
  bool empty() const noexcept { return !root_; }

  struct Node;

private:
  double eval(double x, bool left) const;

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace skewsim
