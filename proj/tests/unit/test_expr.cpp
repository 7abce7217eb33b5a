#include <doctest.h>

#include <cmath>

#include "skewsim/expr.hpp"
#include "skewsim/special.hpp"

using namespace skewsim;

TEST_CASE("arithmetic and precedence") {
  CHECK(Expression::parse("1 + 2 * 3")(0.0) == 7.0);
  CHECK(Expression::parse("(1 + 2) * 3")(0.0) == 9.0);
  CHECK(Expression::parse("2 ^ 3 ^ 2")(0.0) == 512.0);
  CHECK(Expression::parse("-2 ^ 2")(0.0) == -4.0);
  CHECK(Expression::parse("8 / 4 / 2")(0.0) == 1.0);
  CHECK(Expression::parse("1e-3 * 1000")(0.0) == doctest::Approx(1.0));
  CHECK(Expression::parse("x * x - 1")(3.0) == 8.0);
}

TEST_CASE("functions and constants") {
  const auto e = Expression::parse("-(pi/2)*cos(pi*x/5)");
  CHECK(e(0.2) == doctest::Approx(-kPi / 2.0 * std::cos(kPi * 0.2 / 5.0)).epsilon(1e-15));
  CHECK(Expression::parse("sqrt(exp(log(4)))")(0.0) == doctest::Approx(2.0));
  CHECK(Expression::parse("sin(x)^2 + cos(x)^2")(1.234) == doctest::Approx(1.0));
}

TEST_CASE("piecewise with left limit") {
  const auto e = Expression::parse("piecewise(x >= 0 ? 1 + x : -1 + x)");
  CHECK(e(0.5) == 1.5);
  CHECK(e(-0.5) == -1.5);
  CHECK(e(0.0) == 1.0);
  CHECK(e.left_limit(0.0) == -1.0);
  const auto f = Expression::parse("piecewise(x >= 1/2 ? 2 : 3)");
  CHECK(f(0.5) == 2.0);
  CHECK(f(0.49) == 3.0);
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(Expression::parse("1 +"), ExprSyntaxError);
  CHECK_THROWS_AS(Expression::parse("foo(x)"), ExprSyntaxError);
  CHECK_THROWS_AS(Expression::parse("(x"), ExprSyntaxError);
  CHECK_THROWS_AS(Expression::parse("x x"), ExprSyntaxError);
  CHECK_THROWS_AS(Expression::parse("piecewise(x >= x ? 1 : 2)"), ExprSyntaxError);
  CHECK_THROWS_AS(Expression::parse("piecewise(y >= 0 ? 1 : 2)"), ExprSyntaxError);
}
