#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "egregium/expression.hpp"
#include "support/checks.hpp"

using namespace egregium;

TEST_SUITE("expression") {

TEST_CASE("grammar covers operators, functions and precedence") {
  const auto names = indexed_names("x", 2);
  const std::vector<double> at{0.5, 2.0};
  auto eval = [&](const char* text) { return Expression::parse(text, names).evaluate(at); };
  CHECK(eval("1 + 2*3") == 7.0);
  CHECK(eval("2^3^2") == 512.0);
  CHECK(eval("-x2^2") == -4.0);
  CHECK(eval("(x1 + x2)/x1") == 5.0);
  CHECK(eval("sin(pi/2) + cos(0) + exp(0) + sqrt(x2*8)") == doctest::Approx(7.0));
  CHECK(eval("cosh(x1)^2 - sinh(x1)^2") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval("1e-1 * 20") == doctest::Approx(2.0));
}

TEST_CASE("malformed expressions raise parse errors") {
  const auto names = indexed_names("x", 2);
  for (const char* bad : {"x1 + * x2", "(x1", "x3", "foo(x1)", "", "1 2", "x1)"}) {
    CAPTURE(bad);
    CHECK(checks::error_kind([&] { Expression::parse(bad, names); }) == ErrorKind::SpecParse);
  }
}

TEST_CASE("symbolic derivatives match central differences") {
  const auto names = indexed_names("x", 3);
  const auto e = Expression::parse("sin(x1*x2)/(1 + x3^2) + exp(x1)*sqrt(2 + x2) - x3^4", names);
  std::vector<double> x{0.3, 0.7, -0.4};
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    auto up = x, down = x;
    up[i] += h;
    down[i] -= h;
    const double fd = (e.evaluate(up) - e.evaluate(down)) / (2 * h);
    CHECK(e.derivative(i).evaluate(x) == doctest::Approx(fd).epsilon(1e-8));
  }
}

}
