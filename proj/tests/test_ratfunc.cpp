#include <doctest.h>

#include "coxlog/ratfunc.hpp"
#include "coxlog/textio.hpp"

using namespace coxlog;

namespace {
VarsPtr xy() {
  static VarsPtr v = make_vars({"x", "y"});
  return v;
}
MultiPoly P(const std::string& s) { return parse_poly(xy(), s); }
RatFunc R(const std::string& s) { return parse_ratfunc(xy(), s); }
}  // namespace

TEST_CASE("normal form") {
  RatFunc f(P("x^2 - y^2"), P("x + y"));
  CHECK(f.is_polynomial());
  CHECK(f.as_polynomial() == P("x - y"));
  // denominator is monic, scalar moves to the numerator
  RatFunc g(P("x"), P("2*y"));
  CHECK(g.num() == P("1/2*x"));
  CHECK(g.den() == P("y"));
  CHECK_THROWS_AS(RatFunc(P("x"), P("0")), error);
  CHECK(RatFunc(P("0"), P("x")).is_zero());
}

TEST_CASE("arithmetic") {
  CHECK(R("1/x") + R("1/y") == R("(x + y)/(x*y)"));
  CHECK(R("1/x") * R("x^2") == R("x"));
  CHECK(R("x/y") / R("x/y") == RatFunc(1));
  CHECK(R("x/y") * R("y/x") == RatFunc(1));
  CHECK((R("1/x") - R("1/x")).is_zero());
  CHECK(-R("x") == R("-x"));
  CHECK(R("1/(x - y)").pow(-2) == R("x^2 - 2*x*y + y^2"));
  CHECK_THROWS_AS(R("0").inverse(), error);
}

TEST_CASE("factored construction agrees with the general path") {
  MultiPoly x = P("x"), xpy = P("x + y");
  RatFunc a = RatFunc::from_factored(P("y"), {{x, 2}, {xpy, 1}});
  RatFunc b(P("y"), P("x^2") * xpy);
  CHECK(a == b);
  CHECK(a.factors_known());
  // negative exponents move factors to the numerator
  RatFunc c = RatFunc::from_factored(P("1"), {{x, -2}});
  CHECK(c == R("x^2"));
  // cancellation happens against the cache
  RatFunc d = RatFunc::from_factored(P("x^2*y"), {{x, 2}, {P("y"), 1}});
  CHECK(d == RatFunc(1));
  // non-monic factors are normalized with the scalar folded into the numerator
  RatFunc e = RatFunc::from_factored(P("1"), {{P("2*x"), 1}});
  CHECK(e == R("(1/2)/(x)"));
}

TEST_CASE("factored and general arithmetic give equal results") {
  MultiPoly x = P("x"), y = P("y"), xpy = P("x + y");
  RatFunc fk = RatFunc::from_factored(P("x - y"), {{x, 1}, {xpy, 2}});
  RatFunc gen(P("x - y"), x * xpy * xpy);
  REQUIRE(fk == gen);
  RatFunc hk = RatFunc::from_factored(P("3"), {{xpy, 1}, {y, 1}});
  RatFunc hgen(P("3"), xpy * y);
  CHECK(fk + hk == gen + hgen);
  CHECK(fk * hk == gen * hgen);
  CHECK(fk - hk == gen - hgen);
  CHECK(fk / hk == gen / hgen);
  CHECK((fk + hk).factors_known());
}

TEST_CASE("derivatives") {
  CHECK(R("1/x").partial_derivative(0) == R("-1/x^2"));
  CHECK(R("x/y").partial_derivative(1) == R("-x/y^2"));
  CHECK(R("x^2*y").partial_derivative(0) == R("2*x*y"));
  // quotient rule on a factored function keeps the fast path
  RatFunc f = RatFunc::from_factored(P("x^3"), {{P("x + y"), 1}});
  RatFunc expect = R("(3*x^2*(x + y) - x^3)/((x + y)^2)");
  CHECK(f.partial_derivative(0) == expect);
  CHECK(f.partial_derivative(0).factors_known());
}

TEST_CASE("pole order along a hyperplane") {
  CHECK(ord_along(R("1/x^2"), P("x")) == 2);
  CHECK(ord_along(R("x"), P("x")) == -1);
  CHECK(ord_along(R("y"), P("x")) == 0);
  CHECK(ord_along(R("(x - y)/(x + y)"), P("x + y")) == 1);
  // representation independent: cancellation does not change the answer
  RatFunc f(P("x^2 - y^2"), P("x + y"));
  CHECK(ord_along(f, P("x + y")) == 0);
  CHECK(ord_along(f, P("2*x + 2*y")) == 0);
  CHECK(ord_along(R("(x^2 + 2*x*y + y^2)/(x - y)"), P("x + y")) == -2);
  CHECK_THROWS_AS(ord_along(R("0"), P("x")), error);
  CHECK_THROWS_AS(ord_along(R("x"), P("2")), error);
}

TEST_CASE("rendering and parsing") {
  CHECK(R("(x^3*y)/(x^2 - y^2)").to_string() == "(x^3*y)/(x^2 - y^2)");
  CHECK(R("x - y").to_string() == "x - y");
  for (const char* s : {"1/x", "(x + y)/(x*y)", "x^2 - 1/2", "-1/3*x"}) {
    RatFunc f = R(s);
    CHECK(parse_ratfunc(xy(), f.to_string()) == f);
  }
}
