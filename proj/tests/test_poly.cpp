#include <doctest.h>

#include <random>

#include "coxlog/poly.hpp"
#include "coxlog/textio.hpp"

using namespace coxlog;

namespace {
VarsPtr xy() {
  static VarsPtr v = make_vars({"x", "y"});
  return v;
}
MultiPoly P(const std::string& s) { return parse_poly(xy(), s); }
}  // namespace

TEST_CASE("basic ring operations") {
  MultiPoly xpy = P("x + y");
  MultiPoly xmy = P("x - y");
  CHECK(xpy + xmy == P("2*x"));
  CHECK(xpy * xmy == P("x^2 - y^2"));
  CHECK((xpy - xpy).is_zero());
  CHECK(P("0").is_zero());
  CHECK(P("x*y").degree() == 2);
  CHECK(MultiPoly::zero(xy()).degree() == -1);
}

TEST_CASE("graded lex leading terms") {
  MultiPoly q = P("x^3*y - x*y^3");
  CHECK(q.leading_monomial() == P("x^3*y").leading_monomial());
  // same degree: earlier variable wins
  CHECK(P("x*y^2 + x^2*y").leading_monomial() == P("x^2*y").leading_monomial());
  // degree dominates
  CHECK(P("x^3 + y^4").leading_monomial() == P("y^4").leading_monomial());
  CHECK(q.is_homogeneous());
  CHECK(!P("x^2 + y").is_homogeneous());
}

TEST_CASE("partial derivative") {
  CHECK(P("1/4*x^2*y^2").partial_derivative(0) == P("1/2*x*y^2"));
  CHECK(P("1/4*x^2*y^2").partial_derivative(1) == P("1/2*x^2*y"));
  CHECK(P("7").partial_derivative(0).is_zero());
  CHECK_THROWS_AS(P("x").partial_derivative(5), error);
}

TEST_CASE("exact division") {
  MultiPoly q = P("x^3*y - x*y^3");
  auto r = q.divide_exact(P("x + y"));
  REQUIRE(r.has_value());
  CHECK(*r == P("x^2*y - x*y^2"));
  CHECK(!q.divide_exact(P("x + 2*y")).has_value());
  CHECK(*q.divide_exact(P("2")) == P("1/2*x^3*y - 1/2*x*y^3"));
  CHECK_THROWS_AS(q.divide_exact(P("0")), error);
}

TEST_CASE("gcd and factor multiplicity") {
  MultiPoly g = poly_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2"));
  CHECK(g == P("x + y"));
  CHECK(poly_gcd(P("x^2"), P("y^2")) == P("1"));
  CHECK(poly_gcd(P("0"), P("3*x")) == P("x"));
  MultiPoly p = P("x^3 + x^2*y - x^2") * P("x + y");
  CHECK(factor_multiplicity(p, P("x + y")) == 1);
  CHECK(factor_multiplicity(P("x^2*y + 2*x*y^2 + y^3"), P("x + y")) == 2);
  CHECK(factor_multiplicity(P("x^2"), P("x + y")) == 0);
  CHECK_THROWS_AS(factor_multiplicity(P("0"), P("x")), error);
}

TEST_CASE("gcd in three variables") {
  VarsPtr v = make_vars({"x", "y", "z"});
  MultiPoly a = parse_poly(v, "(x + y + z)*(x^2 - y*z)");
  MultiPoly b = parse_poly(v, "(x + y + z)*(x*y + z^2)");
  CHECK(poly_gcd(a, b) == parse_poly(v, "x + y + z"));
}

TEST_CASE("substitution is a ring morphism") {
  MultiPoly p = P("x^2 + y^2");
  std::vector<MultiPoly> im = {P("x + y"), P("x - y")};
  CHECK(p.substitute(im) == P("2*x^2 + 2*y^2"));
  // (p*q)(s) == p(s)*q(s) on a nontrivial pair
  MultiPoly q = P("x*y - 1");
  CHECK((p * q).substitute(im) == p.substitute(im) * q.substitute(im));
  CHECK((p + q).substitute(im) == p.substitute(im) + q.substitute(im));
  CHECK_THROWS_AS(p.substitute({P("x")}), error);
}

TEST_CASE("embedding into a larger variable list") {
  VarsPtr big = make_vars({"x1", "y1", "x2"});
  MultiPoly p = P("x^2 - y^2");
  MultiPoly e = p.embed(big, {0, 2});
  CHECK(e == parse_poly(big, "x1^2 - x2^2"));
}

TEST_CASE("unbound constants mix with bound polynomials") {
  MultiPoly c(QuadScalar(3));
  CHECK(c + P("x") == P("x + 3"));
  CHECK(c * P("x") == P("3*x"));
  VarsPtr other = make_vars({"z"});
  CHECK_THROWS_AS(P("x") + MultiPoly::variable(other, 0), error);
}

TEST_CASE("variable-list mismatch is rejected") {
  VarsPtr a = make_vars({"x", "y"});
  VarsPtr b = make_vars({"y", "x"});
  CHECK_THROWS_AS(MultiPoly::variable(a, 0) + MultiPoly::variable(b, 0), error);
}

TEST_CASE("render parse round trip") {
  for (const char* s : {"0", "1", "-1/2", "x", "-x + y", "3*x^2*y - 1/2*y^3",
                        "x^2 + 2*x*y + y^2 - 7"}) {
    MultiPoly p = P(s);
    CHECK(parse_poly(xy(), p.to_string()) == p);
    CHECK(p.to_string() == s);
  }
  // surd coefficients round trip too (canonical string checked loosely)
  VarsPtr v = xy();
  MultiPoly p = parse_poly(v, "sqrt(5)*x + (1/2+1/2*sqrt(5))*y");
  CHECK(parse_poly(v, p.to_string()) == p);
}

TEST_CASE("ring laws on pseudo-random inputs") {
  std::mt19937 rng(12345);
  auto rnd_poly = [&]() {
    MultiPoly p = MultiPoly::zero(xy());
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      long c = static_cast<long>(rng() % 7) - 3;
      unsigned ex = rng() % 3, ey = rng() % 3;
      MultiPoly m = MultiPoly::constant(xy(), QuadScalar(c));
      m *= MultiPoly::variable(xy(), 0).pow(ex);
      m *= MultiPoly::variable(xy(), 1).pow(ey);
      p += m;
    }
    return p;
  };
  for (int i = 0; i < 50; ++i) {
    MultiPoly a = rnd_poly(), b = rnd_poly(), c = rnd_poly();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    if (!b.is_zero()) {
      // exact division inverts multiplication
      auto q = (a * b).divide_exact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
      if (!a.is_zero()) CHECK(!(a * b).is_zero());
    }
    // gcd divides both arguments
    MultiPoly g = poly_gcd(a, b);
    if (!g.is_zero() && !g.is_constant()) {
      CHECK(a.divide_exact(g).has_value());
      CHECK(b.divide_exact(g).has_value());
    }
  }
}
