#include <doctest.h>

#include "coxlog/linalg.hpp"
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

TEST_CASE("solve_linear over an exact field") {
  MatX<QuadScalar> A(2, 2);
  A << QuadScalar(1), QuadScalar(2), QuadScalar(3), QuadScalar(4);
  VecX<QuadScalar> b(2);
  b << QuadScalar(5), QuadScalar(11);
  auto s = solve_linear(A, b);
  CHECK(s.rank == 2);
  REQUIRE(s.solution.has_value());
  CHECK((*s.solution)(0) == QuadScalar(1));
  CHECK((*s.solution)(1) == QuadScalar(2));
  CHECK(s.kernel.empty());
}

TEST_CASE("solve_linear reports inconsistency and kernels") {
  MatX<QuadScalar> A(2, 3);
  A << QuadScalar(1), QuadScalar(1), QuadScalar(0),
       QuadScalar(2), QuadScalar(2), QuadScalar(0);
  VecX<QuadScalar> b(2);
  b << QuadScalar(1), QuadScalar(3);
  auto s = solve_linear(A, b);
  CHECK(s.rank == 1);
  CHECK(!s.solution.has_value());
  CHECK(s.kernel.size() == 2);

  b << QuadScalar(1), QuadScalar(2);
  auto t = solve_linear(A, b);
  REQUIRE(t.solution.has_value());
  // verify A * x == b for the particular solution
  for (int i = 0; i < 2; ++i) {
    QuadScalar acc(0);
    for (int j = 0; j < 3; ++j) acc += A(i, j) * (*t.solution)(j);
    CHECK(acc == b(i));
  }
  // kernel vectors really solve the homogeneous system
  for (const auto& v : t.kernel)
    for (int i = 0; i < 2; ++i) {
      QuadScalar acc(0);
      for (int j = 0; j < 3; ++j) acc += A(i, j) * v(j);
      CHECK(acc.is_zero());
    }
}

TEST_CASE("solve_linear over the rational function field") {
  MatX<RatFunc> A(2, 2);
  A << R("x"), R("y"), R("y"), R("x");
  VecX<RatFunc> b(2);
  b << R("x^2 + y^2"), R("2*x*y");
  auto s = solve_linear(A, b);
  CHECK(s.rank == 2);
  REQUIRE(s.solution.has_value());
  CHECK((*s.solution)(0) == R("x"));
  CHECK((*s.solution)(1) == R("y"));
}

TEST_CASE("field_inverse") {
  QuadScalar s2 = QuadScalar::sqrt_of(2);
  MatX<QuadScalar> A(2, 2);
  A << QuadScalar(1), s2, s2, QuadScalar(3);
  MatX<QuadScalar> Ainv = field_inverse(A);
  MatX<QuadScalar> I = A * Ainv;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(I(i, j) == QuadScalar(i == j ? 1 : 0));
  MatX<QuadScalar> S(2, 2);
  S << QuadScalar(1), QuadScalar(2), QuadScalar(2), QuadScalar(4);
  CHECK_THROWS_AS(field_inverse(S), error);
}

TEST_CASE("bareiss determinant over polynomials") {
  MatX<MultiPoly> M(2, 2);
  M << P("x"), P("y"), P("y"), P("x");
  CHECK(bareiss_det(M) == P("x^2 - y^2"));

  MatX<MultiPoly> N(3, 3);
  N << P("x"), P("y"), P("1"),
       P("0"), P("x"), P("y"),
       P("1"), P("0"), P("x");
  // cofactor expansion: x(x^2) - y(0 - y) + 1(0 - x) = x^3 + y^2 - x
  CHECK(bareiss_det(N) == P("x^3 + y^2 - x"));

  // zero pivot forces a row swap
  MatX<MultiPoly> Z(2, 2);
  Z << P("0"), P("y"), P("x"), P("0");
  CHECK(bareiss_det(Z) == P("-x*y"));

  MatX<MultiPoly> S(2, 2);
  S << P("x"), P("x"), P("x"), P("x");
  CHECK(bareiss_det(S).is_zero());
}

TEST_CASE("determinant of a rational function matrix") {
  MatX<RatFunc> M(2, 2);
  M << R("x"), R("y"), R("1/2*x*y^2"), R("1/2*x^2*y");
  CHECK(ratfunc_matrix_det(M) == R("1/2*x^3*y - 1/2*x*y^3"));

  MatX<RatFunc> N(2, 2);
  N << RatFunc::from_factored(P("1"), {{P("x"), 1}}), R("1"),
       R("1"), RatFunc::from_factored(P("1"), {{P("y"), 1}});
  // det = 1/(xy) - 1
  CHECK(ratfunc_matrix_det(N) == R("(1 - x*y)/(x*y)"));
  CHECK(ratfunc_matrix_det(N).factors_known());

  // mixed known/unknown columns still come out right
  MatX<RatFunc> X(2, 2);
  X << RatFunc(P("1"), P("x + y")), R("y"), R("1"), R("x");
  CHECK(ratfunc_matrix_det(X) == R("(x - x*y - y^2)/(x + y)"));
}

TEST_CASE("rank and kernel helpers") {
  MatX<QuadScalar> A(3, 3);
  A << QuadScalar(1), QuadScalar(2), QuadScalar(3),
       QuadScalar(2), QuadScalar(4), QuadScalar(6),
       QuadScalar(0), QuadScalar(1), QuadScalar(1);
  CHECK(matrix_rank(A) == 2);
  CHECK(kernel_basis(A).size() == 1);
}
