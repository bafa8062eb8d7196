#include <doctest.h>

#include "coxlog/scalar.hpp"

using namespace coxlog;

TEST_CASE("rational helpers") {
  CHECK(make_rational(2, 4) == make_rational(1, 2));
  CHECK(make_rational(-3, -6) == make_rational(1, 2));
  CHECK(rational_to_string(make_rational(-3, 6)) == "-1/2");
  CHECK_THROWS_AS(make_rational(1, 0), error);
}

TEST_CASE("quad scalar arithmetic in a fixed field") {
  QuadScalar s5 = QuadScalar::sqrt_of(5);
  QuadScalar tau = (QuadScalar(1) + s5) / QuadScalar(2);
  // tau^2 = tau + 1
  CHECK(tau * tau == tau + QuadScalar(1));
  CHECK((tau - tau).is_zero());
  CHECK(tau.inverse() * tau == QuadScalar(1));
  // 1/tau = tau - 1
  CHECK(tau.inverse() == tau - QuadScalar(1));
  CHECK((s5 * s5) == QuadScalar(5));
  CHECK(s5.conjugate() == -s5);
  CHECK(tau.field_norm() == make_rational(-1, 1));
}

TEST_CASE("rationals embed into any field") {
  QuadScalar s2 = QuadScalar::sqrt_of(2);
  QuadScalar half(make_rational(1, 2));
  CHECK((half + s2) - s2 == half);
  CHECK((half * s2) / s2 == half);
  QuadScalar s3 = QuadScalar::sqrt_of(3);
  CHECK_THROWS_AS(s2 + s3, error);
  CHECK_THROWS_AS(s2 * s3, error);
}

TEST_CASE("radicand normalization") {
  // sqrt of a perfect square is rational
  CHECK(QuadScalar::sqrt_of(9) == QuadScalar(3));
  CHECK(QuadScalar::sqrt_of(9).is_rational());
  // square part is extracted
  CHECK(QuadScalar::sqrt_of(12) == QuadScalar(2) * QuadScalar::sqrt_of(3));
  CHECK(QuadScalar::sqrt_of(12).radicand() == 3);
  CHECK(QuadScalar::sqrt_of(0).is_zero());
  // zero surd part collapses to the rational field
  QuadScalar x(make_rational(2, 1), make_rational(0, 1), 5);
  CHECK(x.is_rational());
}

TEST_CASE("sign under the real embedding") {
  QuadScalar s2 = QuadScalar::sqrt_of(2);
  // 3/2 - sqrt(2) > 0 since 9/4 > 2
  QuadScalar a = QuadScalar(make_rational(3, 2)) - s2;
  CHECK(a.sign() == 1);
  // 7/5 - sqrt(2) < 0 since 49/25 < 2
  QuadScalar b = QuadScalar(make_rational(7, 5)) - s2;
  CHECK(b.sign() == -1);
  CHECK((-a).sign() == -1);
  CHECK(QuadScalar(0).sign() == 0);
  CHECK(b < a);
  CHECK(a > b);
  // total order sanity on a small mixed set
  QuadScalar vals[] = {b, QuadScalar(0), a, s2, QuadScalar(-2)};
  for (const auto& u : vals)
    for (const auto& v : vals) {
      if (u < v) CHECK(!(v < u));
      if (!(u < v) && !(v < u)) CHECK(u == v);
    }
}

TEST_CASE("powers and inverse errors") {
  QuadScalar s5 = QuadScalar::sqrt_of(5);
  CHECK(s5.pow(4) == QuadScalar(25));
  CHECK(s5.pow(-2) == QuadScalar(make_rational(1, 5)));
  CHECK(QuadScalar(0).pow(0) == QuadScalar(1));
  CHECK_THROWS_AS(QuadScalar(0).inverse(), error);
}

TEST_CASE("scalar rendering") {
  QuadScalar s5 = QuadScalar::sqrt_of(5);
  QuadScalar tau = (QuadScalar(1) + s5) / QuadScalar(2);
  CHECK(tau.to_string() == "1/2+1/2*sqrt(5)");
  CHECK((-tau).to_string() == "-1/2-1/2*sqrt(5)");
  CHECK(s5.to_string() == "sqrt(5)");
  CHECK((-s5).to_string() == "-1*sqrt(5)");
  CHECK(QuadScalar(make_rational(-7, 3)).to_string() == "-7/3");
}
