#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlog/poly.hpp"

namespace coxlog {

// Rational function in normal form: denominator monic under graded lex,
// gcd(num, den) a unit, the overall scalar carried by the numerator.  The
// representation is unique, so equality is componentwise.
//
// Most denominators in this engine are products of linear forms cutting out
// arrangement hyperplanes.  When a RatFunc knows that factorization it
// normalizes by trial division against those factors instead of a general
// gcd, which is the difference between milliseconds and minutes on the large
// instances.  Arithmetic preserves factor knowledge whenever both operands
// have it; anything else falls back to the gcd path.
class RatFunc {
 public:
  using Factors = std::vector<std::pair<MultiPoly, int>>;  // (monic factor, exponent)

  RatFunc() : num_(), den_(QuadScalar(1)), factors_known_(true) {}
  RatFunc(const QuadScalar& c)
      : num_(c), den_(QuadScalar(1)), factors_known_(true) {}
  RatFunc(long n) : RatFunc(QuadScalar(n)) {}
  RatFunc(int n) : RatFunc(QuadScalar(n)) {}
  RatFunc(MultiPoly p);
  RatFunc(MultiPoly num, MultiPoly den);

  // den = prod factor^exp.  Factors need not be monic or distinct and
  // exponents may be negative (those move into the numerator).  Factors must
  // be irreducible (here: linear forms), otherwise trial division cannot
  // guarantee the reduced normal form.
  static RatFunc from_factored(MultiPoly num, const Factors& den_factors);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool factors_known() const { return factors_known_; }
  const Factors& den_factors() const { return den_factors_; }
  VarsPtr vars() const { return num_.vars() ? num_.vars() : den_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  const MultiPoly& as_polynomial() const;
  QuadScalar constant_value() const;

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc& scale(const QuadScalar& c);
  RatFunc pow(long e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc partial_derivative(int var) const;

  // Degree as a homogeneous rational function (deg num - deg den), or nullopt
  // if either part is inhomogeneous.  Zero has no degree.
  std::optional<int> homogeneous_degree() const;

  std::string to_string() const;

 private:
  void normalize_general();
  void normalize_factored();

  MultiPoly num_;
  MultiPoly den_;
  Factors den_factors_;
  bool factors_known_ = false;
};

// Order of vanishing of f along {alpha = 0}, counted negatively: the result
// is the pole order, positive when f has a pole there, negative when f
// vanishes there.  alpha must be nonconstant and f nonzero.  Independent of
// the representation of f.
int ord_along(const RatFunc& f, const MultiPoly& alpha);

}  // namespace coxlog
