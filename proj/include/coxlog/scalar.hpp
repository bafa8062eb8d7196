#pragma once
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coxlog {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a verified structural identity fails, i.e. the engine caught
// itself producing something the underlying theorems forbid.
struct theory_violation : error {
  using error::error;
};

using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize; this does.
Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

// Element of Q or of a real quadratic field Q(sqrt(d)) with d > 1 square-free.
// Value is rat + surd * sqrt(d).  d == 0 encodes a pure rational and forces
// surd == 0, so representations are unique and equality is field-wise.
//
// Mixing rule for binary ops: a rational operand adopts the other operand's
// field; two srd operands must agree on d.  No tower of extensions.
class QuadScalar {
 public:
  QuadScalar() : rat_(0), surd_(0), d_(0) {}
  QuadScalar(long n) : rat_(n, 1), surd_(0), d_(0) {}
  QuadScalar(int n) : rat_(n, 1), surd_(0), d_(0) {}
  QuadScalar(const Rational& a) : rat_(a), surd_(0), d_(0) {}
  QuadScalar(Rational a, Rational b, unsigned long d);

  static QuadScalar sqrt_of(unsigned long d) {
    return d == 0 ? QuadScalar(0) : QuadScalar(0, 1, d);
  }

  const Rational& rat_part() const { return rat_; }
  const Rational& surd_part() const { return surd_; }
  unsigned long radicand() const { return d_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(surd_) == 0; }
  bool is_rational() const { return d_ == 0; }
  bool is_one() const { return d_ == 0 && rat_ == 1; }

  // Sign under the real embedding with sqrt(d) > 0.
  int sign() const;

  QuadScalar operator-() const;
  QuadScalar conjugate() const;  // a - b sqrt(d)
  // Field norm a^2 - d b^2; rational, zero iff the value is zero.
  Rational field_norm() const;
  QuadScalar inverse() const;
  QuadScalar pow(long e) const;

  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar a, const QuadScalar& b) { return a += b; }
  friend QuadScalar operator-(QuadScalar a, const QuadScalar& b) { return a -= b; }
  friend QuadScalar operator*(QuadScalar a, const QuadScalar& b) { return a *= b; }
  friend QuadScalar operator/(QuadScalar a, const QuadScalar& b) { return a /= b; }

  friend bool operator==(const QuadScalar& a, const QuadScalar& b) {
    return a.d_ == b.d_ && a.rat_ == b.rat_ && a.surd_ == b.surd_;
  }
  friend bool operator!=(const QuadScalar& a, const QuadScalar& b) { return !(a == b); }
  friend bool operator<(const QuadScalar& a, const QuadScalar& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator>(const QuadScalar& a, const QuadScalar& b) { return b < a; }
  friend bool operator<=(const QuadScalar& a, const QuadScalar& b) { return !(b < a); }
  friend bool operator>=(const QuadScalar& a, const QuadScalar& b) { return !(a < b); }

  std::string to_string() const;

 private:
  // Common field for a binary op, or throws on a genuine mix.
  static unsigned long merge_radicand(const QuadScalar& a, const QuadScalar& b);
  void normalize();

  Rational rat_;
  Rational surd_;
  unsigned long d_;
};

QuadScalar parse_quad_scalar(const std::string& text);

}  // namespace coxlog
