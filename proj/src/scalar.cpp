#include "coxlog/scalar.hpp"

#include <sstream>

namespace coxlog {

Rational make_rational(long num, long den) {
  if (den == 0) throw error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw error("parse_rational: empty string");
  try {
    Rational r(text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw error("parse_rational: bad literal '" + text + "'");
  }
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

namespace {

// Largest square factor removed: d = s^2 * rest with rest square-free.
void split_square(unsigned long d, unsigned long& s, unsigned long& rest) {
  s = 1;
  rest = 1;
  for (unsigned long p = 2; p * p <= d; ++p) {
    unsigned e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2) rest *= p;
  }
  rest *= d;
}

}  // namespace

QuadScalar::QuadScalar(Rational a, Rational b, unsigned long d)
    : rat_(std::move(a)), surd_(std::move(b)), d_(d) {
  if (d_ == 0 && sgn(surd_) != 0)
    throw error("QuadScalar: surd part requires a nonzero radicand");
  normalize();
}

void QuadScalar::normalize() {
  if (sgn(surd_) == 0) {
    d_ = 0;
    return;
  }
  unsigned long s, rest;
  split_square(d_, s, rest);
  if (s != 1) {
    surd_ *= static_cast<unsigned long>(s);
    d_ = rest;
  }
  if (d_ == 1) {
    rat_ += surd_;
    surd_ = 0;
    d_ = 0;
  }
}

int QuadScalar::sign() const {
  int sa = sgn(rat_);
  int sb = sgn(surd_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| with |b| sqrt(d) via the field norm.
  Rational n = rat_ * rat_ - Rational(d_) * surd_ * surd_;
  return sa * sgn(n);
}

QuadScalar QuadScalar::operator-() const {
  QuadScalar r(*this);
  r.rat_ = -r.rat_;
  r.surd_ = -r.surd_;
  return r;
}

QuadScalar QuadScalar::conjugate() const {
  QuadScalar r(*this);
  r.surd_ = -r.surd_;
  return r;
}

Rational QuadScalar::field_norm() const {
  return rat_ * rat_ - Rational(d_) * surd_ * surd_;
}

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw error("QuadScalar: division by zero");
  if (d_ == 0) return QuadScalar(Rational(1) / rat_);
  Rational n = field_norm();
  if (sgn(n) == 0) throw error("QuadScalar: radicand is not square-free");
  QuadScalar r(*this);
  r.rat_ = rat_ / n;
  r.surd_ = -surd_ / n;
  return r;
}

QuadScalar QuadScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  QuadScalar acc(1);
  QuadScalar base(*this);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

unsigned long QuadScalar::merge_radicand(const QuadScalar& a, const QuadScalar& b) {
  if (a.d_ == 0) return b.d_;
  if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
  throw error("QuadScalar: mixed radicands " + std::to_string(a.d_) + " and " +
              std::to_string(b.d_));
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  d_ = merge_radicand(*this, o);
  rat_ += o.rat_;
  surd_ += o.surd_;
  normalize();
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  d_ = merge_radicand(*this, o);
  rat_ -= o.rat_;
  surd_ -= o.surd_;
  normalize();
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  unsigned long d = merge_radicand(*this, o);
  Rational a = rat_ * o.rat_ + Rational(d) * surd_ * o.surd_;
  Rational b = rat_ * o.surd_ + surd_ * o.rat_;
  rat_ = std::move(a);
  surd_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) { return *this *= o.inverse(); }

std::string QuadScalar::to_string() const {
  if (d_ == 0) return rat_.get_str();
  std::ostringstream out;
  bool have_rat = sgn(rat_) != 0;
  if (have_rat) out << rat_.get_str();
  Rational b = surd_;
  if (have_rat) {
    out << (sgn(b) < 0 ? "-" : "+");
    if (sgn(b) < 0) b = -b;
  }
  if (b != 1) out << b.get_str() << "*";
  out << "sqrt(" << d_ << ")";
  return out.str();
}

}  // namespace coxlog
