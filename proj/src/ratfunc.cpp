#include "coxlog/ratfunc.hpp"

#include <algorithm>

namespace coxlog {

namespace {

MultiPoly monic_of(const MultiPoly& p, QuadScalar& unit_out) {
  unit_out = p.leading_coeff();
  return p.scaled(unit_out.inverse());
}

}  // namespace

RatFunc::RatFunc(MultiPoly p)
    : num_(std::move(p)), den_(QuadScalar(1)), factors_known_(true) {
  if (num_.vars()) den_ = MultiPoly::constant(num_.vars(), QuadScalar(1));
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw error("RatFunc: zero denominator");
  factors_known_ = false;
  normalize_general();
}

RatFunc RatFunc::from_factored(MultiPoly num, const Factors& den_factors) {
  RatFunc r;
  r.num_ = std::move(num);
  r.factors_known_ = true;
  QuadScalar unit(1);
  for (const auto& [f, e] : den_factors) {
    if (e == 0) continue;
    if (f.is_constant() || f.is_zero())
      throw error("RatFunc::from_factored: factors must be nonconstant");
    QuadScalar u;
    MultiPoly fm = monic_of(f, u);
    if (e < 0) {
      r.num_ *= fm.pow(static_cast<unsigned>(-e));
      unit = unit * u.pow(e);
      continue;
    }
    unit = unit * u.pow(e);
    bool merged = false;
    for (auto& [g, ge] : r.den_factors_) {
      if (g == fm) {
        ge += e;
        merged = true;
        break;
      }
    }
    if (!merged) r.den_factors_.emplace_back(std::move(fm), e);
  }
  r.num_.scale(unit.inverse());
  r.normalize_factored();
  return r;
}

void RatFunc::normalize_factored() {
  VarsPtr vars = num_.vars();
  for (const auto& [f, e] : den_factors_)
    if (!vars) vars = f.vars();
  if (num_.is_zero()) {
    den_factors_.clear();
    den_ = vars ? MultiPoly::constant(vars, QuadScalar(1)) : MultiPoly(QuadScalar(1));
    num_ = MultiPoly::zero(vars);
    return;
  }
  for (auto& [f, e] : den_factors_) {
    while (e > 0) {
      if (!vanishes_on_sample(num_, f)) break;
      auto q = num_.divide_exact(f);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  den_factors_.erase(
      std::remove_if(den_factors_.begin(), den_factors_.end(),
                     [](const auto& fe) { return fe.second == 0; }),
      den_factors_.end());
  den_ = vars ? MultiPoly::constant(vars, QuadScalar(1)) : MultiPoly(QuadScalar(1));
  for (const auto& [f, e] : den_factors_) den_ *= f.pow(static_cast<unsigned>(e));
}

void RatFunc::normalize_general() {
  if (num_.is_zero()) {
    VarsPtr vars = num_.vars() ? num_.vars() : den_.vars();
    den_ = vars ? MultiPoly::constant(vars, QuadScalar(1)) : MultiPoly(QuadScalar(1));
    num_ = MultiPoly::zero(vars);
    den_factors_.clear();
    factors_known_ = true;
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  QuadScalar u = den_.leading_coeff();
  if (!u.is_one()) {
    den_.scale(u.inverse());
    num_.scale(u.inverse());
  }
  if (den_.is_one()) {
    den_factors_.clear();
    factors_known_ = true;
  } else {
    den_factors_.clear();
    factors_known_ = false;
  }
}

const MultiPoly& RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw error("RatFunc: not a polynomial: " + to_string());
  return num_;
}

QuadScalar RatFunc::constant_value() const {
  if (!is_constant()) throw error("RatFunc: not a constant: " + to_string());
  return num_.constant_term();
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw error("RatFunc: division by zero");
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  QuadScalar u = r.den_.leading_coeff();
  if (!u.is_one()) {
    r.den_.scale(u.inverse());
    r.num_.scale(u.inverse());
  }
  // gcd(num, den) was a unit, so it still is; only factor knowledge is lost.
  r.den_factors_.clear();
  r.factors_known_ = r.den_.is_one();
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (factors_known_ && o.factors_known_) {
    // Common denominator by factor-wise max exponent.
    Factors merged = den_factors_;
    for (const auto& [f, e] : o.den_factors_) {
      bool found = false;
      for (auto& [g, ge] : merged)
        if (g == f) {
          ge = std::max(ge, e);
          found = true;
          break;
        }
      if (!found) merged.emplace_back(f, e);
    }
    auto lift = [&](const RatFunc& x) {
      MultiPoly n = x.num_;
      for (const auto& [f, e] : merged) {
        int have = 0;
        for (const auto& [g, ge] : x.den_factors_)
          if (g == f) {
            have = ge;
            break;
          }
        if (e > have) n *= f.pow(static_cast<unsigned>(e - have));
      }
      return n;
    };
    MultiPoly n = lift(*this) + lift(o);
    *this = from_factored(std::move(n), merged);
    return *this;
  }
  MultiPoly n = num_ * o.den_ + o.num_ * den_;
  MultiPoly d = den_ * o.den_;
  *this = RatFunc(std::move(n), std::move(d));
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc operator*(const RatFunc& a, const RatFunc& o) {
  if (a.is_zero() || o.is_zero())
    return RatFunc(MultiPoly::zero(a.vars() ? a.vars() : o.vars()));
  if (a.factors_known_ && o.factors_known_) {
    RatFunc::Factors merged = a.den_factors_;
    for (const auto& [f, e] : o.den_factors_) {
      bool found = false;
      for (auto& [g, ge] : merged)
        if (g == f) {
          ge += e;
          found = true;
          break;
        }
      if (!found) merged.emplace_back(f, e);
    }
    return RatFunc::from_factored(a.num_ * o.num_, merged);
  }
  // Cross-cancel so the result is already reduced.
  MultiPoly n1 = a.num_, d2 = o.den_;
  MultiPoly g1 = poly_gcd(n1, d2);
  if (!g1.is_constant()) {
    n1 = *n1.divide_exact(g1);
    d2 = *d2.divide_exact(g1);
  }
  MultiPoly n2 = o.num_, d1 = a.den_;
  MultiPoly g2 = poly_gcd(n2, d1);
  if (!g2.is_constant()) {
    n2 = *n2.divide_exact(g2);
    d1 = *d1.divide_exact(g2);
  }
  return RatFunc(n1 * n2, d1 * d2);
}

RatFunc operator/(const RatFunc& a, const RatFunc& o) { return a * o.inverse(); }

RatFunc& RatFunc::scale(const QuadScalar& c) {
  num_.scale(c);
  if (num_.is_zero()) {
    if (factors_known_)
      normalize_factored();
    else
      normalize_general();
  }
  return *this;
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc acc(QuadScalar(1));
  RatFunc base(*this);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

RatFunc RatFunc::partial_derivative(int var) const {
  MultiPoly dn = num_.partial_derivative(var);
  if (is_polynomial()) {
    RatFunc r;
    r.num_ = std::move(dn);
    r.den_ = den_;
    r.factors_known_ = true;
    if (r.num_.is_zero()) r.num_ = MultiPoly::zero(num_.vars());
    return r;
  }
  if (factors_known_) {
    // d/dx (n / prod f_i^{e_i}) has numerator n' R - n sum_i e_i f_i' R/f_i
    // over prod f_i^{e_i + 1}, where R is the radical prod f_i.  This keeps
    // exponents small instead of squaring the denominator.
    MultiPoly R = MultiPoly::constant(num_.vars(), QuadScalar(1));
    for (const auto& [f, e] : den_factors_) R *= f;
    MultiPoly S = MultiPoly::zero(num_.vars());
    for (size_t i = 0; i < den_factors_.size(); ++i) {
      MultiPoly df = den_factors_[i].first.partial_derivative(var);
      if (df.is_zero()) continue;
      MultiPoly cof =
          MultiPoly::constant(num_.vars(), QuadScalar(den_factors_[i].second));
      for (size_t j = 0; j < den_factors_.size(); ++j)
        if (j != i) cof *= den_factors_[j].first;
      S += df * cof;
    }
    MultiPoly n = dn * R - num_ * S;
    Factors up = den_factors_;
    for (auto& [f, e] : up) e += 1;
    return from_factored(std::move(n), up);
  }
  MultiPoly n = dn * den_ - num_ * den_.partial_derivative(var);
  return RatFunc(std::move(n), den_ * den_);
}

std::optional<int> RatFunc::homogeneous_degree() const {
  if (is_zero()) return std::nullopt;
  if (!num_.is_homogeneous() || !den_.is_homogeneous()) return std::nullopt;
  return num_.degree() - den_.degree();
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

int ord_along(const RatFunc& f, const MultiPoly& alpha) {
  if (f.is_zero()) throw error("ord_along: zero input");
  if (alpha.is_constant()) throw error("ord_along: constant direction");
  QuadScalar u;
  MultiPoly a = monic_of(alpha, u);
  int k_den = 0;
  if (f.factors_known()) {
    for (const auto& [g, e] : f.den_factors())
      if (g == a) k_den += e;
  } else {
    k_den = factor_multiplicity(f.den(), a);
  }
  // num and den are coprime after normalization, so a pole settles the order
  if (k_den > 0) return k_den;
  return -factor_multiplicity(f.num(), a);
}

}  // namespace coxlog
