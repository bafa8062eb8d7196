#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxlog/scalar.hpp"

namespace coxlog {

// Shared, immutable variable list.  Cheap to copy around; pointer equality is
// the fast path, deep equality the fallback.
using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

VarsPtr make_vars(std::initializer_list<const char*> names);
VarsPtr make_vars(VarList names);
bool same_vars(const VarsPtr& a, const VarsPtr& b);

inline constexpr int kMaxVars = 8;

// Exponent vector with cached total degree.  Ordered by graded lex with
// earlier variables ranked higher, so the leading monomial of a homogeneous
// linear form is its first variable with nonzero coefficient.
class Mono {
 public:
  Mono() = default;
  explicit Mono(const std::vector<unsigned>& exps);

  unsigned total_degree() const { return deg_; }
  unsigned exp(int i) const { return e_[static_cast<size_t>(i)]; }
  Mono with_exp(int i, unsigned v) const;
  bool is_constant() const { return deg_ == 0; }

  Mono operator*(const Mono& o) const;
  // Componentwise quotient if o divides *this.
  std::optional<Mono> divide(const Mono& o) const;
  bool divisible_by(const Mono& o) const;

  friend bool operator==(const Mono& a, const Mono& b) {
    return a.deg_ == b.deg_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Mono& a, const Mono& b) { return !(a == b); }

  // Graded lex, true if a ranks strictly higher than b.
  static bool grlex_greater(const Mono& a, const Mono& b);

 private:
  std::array<uint16_t, kMaxVars> e_{};
  uint16_t deg_ = 0;
};

struct GrlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    return Mono::grlex_greater(a, b);
  }
};

// Sparse multivariate polynomial over QuadScalar with a fixed variable list.
// Terms are kept in descending graded lex order; zero coefficients are never
// stored.  A default-constructed or constant polynomial may carry a null
// variable list ("unbound"); it acts as a scalar and adopts the other
// operand's variables, which keeps Eigen's default-initialized matrices of
// polynomials harmless.  Two bound polynomials with different lists do not
// mix.
class MultiPoly {
 public:
  using TermMap = std::map<Mono, QuadScalar, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(const QuadScalar& c);  // unbound constant
  MultiPoly(long n) : MultiPoly(QuadScalar(n)) {}
  MultiPoly(int n) : MultiPoly(QuadScalar(n)) {}

  static MultiPoly zero(VarsPtr vars);
  static MultiPoly constant(VarsPtr vars, const QuadScalar& c);
  static MultiPoly variable(VarsPtr vars, int index);
  static MultiPoly from_terms(VarsPtr vars, TermMap terms);

  const VarsPtr& vars() const { return vars_; }
  int num_vars() const { return vars_ ? static_cast<int>(vars_->size()) : 0; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // Degree of the zero polynomial is -1 by convention here.
  int degree() const;
  bool is_homogeneous() const;
  QuadScalar constant_term() const;
  QuadScalar coeff(const Mono& m) const;

  const Mono& leading_monomial() const;
  const QuadScalar& leading_coeff() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& scale(const QuadScalar& c);
  MultiPoly scaled(const QuadScalar& c) const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly partial_derivative(int var) const;

  // Exact quotient, or nullopt if the divisor does not divide exactly.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

  // Ring morphism x_i -> images[i]; images share one variable list.  Uses a
  // Horner-style recursion so linear substitutions stay near-linear in the
  // term count.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;

  // Rebinds to a larger variable list, sending variable i to var_map[i].
  MultiPoly embed(VarsPtr new_vars, const std::vector<int>& var_map) const;

  std::string to_string() const;

 private:
  void check_mixable(const MultiPoly& o) const;
  void adopt_vars(const MultiPoly& o);

  VarsPtr vars_;
  TermMap terms_;
};

// gcd up to a scalar unit; result is monic under graded lex.  Both inputs zero
// gives zero.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Multiplicity of `factor` in `p`, i.e. the largest e with factor^e | p.
// p must be nonzero and factor nonconstant.
int factor_multiplicity(const MultiPoly& p, const MultiPoly& factor);

// Quick non-divisibility witness for homogeneous linear f: evaluate p at a
// fixed point of {f = 0}.  False proves f does not divide p; true is
// inconclusive and the caller must fall back to exact division.
bool vanishes_on_sample(const MultiPoly& p, const MultiPoly& f);

}  // namespace coxlog
