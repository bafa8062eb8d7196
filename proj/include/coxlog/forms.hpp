#pragma once
#include <string>
#include <vector>

#include "coxlog/linalg.hpp"

namespace coxlog {

// Linear form sum coeffs[i] * x_i, the defining equation of a hyperplane
// through the origin.
struct LinearForm {
  VarsPtr vars;
  VecX<QuadScalar> coeffs;

  MultiPoly to_poly() const;
  // Scaled so the first nonzero coefficient is 1; two forms cutting the same
  // hyperplane normalize identically up to sign, and the sign is fixed too.
  LinearForm normalized() const;
  bool is_zero() const;

  friend bool operator==(const LinearForm& a, const LinearForm& b);
};

LinearForm linear_form_from_poly(const MultiPoly& p);

// Inner product data in the fixed linear coordinates.  inverse_gram is the
// matrix of the form I* on V* (pairings of the coordinate forms); gram is its
// inverse, the matrix of I on V.  Both symmetric positive definite.
class Metric {
 public:
  Metric(VarsPtr vars, MatX<QuadScalar> inverse_gram);

  const VarsPtr& vars() const { return vars_; }
  int dim() const { return static_cast<int>(inverse_gram_.rows()); }
  const MatX<QuadScalar>& gram() const { return gram_; }
  const MatX<QuadScalar>& inverse_gram() const { return inverse_gram_; }

  QuadScalar pair_forms(const LinearForm& a, const LinearForm& b) const;

 private:
  VarsPtr vars_;
  MatX<QuadScalar> inverse_gram_;
  MatX<QuadScalar> gram_;
};

// 1-form sum coeffs[i] dx_i with rational function coefficients.
struct OneForm {
  VarsPtr vars;
  VecX<RatFunc> coeffs;

  static OneForm zero(const VarsPtr& vars);
  bool is_zero() const;
  bool is_polynomial() const;
  OneForm operator-() const;
  OneForm& operator+=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b);
  OneForm scaled(const RatFunc& f) const;
  friend bool operator==(const OneForm& a, const OneForm& b);
  friend bool operator!=(const OneForm& a, const OneForm& b) { return !(a == b); }
  // Common homogeneous degree of the nonzero coefficients, if one exists.
  std::optional<int> homogeneous_degree() const;
  std::string to_string() const;
};

// Polynomial vector field / derivation sum coeffs[i] d/dx_i (coefficients
// rational functions in general).
struct DerivationField {
  VarsPtr vars;
  VecX<RatFunc> coeffs;

  static DerivationField zero(const VarsPtr& vars);
  bool is_zero() const;
  bool is_polynomial() const;
  DerivationField operator-() const;
  DerivationField& operator+=(const DerivationField& o);
  friend DerivationField operator+(DerivationField a, const DerivationField& b) {
    return a += b;
  }
  friend DerivationField operator-(DerivationField a, const DerivationField& b);
  DerivationField scaled(const RatFunc& f) const;
  friend bool operator==(const DerivationField& a, const DerivationField& b);
  friend bool operator!=(const DerivationField& a, const DerivationField& b) {
    return !(a == b);
  }
  // Common homogeneous degree of the nonzero coefficients, if one exists.
  std::optional<int> homogeneous_degree() const;
  std::string to_string() const;
};

// d of a function: sum (df/dx_i) dx_i.
OneForm exterior_derivative(const RatFunc& f, const VarsPtr& vars);
OneForm exterior_derivative(const MultiPoly& p);

// I*(omega, eta) = coeffs(omega)^T . inverse_gram . coeffs(eta).
RatFunc istar_pairing(const Metric& g, const OneForm& a, const OneForm& b);
// The derivation I*(omega, .), i.e. inverse_gram applied to the coefficients.
DerivationField istar_map(const Metric& g, const OneForm& a);
// Inverse of istar_map: gram applied to the coefficients.
OneForm istar_inverse(const Metric& g, const DerivationField& v);

// xi(f) = sum coeffs[i] df/dx_i.
RatFunc apply_derivation(const DerivationField& xi, const RatFunc& f);
RatFunc apply_derivation(const DerivationField& xi, const MultiPoly& f);
// xi(alpha) for a linear form, cheaply.
RatFunc apply_derivation(const DerivationField& xi, const LinearForm& alpha);

// Coefficient matrix determinant of dim-many 1-forms: the coefficient of
// dx_1 ^ ... ^ dx_l in omega_1 ^ ... ^ omega_l.
RatFunc wedge_top(const std::vector<OneForm>& forms);

// Covariant derivative along D with flat linear coordinates: nabla_D kills
// every dx_i, so both operations act coefficientwise.
OneForm nabla_on_form(const DerivationField& D, const OneForm& w);
DerivationField nabla_on_derivation(const DerivationField& D, const DerivationField& v);

// Orthogonal reflection fixing {alpha = 0}, acting as a ring automorphism
// plus the induced actions on forms and derivations.
class Reflection {
 public:
  Reflection(const Metric& g, const LinearForm& alpha);

  const std::vector<MultiPoly>& coordinate_images() const { return images_; }

  MultiPoly operator()(const MultiPoly& p) const;
  RatFunc operator()(const RatFunc& f) const;
  OneForm operator()(const OneForm& w) const;
  DerivationField operator()(const DerivationField& v) const;
  LinearForm operator()(const LinearForm& a) const;

 private:
  VarsPtr vars_;
  MatX<QuadScalar> mat_;  // images_[i] = sum_j mat_(i,j) x_j
  std::vector<MultiPoly> images_;
};

}  // namespace coxlog
