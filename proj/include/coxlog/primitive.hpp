#pragma once
#include <map>
#include <string>
#include <vector>

#include "coxlog/coxeter.hpp"

namespace coxlog {

// The primitive derivation of an arrangement: per irreducible factor, the
// derivation dual to the top-degree basic invariant (kills the others),
// expressed in linear coordinates; the total is the sum over factors, which
// have disjoint supports.  Construction is a Cramer solve of J^T h = e_l
// against the factor's invariant Jacobian.
class PrimitiveDerivation {
 public:
  explicit PrimitiveDerivation(const CoxeterDatum& datum);

  const CoxeterDatum& datum() const { return *datum_; }
  const DerivationField& field() const { return field_; }
  // One derivation per factor, zero outside the factor's variables.
  const std::vector<DerivationField>& factor_fields() const {
    return factor_fields_;
  }
  // Per-factor Jacobians J(r,t) = dP_t/dx_r in the factor's variables.
  const std::vector<MatX<MultiPoly>>& jacobians() const { return jacobians_; }

  // Covariant derivative along D; linear coordinates are flat, so it acts
  // coefficientwise.
  OneForm nabla(const OneForm& w) const;
  DerivationField nabla(const DerivationField& v) const;
  RatFunc apply(const RatFunc& f) const;

 private:
  const CoxeterDatum* datum_;
  DerivationField field_;
  std::vector<DerivationField> factor_fields_;
  std::vector<MatX<MultiPoly>> jacobians_;
};

// Membership in T = { f invariant : D(f) = 0 }, the coefficient ring of the
// infinite basis families.  Throws on non-invariant input.
bool t_membership(const MultiPoly& f, const PrimitiveDerivation& D);

// Basis family at level k: one form per basic invariant, ordered by
// (factor, invariant).  Level 0 is dP_j; positive levels iterate the
// covariant derivative; negative levels solve a homogeneous invariant ansatz
// whose kernel dimension (uniqueness witness, expected 0) is recorded.
struct BasisFamily {
  int k = 0;
  std::vector<OneForm> forms;
  std::vector<DerivationField> derivations;  // filled by xi_basis
  std::vector<int> degrees;                  // coefficient degree of each form
  std::vector<int> kernel_dims;              // one per downward solve
};

BasisFamily theta_basis(const PrimitiveDerivation& D, int k);

// All levels kmin..kmax in one pass, sharing the ladder work.
std::map<int, BasisFamily> theta_ladder(const PrimitiveDerivation& D, int kmin,
                                        int kmax);

// Populates family.derivations with I*(theta_j) and verifies the commuting
// diagram: raising indices then applying the connection agrees with applying
// the connection then raising.  Throws theory_violation on mismatch.
void xi_basis(BasisFamily& family, const PrimitiveDerivation& D);

// I*-pairing Gram matrix of a family of forms.
MatX<RatFunc> pairing_matrix(const Metric& g, const std::vector<OneForm>& forms);

struct GMatrix {
  std::string kind;  // "G" or "G_k"
  MatX<RatFunc> entries;
};

// G = [I*(dP_i, dP_j)]: symmetric, polynomial, invariant entries (asserted).
GMatrix g_matrix(const PrimitiveDerivation& D);

// G_k with [theta^(k)] = [theta^(k+1)] G_k, computed by Cramer expansion in
// the theta^(k+1) basis; entries asserted polynomial and invariant.
GMatrix g_k_matrix(const PrimitiveDerivation& D, const BasisFamily& fam_k,
                   const BasisFamily& fam_k1);

// Q^(2k-1) * top wedge of the family: the scalar certifying the family is a
// basis of its level.  Throws unless the result is a nonzero constant.
QuadScalar basis_determinant_constant(const PrimitiveDerivation& D,
                                      const std::vector<OneForm>& forms,
                                      int level);
QuadScalar basis_determinant_constant(const PrimitiveDerivation& D,
                                      const std::vector<DerivationField>& fields,
                                      int level);

}  // namespace coxlog
