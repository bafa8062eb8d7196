#pragma once

#include <string>
#include <vector>

#include "coxlog/coxeter.hpp"
#include "coxlog/primitive.hpp"

namespace coxlog {

// One pole-order comparison backing a membership verdict.  Orders follow
// ord_along: poles positive, zeros negative.  hyperplane == -1 marks the
// global check that denominators stay inside the arrangement.
struct OrderWitness {
  int hyperplane = -1;
  std::string check;   // "pairing", "wedge", or "denominator"
  bool zero = false;   // tested object vanished; constraint holds vacuously
  int ord = 0;
  int bound = 0;
  bool ok = true;
};

struct MembershipVerdict {
  std::string object_id;
  std::string side;          // "omega" or "der"
  std::string multiplicity;  // canonical multiplicity string
  bool verdict = false;
  std::vector<OrderWitness> witnesses;
};

// Pole-order module test for a one-form: along every hyperplane the pairing
// I*(d alpha, omega) has pole order at most m(H), coefficient denominators
// stay inside the arrangement, and d alpha ^ omega is pole-free along alpha.
MembershipVerdict omega_membership(const OneForm& omega, const CoxeterDatum& d,
                                   const MultiplicityMap& m,
                                   const std::string& object_id = "omega");

// Dual module test for a derivation, evaluated through the metric: the
// verdict of omega_membership(istar_inverse(xi), -m), whose pairing orders
// are exactly the orders of xi(alpha_H).  Each pairing is cross-checked
// against a direct evaluation of xi(alpha_H).
MembershipVerdict der_membership(const DerivationField& xi,
                                 const CoxeterDatum& d,
                                 const MultiplicityMap& m,
                                 const std::string& object_id = "xi");

// Product of the normalized hyperplane forms to the powers m(H).
RatFunc multiplicity_weight(const CoxeterDatum& d, const MultiplicityMap& m);

struct CriterionReport {
  std::string multiplicity;
  std::vector<std::string> form_ids;
  std::vector<std::string> failed_members;  // ids failing the membership precondition
  RatFunc product_scalar;  // multiplicity weight times the top wedge (or determinant)
  bool is_regular = false;
  bool is_constant = false;
  QuadScalar constant;  // set iff is_constant, then nonzero
};

// Basis criterion for rank-many forms: they form a basis of the module with
// multiplicity m iff weight * wedge_top(forms) is a nonzero constant.
CriterionReport saito_ziegler_check(const std::vector<OneForm>& forms,
                                    const CoxeterDatum& d,
                                    const MultiplicityMap& m,
                                    std::vector<std::string> ids = {});

// Dual basis criterion for rank-many derivations: det of the coefficient
// matrix divided by the multiplicity weight must be a nonzero constant.
CriterionReport ziegler_dual_check(const std::vector<DerivationField>& fields,
                                   const CoxeterDatum& d,
                                   const MultiplicityMap& m,
                                   std::vector<std::string> ids = {});

// True iff fixed by every generating reflection.
bool invariance_check(const MultiPoly& p, const CoxeterDatum& d);
bool invariance_check(const RatFunc& f, const CoxeterDatum& d);
bool invariance_check(const OneForm& omega, const CoxeterDatum& d);
bool invariance_check(const DerivationField& xi, const CoxeterDatum& d);

struct OrderPair {
  std::string object_id;
  int hyperplane = 0;
  int ord_input = 0;
  int ord_output = 0;
  bool skipped = false;  // input had order 0 along this hyperplane
  bool ok = true;
};

struct OrdLemmaReport {
  bool ok = true;
  int skipped = 0;
  std::vector<OrderPair> hyperplane_checks;  // D(alpha) has pole order exactly 1
  std::vector<OrderPair> sample_checks;      // D shifts every nonzero order by +2
};

// Order behaviour of the primitive derivation: pole order of D(alpha_H) is 1
// along every hyperplane, and for every sample f with ord_alpha(f) != 0 the
// order of D(f) is ord_alpha(f) + 2.  Zero-order pairs are skipped and
// counted, never judged.
OrdLemmaReport ord_lemma_check(const CoxeterDatum& d,
                               const PrimitiveDerivation& D,
                               const std::vector<RatFunc>& samples);

// For an invariant form, the pairing with each d alpha_H has nonzero order
// along that hyperplane.  Hyperplanes whose pairing vanishes identically are
// appended to zero_pairings and treated as vacuous.
bool antiinvariance_order_check(const OneForm& omega, const CoxeterDatum& d,
                                std::vector<int>* zero_pairings = nullptr);

struct ShiftPair {
  std::string object_id;
  bool in_level = false;       // membership at m
  bool image_in_next = false;  // membership of the derivative at the shifted level
  bool forward_ok = true;      // in_level implies image_in_next
  bool backward_ok = true;     // image_in_next implies in_level
};

struct ShiftReport {
  std::string multiplicity;
  bool ok = true;
  std::vector<ShiftPair> pairs;
};

// One-step filtration shift: omega lies in the module at m iff its covariant
// derivative lies in the module at m+2, checked as two implications per
// sample.  The dual variant shifts the derivation side down to m-2.
ShiftReport filtration_shift_check(const CoxeterDatum& d,
                                   const PrimitiveDerivation& D,
                                   const MultiplicityMap& m,
                                   const std::vector<OneForm>& samples);
ShiftReport filtration_shift_check_dual(const CoxeterDatum& d,
                                        const PrimitiveDerivation& D,
                                        const MultiplicityMap& m,
                                        const std::vector<DerivationField>& samples);

}  // namespace coxlog
