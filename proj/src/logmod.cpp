#include "coxlog/logmod.hpp"

#include <utility>

namespace coxlog {

namespace {

// Denominator divides a product of hyperplane forms: peel off arrangement
// factors until nothing but a constant may remain.
bool poles_within_arrangement(const RatFunc& f, const CoxeterDatum& d) {
  MultiPoly residual = f.den();
  for (const auto& hp : d.hyperplanes) {
    MultiPoly alpha = hp.form.to_poly();
    while (!residual.is_constant()) {
      auto q = residual.divide_exact(alpha);
      if (!q) break;
      residual = *q;
    }
  }
  return residual.is_constant();
}

}  // namespace

MembershipVerdict omega_membership(const OneForm& omega, const CoxeterDatum& d,
                                   const MultiplicityMap& m,
                                   const std::string& object_id) {
  if (omega.is_zero()) throw error("omega_membership: zero form");
  MembershipVerdict v;
  v.object_id = object_id;
  v.side = "omega";
  v.multiplicity = m.description();
  v.verdict = true;

  const int n = d.rank();
  for (int r = 0; r < n; ++r) {
    const RatFunc& c = omega.coeffs(r);
    if (c.is_zero() || poles_within_arrangement(c, d)) continue;
    OrderWitness w;
    w.check = "denominator";
    w.ok = false;
    v.witnesses.push_back(w);
    v.verdict = false;
    break;
  }

  for (size_t h = 0; h < d.hyperplanes.size(); ++h) {
    const LinearForm& alpha = d.hyperplanes[h].form;
    MultiPoly apoly = alpha.to_poly();
    OneForm dalpha = exterior_derivative(apoly);

    OrderWitness pairing;
    pairing.hyperplane = static_cast<int>(h);
    pairing.check = "pairing";
    pairing.bound = m[static_cast<int>(h)];
    RatFunc p = istar_pairing(d.metric, dalpha, omega);
    if (p.is_zero()) {
      pairing.zero = true;
    } else {
      pairing.ord = ord_along(p, apoly);
      pairing.ok = pairing.ord <= pairing.bound;
    }
    v.verdict = v.verdict && pairing.ok;
    v.witnesses.push_back(pairing);

    OrderWitness wedge;
    wedge.hyperplane = static_cast<int>(h);
    wedge.check = "wedge";
    wedge.zero = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        RatFunc minor = omega.coeffs(j) * alpha.coeffs(i) -
                        omega.coeffs(i) * alpha.coeffs(j);
        if (minor.is_zero()) continue;
        int o = ord_along(minor, apoly);
        if (wedge.zero || o > wedge.ord) wedge.ord = o;
        wedge.zero = false;
      }
    if (!wedge.zero) wedge.ok = wedge.ord <= 0;
    v.verdict = v.verdict && wedge.ok;
    v.witnesses.push_back(wedge);
  }
  return v;
}

MembershipVerdict der_membership(const DerivationField& xi,
                                 const CoxeterDatum& d,
                                 const MultiplicityMap& m,
                                 const std::string& object_id) {
  if (xi.is_zero()) throw error("der_membership: zero derivation");
  MembershipVerdict v =
      omega_membership(istar_inverse(d.metric, xi), d, m.negated(), object_id);
  v.side = "der";
  v.multiplicity = m.description();

  // The dual pairing I*(d alpha, istar_inverse(xi)) is xi(alpha) on the nose;
  // re-derive each order directly to pin the plumbing down.
  for (const OrderWitness& w : v.witnesses) {
    if (w.check != "pairing") continue;
    RatFunc direct = apply_derivation(xi, d.hyperplanes[static_cast<size_t>(w.hyperplane)].form);
    if (direct.is_zero() != w.zero ||
        (!w.zero &&
         ord_along(direct, d.hyperplanes[static_cast<size_t>(w.hyperplane)].form.to_poly()) != w.ord))
      throw theory_violation("der_membership: dual pairing disagrees with direct evaluation");
  }
  return v;
}

RatFunc multiplicity_weight(const CoxeterDatum& d, const MultiplicityMap& m) {
  MultiPoly num = MultiPoly::constant(d.vars, QuadScalar(1));
  RatFunc::Factors den;
  for (size_t h = 0; h < d.hyperplanes.size(); ++h) {
    int e = m[static_cast<int>(h)];
    if (e > 0)
      num = num * d.hyperplanes[h].form.to_poly().pow(e);
    else if (e < 0)
      den.emplace_back(d.hyperplanes[h].form.to_poly(), -e);
  }
  return RatFunc::from_factored(std::move(num), den);
}

namespace {

CriterionReport finish_criterion(CriterionReport rep, RatFunc det,
                                 const CoxeterDatum& d,
                                 const MultiplicityMap& m, bool dual) {
  rep.multiplicity = m.description();
  RatFunc weight = multiplicity_weight(d, dual ? m.negated() : m);
  rep.product_scalar = weight * det;
  rep.is_regular = rep.product_scalar.is_polynomial();
  rep.is_constant = rep.is_regular && !rep.product_scalar.is_zero() &&
                    rep.product_scalar.as_polynomial().is_constant();
  if (rep.is_constant) rep.constant = rep.product_scalar.constant_value();
  return rep;
}

}  // namespace

CriterionReport saito_ziegler_check(const std::vector<OneForm>& forms,
                                    const CoxeterDatum& d,
                                    const MultiplicityMap& m,
                                    std::vector<std::string> ids) {
  if (static_cast<int>(forms.size()) != d.rank())
    throw error("saito_ziegler_check: need rank-many forms");
  CriterionReport rep;
  for (size_t j = 0; j < forms.size(); ++j) {
    if (ids.size() <= j) ids.push_back("omega[" + std::to_string(j) + "]");
    if (!omega_membership(forms[j], d, m, ids[j]).verdict)
      rep.failed_members.push_back(ids[j]);
  }
  rep.form_ids = std::move(ids);
  return finish_criterion(std::move(rep), wedge_top(forms), d, m, false);
}

CriterionReport ziegler_dual_check(const std::vector<DerivationField>& fields,
                                   const CoxeterDatum& d,
                                   const MultiplicityMap& m,
                                   std::vector<std::string> ids) {
  if (static_cast<int>(fields.size()) != d.rank())
    throw error("ziegler_dual_check: need rank-many derivations");
  CriterionReport rep;
  for (size_t j = 0; j < fields.size(); ++j) {
    if (ids.size() <= j) ids.push_back("xi[" + std::to_string(j) + "]");
    if (!der_membership(fields[j], d, m, ids[j]).verdict)
      rep.failed_members.push_back(ids[j]);
  }
  rep.form_ids = std::move(ids);
  const int n = d.rank();
  MatX<RatFunc> M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = fields[static_cast<size_t>(j)].coeffs(i);
  return finish_criterion(std::move(rep), ratfunc_matrix_det(M), d, m, true);
}

bool invariance_check(const MultiPoly& p, const CoxeterDatum& d) {
  for (const Reflection& s : d.generators())
    if (!(s(p) == p)) return false;
  return true;
}

bool invariance_check(const RatFunc& f, const CoxeterDatum& d) {
  for (const Reflection& s : d.generators())
    if (!(s(f) == f)) return false;
  return true;
}

bool invariance_check(const OneForm& omega, const CoxeterDatum& d) {
  for (const Reflection& s : d.generators())
    if (!(s(omega) == omega)) return false;
  return true;
}

bool invariance_check(const DerivationField& xi, const CoxeterDatum& d) {
  for (const Reflection& s : d.generators())
    if (!(s(xi) == xi)) return false;
  return true;
}

OrdLemmaReport ord_lemma_check(const CoxeterDatum& d,
                               const PrimitiveDerivation& D,
                               const std::vector<RatFunc>& samples) {
  OrdLemmaReport rep;
  for (size_t h = 0; h < d.hyperplanes.size(); ++h) {
    const LinearForm& alpha = d.hyperplanes[h].form;
    OrderPair pair;
    pair.object_id = "alpha";
    pair.hyperplane = static_cast<int>(h);
    pair.ord_input = -1;
    RatFunc da = apply_derivation(D.field(), alpha);
    if (da.is_zero()) {
      pair.ok = false;
    } else {
      pair.ord_output = ord_along(da, alpha.to_poly());
      pair.ok = pair.ord_output == 1;
    }
    rep.ok = rep.ok && pair.ok;
    rep.hyperplane_checks.push_back(pair);
  }

  for (size_t s = 0; s < samples.size(); ++s) {
    const RatFunc& f = samples[s];
    if (f.is_zero()) throw error("ord_lemma_check: zero sample");
    for (size_t h = 0; h < d.hyperplanes.size(); ++h) {
      MultiPoly apoly = d.hyperplanes[h].form.to_poly();
      OrderPair pair;
      pair.object_id = "sample[" + std::to_string(s) + "]";
      pair.hyperplane = static_cast<int>(h);
      pair.ord_input = ord_along(f, apoly);
      if (pair.ord_input == 0) {
        pair.skipped = true;
        ++rep.skipped;
      } else {
        RatFunc df = D.apply(f);
        if (df.is_zero()) {
          pair.ok = false;  // order would have to rise by 2, but D killed f
        } else {
          pair.ord_output = ord_along(df, apoly);
          pair.ok = pair.ord_output == pair.ord_input + 2;
        }
      }
      rep.ok = rep.ok && pair.ok;
      rep.sample_checks.push_back(pair);
    }
  }
  return rep;
}

bool antiinvariance_order_check(const OneForm& omega, const CoxeterDatum& d,
                                std::vector<int>* zero_pairings) {
  if (omega.is_zero()) throw error("antiinvariance_order_check: zero form");
  if (!invariance_check(omega, d))
    throw error("antiinvariance_order_check: form is not invariant");
  bool all_nonzero = true;
  for (size_t h = 0; h < d.hyperplanes.size(); ++h) {
    MultiPoly apoly = d.hyperplanes[h].form.to_poly();
    RatFunc p = istar_pairing(d.metric, exterior_derivative(apoly), omega);
    if (p.is_zero()) {
      if (zero_pairings) zero_pairings->push_back(static_cast<int>(h));
      continue;
    }
    if (ord_along(p, apoly) == 0) all_nonzero = false;
  }
  return all_nonzero;
}

namespace {

template <typename Obj, typename Member, typename Nabla>
ShiftReport shift_check_impl(const MultiplicityMap& m,
                             const std::vector<Obj>& samples, int delta,
                             Member member, Nabla nabla) {
  ShiftReport rep;
  rep.multiplicity = m.description();
  MultiplicityMap shifted = m.shifted(delta);
  for (size_t s = 0; s < samples.size(); ++s) {
    ShiftPair pair;
    pair.object_id = "sample[" + std::to_string(s) + "]";
    pair.in_level = member(samples[s], m);
    Obj image = nabla(samples[s]);
    // the zero object belongs to every module
    pair.image_in_next = image.is_zero() || member(image, shifted);
    pair.forward_ok = !pair.in_level || pair.image_in_next;
    pair.backward_ok = !pair.image_in_next || pair.in_level;
    rep.ok = rep.ok && pair.forward_ok && pair.backward_ok;
    rep.pairs.push_back(pair);
  }
  return rep;
}

}  // namespace

ShiftReport filtration_shift_check(const CoxeterDatum& d,
                                   const PrimitiveDerivation& D,
                                   const MultiplicityMap& m,
                                   const std::vector<OneForm>& samples) {
  return shift_check_impl(
      m, samples, 2,
      [&](const OneForm& w, const MultiplicityMap& mm) {
        return omega_membership(w, d, mm).verdict;
      },
      [&](const OneForm& w) { return D.nabla(w); });
}

ShiftReport filtration_shift_check_dual(const CoxeterDatum& d,
                                        const PrimitiveDerivation& D,
                                        const MultiplicityMap& m,
                                        const std::vector<DerivationField>& samples) {
  return shift_check_impl(
      m, samples, -2,
      [&](const DerivationField& xi, const MultiplicityMap& mm) {
        return der_membership(xi, d, mm).verdict;
      },
      [&](const DerivationField& xi) { return D.nabla(xi); });
}

}  // namespace coxlog
