#include "coxlog/primitive.hpp"

#include <map>
#include <optional>
#include <vector>

#include "coxlog/linalg.hpp"

namespace coxlog {

namespace {

// All exponent vectors a >= 0 with sum a_t * degs[t] == target, in a fixed
// order (first exponent descending, then recursively).
void weighted_comps(const std::vector<int>& degs, int target, size_t pos,
                    std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos + 1 == degs.size()) {
    if (target % degs[pos] == 0) {
      cur[pos] = target / degs[pos];
      out.push_back(cur);
    }
    return;
  }
  for (int e = target / degs[pos]; e >= 0; --e) {
    cur[pos] = e;
    weighted_comps(degs, target - e * degs[pos], pos + 1, cur, out);
  }
}

std::vector<std::vector<int>> invariant_exponents(const std::vector<int>& degs,
                                                  int target) {
  std::vector<std::vector<int>> out;
  if (target < 0) return out;
  if (target == 0) {
    out.emplace_back(degs.size(), 0);
    return out;
  }
  std::vector<int> cur(degs.size(), 0);
  weighted_comps(degs, target, 0, cur, out);
  return out;
}

// One downward ladder step on a single factor: given the polynomial form
// target = nabla_D(answer), recover the answer as an invariant combination
// sum_t c_t(P) dP_t.  Returns the form and the solve's kernel dimension.
std::pair<OneForm, int> ladder_down(const PrimitiveDerivation& D, size_t fidx,
                                    const OneForm& target) {
  const CoxeterDatum& datum = D.datum();
  const IrreducibleFactor& f = datum.factors[fidx];
  const VarsPtr& vars = datum.vars;
  const int rank = f.rank;

  for (int s = 0; s < static_cast<int>(vars->size()); ++s) {
    bool mine = false;
    for (int v : f.var_indices) mine = mine || v == s;
    if (!mine && !target.coeffs(s).is_zero())
      throw error("ladder_down: target leaks outside its factor");
    if (mine && !target.coeffs(s).is_polynomial())
      throw error("ladder_down: target must be polynomial");
  }
  auto tdeg = target.homogeneous_degree();
  if (!tdeg) throw error("ladder_down: target must be homogeneous");

  std::vector<int> degs;
  for (const auto& p : f.invariants) degs.push_back(p.degree());

  // Q_f * (the factor derivation's coefficients), cleared to polynomials.
  RatFunc qf = RatFunc(f.q_poly);
  std::vector<MultiPoly> ncoeffs;
  for (int r : f.var_indices)
    ncoeffs.push_back(
        (D.factor_fields()[fidx].coeffs(r) * qf).as_polynomial());

  // Unknowns: for each basic invariant index t, a coefficient polynomial in
  // the invariants of weighted degree deg(target) + h + 1 - deg(P_t).
  struct Unknown {
    int t;
    MultiPoly monomial;  // product of invariant powers
  };
  std::vector<Unknown> unknowns;
  for (int t = 0; t < rank; ++t) {
    int cdeg = *tdeg + f.coxeter_number + 1 - degs[static_cast<size_t>(t)];
    for (const auto& a : invariant_exponents(degs, cdeg)) {
      MultiPoly mono = MultiPoly::constant(vars, QuadScalar(1));
      for (int u = 0; u < rank; ++u)
        if (a[static_cast<size_t>(u)] > 0)
          mono *= f.invariants[static_cast<size_t>(u)].pow(
              static_cast<unsigned>(a[static_cast<size_t>(u)]));
      unknowns.push_back({t, std::move(mono)});
    }
  }
  if (unknowns.empty()) throw error("ladder_down: empty ansatz");

  // Equation per factor coordinate s:
  //   sum_r (Q h_r) d/dx_r (sum u_i mono_i dP_{t_i})_s = Q * target_s.
  std::vector<std::map<Mono, int, GrlexGreater>> row_index(
      static_cast<size_t>(rank));
  int row_count = 0;
  auto row_of = [&](int si, const Mono& m) {
    auto [it, fresh] = row_index[static_cast<size_t>(si)].emplace(m, row_count);
    if (fresh) ++row_count;
    return it->second;
  };

  std::vector<std::map<int, QuadScalar>> cols(unknowns.size());
  std::map<int, QuadScalar> rhs;
  for (int si = 0; si < rank; ++si) {
    int s = f.var_indices[static_cast<size_t>(si)];
    for (size_t ui = 0; ui < unknowns.size(); ++ui) {
      MultiPoly omega_s =
          unknowns[ui].monomial *
          f.invariants[static_cast<size_t>(unknowns[ui].t)].partial_derivative(s);
      MultiPoly lhs = MultiPoly::zero(vars);
      for (int ri = 0; ri < rank; ++ri)
        lhs += ncoeffs[static_cast<size_t>(ri)] *
               omega_s.partial_derivative(f.var_indices[static_cast<size_t>(ri)]);
      for (const auto& [m, c] : lhs.terms()) cols[ui][row_of(si, m)] = c;
    }
    MultiPoly rhs_s = f.q_poly * target.coeffs(s).as_polynomial();
    for (const auto& [m, c] : rhs_s.terms()) rhs[row_of(si, m)] = c;
  }

  const int nrows = row_count;
  const int ncols = static_cast<int>(unknowns.size());
  MatX<QuadScalar> A(nrows, ncols);
  VecX<QuadScalar> b(nrows);
  for (int i = 0; i < nrows; ++i) {
    b(i) = QuadScalar(0);
    for (int j = 0; j < ncols; ++j) A(i, j) = QuadScalar(0);
  }
  for (int j = 0; j < ncols; ++j)
    for (const auto& [i, c] : cols[static_cast<size_t>(j)]) A(i, j) = c;
  for (const auto& [i, c] : rhs) b(i) = c;

  LinearSolve<QuadScalar> sol = solve_linear(A, b);
  if (!sol.solution)
    throw theory_violation("ladder_down: no invariant combination matches");

  OneForm w = OneForm::zero(vars);
  for (size_t ui = 0; ui < unknowns.size(); ++ui) {
    const QuadScalar& u = (*sol.solution)(static_cast<int>(ui));
    if (u.is_zero()) continue;
    const MultiPoly& P = f.invariants[static_cast<size_t>(unknowns[ui].t)];
    for (int si = 0; si < rank; ++si) {
      int s = f.var_indices[static_cast<size_t>(si)];
      MultiPoly add = (unknowns[ui].monomial * P.partial_derivative(s)).scaled(u);
      w.coeffs(s) = w.coeffs(s) + RatFunc(add);
    }
  }
  return {w, static_cast<int>(sol.kernel.size())};
}

// Degree bookkeeping: theta_j^(k) has coefficient degree m_j - k h.
void record_and_check_degrees(const CoxeterDatum& datum, BasisFamily& fam) {
  fam.degrees.clear();
  size_t j = 0;
  for (const auto& f : datum.factors)
    for (int e : f.exponents) {
      int want = e - fam.k * f.coxeter_number;
      auto got = fam.forms[j].homogeneous_degree();
      if (!got || *got != want)
        throw theory_violation("basis family degree bookkeeping failed");
      fam.degrees.push_back(want);
      ++j;
    }
}

}  // namespace

PrimitiveDerivation::PrimitiveDerivation(const CoxeterDatum& datum)
    : datum_(&datum), field_(DerivationField::zero(datum.vars)) {
  for (const auto& f : datum.factors) {
    const int rank = f.rank;
    // Jacobian of this factor's invariants in its own variables.
    MatX<MultiPoly> J(rank, rank);
    for (int r = 0; r < rank; ++r)
      for (int t = 0; t < rank; ++t)
        J(r, t) = f.invariants[static_cast<size_t>(t)].partial_derivative(
            f.var_indices[static_cast<size_t>(r)]);
    MultiPoly detJ = bareiss_det(J);
    auto cratio = detJ.divide_exact(f.q_poly);
    if (!cratio || !cratio->is_constant() || cratio->is_zero())
      throw theory_violation(f.name + ": Jacobian is not a nonzero multiple of Q");
    QuadScalar c = cratio->constant_term();

    // Cramer: the coefficient on d/dx_r solves J^T a = e_rank, so it is the
    // signed (rank, r) minor of J^T over det J.
    std::vector<std::pair<MultiPoly, int>> qfactors;
    for (int h : f.hyperplanes)
      qfactors.emplace_back(
          datum.hyperplanes[static_cast<size_t>(h)].form.to_poly(), 1);
    DerivationField Df = DerivationField::zero(datum.vars);
    for (int r = 0; r < rank; ++r) {
      MatX<MultiPoly> M(rank - 1, rank - 1);
      for (int t = 0; t + 1 < rank; ++t) {
        int col = 0;
        for (int s = 0; s < rank; ++s) {
          if (s == r) continue;
          M(t, col++) = J(s, t);  // J^T with row `rank-1` and column r removed
        }
      }
      MultiPoly minor = rank == 1 ? MultiPoly::constant(datum.vars, QuadScalar(1))
                                  : bareiss_det(M);
      QuadScalar sign = ((rank - 1 + r) % 2 == 0) ? QuadScalar(1) : QuadScalar(-1);
      Df.coeffs(f.var_indices[static_cast<size_t>(r)]) =
          RatFunc::from_factored(minor.scaled(sign / c), qfactors);
    }
    if (Df.homogeneous_degree() != 1 - f.coxeter_number)
      throw theory_violation(f.name + ": factor derivation degree is not 1-h");
    field_ += Df;
    factor_fields_.push_back(std::move(Df));
    jacobians_.push_back(std::move(J));
  }

  // Defining property: D P = 1 on each factor's top invariant, 0 on all the
  // others, and Q clears every denominator.
  for (const auto& f : datum.factors)
    for (size_t t = 0; t < f.invariants.size(); ++t) {
      RatFunc v = apply(RatFunc(f.invariants[t]));
      RatFunc want(t + 1 == f.invariants.size() ? 1 : 0);
      if (!(v == want))
        throw theory_violation(f.name + ": primitive derivation fails D(P) test");
    }
  RatFunc q(datum.q_poly);
  for (int r = 0; r < datum.rank(); ++r)
    if (!(field_.coeffs(r) * q).is_polynomial())
      throw theory_violation("primitive derivation has poles beyond Q");
}

OneForm PrimitiveDerivation::nabla(const OneForm& w) const {
  return nabla_on_form(field_, w);
}

DerivationField PrimitiveDerivation::nabla(const DerivationField& v) const {
  return nabla_on_derivation(field_, v);
}

RatFunc PrimitiveDerivation::apply(const RatFunc& f) const {
  return apply_derivation(field_, f);
}

bool t_membership(const MultiPoly& f, const PrimitiveDerivation& D) {
  for (const auto& g : D.datum().generators())
    if (!(g(f) == f)) throw error("t_membership: input is not invariant");
  return D.apply(RatFunc(f)).is_zero();
}

std::map<int, BasisFamily> theta_ladder(const PrimitiveDerivation& D, int kmin,
                                        int kmax) {
  if (kmin > 0 || kmax < 0 || kmin > kmax)
    throw error("theta_ladder: range must contain 0");
  const CoxeterDatum& datum = D.datum();

  std::map<int, BasisFamily> out;
  BasisFamily base;
  base.k = 0;
  for (const auto& p : datum.all_invariants())
    base.forms.push_back(exterior_derivative(p));
  record_and_check_degrees(datum, base);
  out.emplace(0, std::move(base));

  for (int k = 1; k <= kmax; ++k) {
    BasisFamily fam;
    fam.k = k;
    for (const auto& w : out.at(k - 1).forms) fam.forms.push_back(D.nabla(w));
    record_and_check_degrees(datum, fam);
    out.emplace(k, std::move(fam));
  }
  for (int k = -1; k >= kmin; --k) {
    BasisFamily fam;
    fam.k = k;
    size_t j = 0;
    for (size_t fi = 0; fi < datum.factors.size(); ++fi)
      for (size_t t = 0; t < datum.factors[fi].invariants.size(); ++t, ++j) {
        auto [w, kdim] = ladder_down(D, fi, out.at(k + 1).forms[j]);
        fam.forms.push_back(std::move(w));
        fam.kernel_dims.push_back(kdim);
      }
    record_and_check_degrees(datum, fam);
    out.emplace(k, std::move(fam));
  }
  return out;
}

BasisFamily theta_basis(const PrimitiveDerivation& D, int k) {
  return theta_ladder(D, std::min(0, k), std::max(0, k)).at(k);
}

void xi_basis(BasisFamily& family, const PrimitiveDerivation& D) {
  const Metric& g = D.datum().metric;
  family.derivations.clear();
  for (const auto& w : family.forms)
    family.derivations.push_back(istar_map(g, w));

  // Commuting diagram: raising indices commutes with the connection.  For
  // k >= 0 iterate on the derivation side from level 0 independently; for
  // k < 0 climb back up to level 0.
  if (family.k >= 0) {
    std::vector<DerivationField> climb;
    for (const auto& p : D.datum().all_invariants())
      climb.push_back(istar_map(g, exterior_derivative(p)));
    for (int step = 0; step < family.k; ++step)
      for (auto& v : climb) v = D.nabla(v);
    for (size_t j = 0; j < climb.size(); ++j)
      if (!(climb[j] == family.derivations[j]))
        throw theory_violation("xi_basis: connection does not commute with I*");
  } else {
    std::vector<DerivationField> climb = family.derivations;
    for (int step = family.k; step < 0; ++step)
      for (auto& v : climb) v = D.nabla(v);
    auto invs = D.datum().all_invariants();
    for (size_t j = 0; j < climb.size(); ++j)
      if (!(climb[j] == istar_map(g, exterior_derivative(invs[j]))))
        throw theory_violation("xi_basis: connection does not commute with I*");
  }
}

MatX<RatFunc> pairing_matrix(const Metric& g, const std::vector<OneForm>& forms) {
  const int n = static_cast<int>(forms.size());
  MatX<RatFunc> G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      G(i, j) = istar_pairing(g, forms[static_cast<size_t>(i)],
                              forms[static_cast<size_t>(j)]);
      if (j > i) G(j, i) = G(i, j);
    }
  return G;
}

GMatrix g_matrix(const PrimitiveDerivation& D) {
  const CoxeterDatum& datum = D.datum();
  std::vector<OneForm> dP;
  for (const auto& p : datum.all_invariants())
    dP.push_back(exterior_derivative(p));
  GMatrix G{"G", pairing_matrix(datum.metric, dP)};
  auto gens = datum.generators();
  for (int i = 0; i < G.entries.rows(); ++i)
    for (int j = 0; j < G.entries.cols(); ++j) {
      const RatFunc& e = G.entries(i, j);
      if (!e.is_polynomial())
        throw theory_violation("g_matrix: entry not polynomial");
      if (!(G.entries(j, i) == e))
        throw theory_violation("g_matrix: not symmetric");
      for (const auto& r : gens)
        if (!(r(e) == e)) throw theory_violation("g_matrix: entry not invariant");
    }
  return G;
}

GMatrix g_k_matrix(const PrimitiveDerivation& D, const BasisFamily& fam_k,
                   const BasisFamily& fam_k1) {
  if (fam_k1.k != fam_k.k + 1)
    throw error("g_k_matrix: families must sit at consecutive levels");
  const CoxeterDatum& datum = D.datum();
  const int n = datum.rank();
  const int k = fam_k.k;

  RatFunc qpow = RatFunc(datum.q_poly).pow(2 * k + 1);
  RatFunc c = wedge_top(fam_k1.forms) * qpow;
  QuadScalar cval = c.constant_value();
  if (cval.is_zero()) throw theory_violation("g_k_matrix: degenerate basis");

  auto gens = datum.generators();
  GMatrix G{"G_k", MatX<RatFunc>(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<OneForm> forms = fam_k1.forms;
      forms[static_cast<size_t>(i)] = fam_k.forms[static_cast<size_t>(j)];
      RatFunc entry = wedge_top(forms) * qpow / RatFunc(cval);
      if (!entry.is_polynomial())
        throw theory_violation("g_k_matrix: entry not polynomial");
      for (const auto& r : gens)
        if (!(r(entry) == entry))
          throw theory_violation("g_k_matrix: entry not invariant");
      G.entries(i, j) = std::move(entry);
    }
  return G;
}

namespace {

QuadScalar det_times_q_power(const CoxeterDatum& datum, const RatFunc& det,
                             int level) {
  RatFunc normalized = det * RatFunc(datum.q_poly).pow(2 * level - 1);
  if (normalized.is_zero())
    throw theory_violation("basis determinant vanishes");
  return normalized.constant_value();
}

}  // namespace

QuadScalar basis_determinant_constant(const PrimitiveDerivation& D,
                                      const std::vector<OneForm>& forms,
                                      int level) {
  if (static_cast<int>(forms.size()) != D.datum().rank())
    throw error("basis determinant needs rank-many forms");
  return det_times_q_power(D.datum(), wedge_top(forms), level);
}

QuadScalar basis_determinant_constant(const PrimitiveDerivation& D,
                                      const std::vector<DerivationField>& fields,
                                      int level) {
  const int n = D.datum().rank();
  if (static_cast<int>(fields.size()) != n)
    throw error("basis determinant needs rank-many fields");
  MatX<RatFunc> M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = fields[static_cast<size_t>(j)].coeffs(i);
  return det_times_q_power(D.datum(), ratfunc_matrix_det(std::move(M)), level);
}

}  // namespace coxlog
