#include "coxlog/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace coxlog {

namespace {

QuadScalar qr(long n, long d = 1) { return QuadScalar(make_rational(n, d)); }

VarsPtr local_vars(int rank) {
  static const char* names[] = {"x", "y", "z", "w"};
  if (rank < 1 || rank > 4) throw error("local_vars: rank out of range");
  VarList v;
  for (int i = 0; i < rank; ++i) v.emplace_back(names[i]);
  return make_vars(std::move(v));
}

LinearForm lf(const VarsPtr& vars, std::vector<QuadScalar> coeffs) {
  LinearForm f;
  f.vars = vars;
  f.coeffs = VecX<QuadScalar>(static_cast<int>(coeffs.size()));
  for (int i = 0; i < f.coeffs.size(); ++i) f.coeffs(i) = coeffs[static_cast<size_t>(i)];
  return f;
}

// All monomials of the given total degree, graded lex descending, as
// exponent vectors.
void monomials_rec(int nvars, int pos, unsigned rem, std::vector<unsigned>& cur,
                   std::vector<Mono>& out) {
  if (pos == nvars - 1) {
    cur[static_cast<size_t>(pos)] = rem;
    out.emplace_back(cur);
    return;
  }
  for (int e = static_cast<int>(rem); e >= 0; --e) {
    cur[static_cast<size_t>(pos)] = static_cast<unsigned>(e);
    monomials_rec(nvars, pos + 1, rem - static_cast<unsigned>(e), cur, out);
  }
}

std::vector<Mono> monomials_of_degree(int nvars, unsigned deg) {
  std::vector<Mono> out;
  std::vector<unsigned> cur(static_cast<size_t>(nvars), 0);
  monomials_rec(nvars, 0, deg, cur, out);
  return out;
}

// Echelon basis of the space of degree-d polynomials fixed by every given
// reflection.  Deterministic: monomials are ordered graded lex descending and
// the kernel comes out of the canonical reduced elimination.
std::vector<MultiPoly> invariant_space(const VarsPtr& vars,
                                       const std::vector<Reflection>& gens,
                                       unsigned deg) {
  const int nv = static_cast<int>(vars->size());
  std::vector<Mono> monos = monomials_of_degree(nv, deg);
  const int n = static_cast<int>(monos.size());
  std::map<Mono, int, GrlexGreater> index;
  for (int j = 0; j < n; ++j) index.emplace(monos[static_cast<size_t>(j)], j);

  const int rows_per_gen = n;
  MatX<QuadScalar> A(static_cast<int>(gens.size()) * rows_per_gen, n);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) A(i, j) = QuadScalar(0);

  for (size_t g = 0; g < gens.size(); ++g) {
    for (int j = 0; j < n; ++j) {
      MultiPoly m = MultiPoly::from_terms(vars, {{monos[static_cast<size_t>(j)], QuadScalar(1)}});
      MultiPoly diff = gens[g](m) - m;
      for (const auto& [mm, c] : diff.terms()) {
        auto it = index.find(mm);
        if (it == index.end()) throw error("invariant_space: degree drifted");
        A(static_cast<int>(g) * rows_per_gen + it->second, j) += c;
      }
    }
  }

  std::vector<MultiPoly> basis;
  for (const auto& v : kernel_basis(A)) {
    MultiPoly p = MultiPoly::zero(vars);
    MultiPoly::TermMap terms;
    for (int j = 0; j < n; ++j)
      if (!v(j).is_zero()) terms.emplace(monos[static_cast<size_t>(j)], v(j));
    p = MultiPoly::from_terms(vars, std::move(terms));
    if (!p.is_zero()) basis.push_back(p.scaled(p.leading_coeff().inverse()));
  }
  return basis;
}

struct FactorSpec {
  std::string name;
  int rank = 0;
  unsigned long disc = 0;
  MatX<QuadScalar> bmat;  // inverse_gram in local coordinates
  std::vector<std::vector<QuadScalar>> simples;
  std::vector<int> exponents;
  int expected_roots = 0;
  std::function<std::vector<MultiPoly>(const VarsPtr&, const Metric&,
                                       const std::vector<Reflection>&)>
      invariants;
};

MatX<QuadScalar> identity_b(int n) {
  MatX<QuadScalar> B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = QuadScalar(i == j ? 1 : 0);
  return B;
}

std::vector<MultiPoly> squares(const VarsPtr& vars) {
  std::vector<MultiPoly> s;
  for (int i = 0; i < static_cast<int>(vars->size()); ++i) {
    MultiPoly x = MultiPoly::variable(vars, i);
    s.push_back(x * x);
  }
  return s;
}

MultiPoly elementary_symmetric(const std::vector<MultiPoly>& xs, int k,
                               const VarsPtr& vars) {
  // DP over prefixes: e[j] after step i is e_j(xs[0..i]).
  std::vector<MultiPoly> e(static_cast<size_t>(k) + 1, MultiPoly::zero(vars));
  e[0] = MultiPoly::constant(vars, QuadScalar(1));
  for (size_t i = 0; i < xs.size(); ++i)
    for (int j = std::min<int>(k, static_cast<int>(i) + 1); j >= 1; --j)
      e[static_cast<size_t>(j)] += e[static_cast<size_t>(j - 1)] * xs[i];
  return e[static_cast<size_t>(k)];
}

FactorSpec spec_a(int rank) {
  FactorSpec s;
  s.name = "A" + std::to_string(rank);
  s.rank = rank;
  s.disc = 0;
  s.bmat = identity_b(rank);
  for (int i = 0; i + 1 < rank; ++i) {
    s.bmat(i, i + 1) = qr(-1, 2);
    s.bmat(i + 1, i) = qr(-1, 2);
  }
  for (int i = 0; i < rank; ++i) {
    std::vector<QuadScalar> c(static_cast<size_t>(rank), QuadScalar(0));
    c[static_cast<size_t>(i)] = QuadScalar(1);
    s.simples.push_back(std::move(c));
  }
  s.exponents.resize(static_cast<size_t>(rank));
  std::iota(s.exponents.begin(), s.exponents.end(), 1);
  s.expected_roots = rank * (rank + 1) / 2;
  s.invariants = [rank](const VarsPtr& vars, const Metric&,
                        const std::vector<Reflection>&) {
    // Ambient coordinates u_1..u_{rank+1} with u_k - u_{k+1} = x_k and
    // sum u_k = 0; the invariants are the power sums p_2, ..., p_{rank+1}.
    std::vector<MultiPoly> u;
    MultiPoly shift = MultiPoly::zero(vars);
    for (int j = 0; j < rank; ++j)
      shift += MultiPoly::variable(vars, j).scaled(qr(j + 1, rank + 1));
    for (int k = 0; k <= rank; ++k) {
      MultiPoly uk = MultiPoly::zero(vars);
      for (int j = k; j < rank; ++j) uk += MultiPoly::variable(vars, j);
      uk -= shift;
      u.push_back(std::move(uk));
    }
    std::vector<MultiPoly> inv;
    for (int p = 2; p <= rank + 1; ++p) {
      MultiPoly acc = MultiPoly::zero(vars);
      for (const auto& uk : u) acc += uk.pow(static_cast<unsigned>(p));
      inv.push_back(std::move(acc));
    }
    return inv;
  };
  return s;
}

FactorSpec spec_b(int rank) {
  FactorSpec s;
  s.name = "B" + std::to_string(rank);
  s.rank = rank;
  s.disc = 0;
  s.bmat = identity_b(rank);
  for (int i = 0; i + 1 < rank; ++i) {
    std::vector<QuadScalar> c(static_cast<size_t>(rank), QuadScalar(0));
    c[static_cast<size_t>(i)] = QuadScalar(1);
    c[static_cast<size_t>(i + 1)] = QuadScalar(-1);
    s.simples.push_back(std::move(c));
  }
  std::vector<QuadScalar> last(static_cast<size_t>(rank), QuadScalar(0));
  last[static_cast<size_t>(rank - 1)] = QuadScalar(1);
  s.simples.push_back(std::move(last));
  for (int i = 0; i < rank; ++i) s.exponents.push_back(2 * i + 1);
  s.expected_roots = rank * rank;
  s.invariants = [rank](const VarsPtr& vars, const Metric&,
                        const std::vector<Reflection>&) {
    std::vector<MultiPoly> inv;
    auto sq = squares(vars);
    QuadScalar half = qr(1, 2);
    for (int k = 1; k <= rank; ++k)
      inv.push_back(elementary_symmetric(sq, k, vars).scaled(half.pow(k)));
    return inv;
  };
  return s;
}

FactorSpec spec_d4() {
  FactorSpec s;
  s.name = "D4";
  s.rank = 4;
  s.disc = 0;
  s.bmat = identity_b(4);
  s.simples = {
      {QuadScalar(1), QuadScalar(-1), QuadScalar(0), QuadScalar(0)},
      {QuadScalar(0), QuadScalar(1), QuadScalar(-1), QuadScalar(0)},
      {QuadScalar(0), QuadScalar(0), QuadScalar(1), QuadScalar(-1)},
      {QuadScalar(0), QuadScalar(0), QuadScalar(1), QuadScalar(1)},
  };
  s.exponents = {1, 3, 3, 5};
  s.expected_roots = 12;
  s.invariants = [](const VarsPtr& vars, const Metric&,
                    const std::vector<Reflection>&) {
    auto sq = squares(vars);
    MultiPoly prod = MultiPoly::constant(vars, QuadScalar(1));
    for (int i = 0; i < 4; ++i) prod *= MultiPoly::variable(vars, i);
    return std::vector<MultiPoly>{
        elementary_symmetric(sq, 1, vars).scaled(qr(1, 2)),
        elementary_symmetric(sq, 2, vars).scaled(qr(1, 4)),
        prod,
        elementary_symmetric(sq, 3, vars).scaled(qr(1, 8)),
    };
  };
  return s;
}

FactorSpec spec_i2(int m) {
  FactorSpec s;
  s.name = "I2(" + std::to_string(m) + ")";
  s.rank = 2;
  s.exponents = {1, m - 1};
  s.expected_roots = m;
  if (m == 5) {
    // Simple root coordinates: the orthonormal model needs sin(pi/5), which
    // lives outside the quadratic field, so use the pairing matrix directly.
    s.disc = 5;
    QuadScalar c(make_rational(1, 4), make_rational(1, 4), 5);  // cos(pi/5)
    s.bmat = identity_b(2);
    s.bmat(0, 1) = -c;
    s.bmat(1, 0) = -c;
    s.simples = {{QuadScalar(1), QuadScalar(0)}, {QuadScalar(0), QuadScalar(1)}};
    s.invariants = [](const VarsPtr& vars, const Metric& g,
                      const std::vector<Reflection>& gens) {
      MultiPoly p1 = MultiPoly::zero(vars);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          QuadScalar gij = g.gram()(i, j) * qr(1, 2);
          if (gij.is_zero()) continue;
          p1 += (MultiPoly::variable(vars, i) * MultiPoly::variable(vars, j)).scaled(gij);
        }
      auto deg5 = invariant_space(vars, gens, 5);
      if (deg5.size() != 1)
        throw theory_violation("I2(5): expected a one-dimensional degree-5 space");
      return std::vector<MultiPoly>{p1, deg5[0]};
    };
    return s;
  }
  if (m != 3 && m != 4 && m != 6) throw error("I2(m): m out of catalog range");
  s.disc = (m == 4) ? 0 : 3;
  s.bmat = identity_b(2);
  QuadScalar s3 = QuadScalar::sqrt_of(3);
  QuadScalar half = qr(1, 2);
  if (m == 3) {
    // one orbit: both roots unit length
    s.simples = {{QuadScalar(0), QuadScalar(1)}, {-s3 * half, half}};
  } else if (m == 4) {
    s.simples = {{QuadScalar(0), QuadScalar(1)}, {QuadScalar(1), QuadScalar(-1)}};
  } else {
    // crystallographic normalization: short root length 1, long length 3
    s.simples = {{QuadScalar(1), QuadScalar(0)}, {qr(-3, 2), s3 * half}};
  }
  s.invariants = [m](const VarsPtr& vars, const Metric&,
                     const std::vector<Reflection>&) {
    MultiPoly x = MultiPoly::variable(vars, 0);
    MultiPoly y = MultiPoly::variable(vars, 1);
    MultiPoly p1 = (x * x + y * y).scaled(qr(1, 2));
    // Re((x + i y)^m)
    MultiPoly p2 = MultiPoly::zero(vars);
    long binom = 1;
    for (int j = 0; j <= m; j += 2) {
      long sign = (j / 2) % 2 == 0 ? 1 : -1;
      p2 += (x.pow(static_cast<unsigned>(m - j)) * y.pow(static_cast<unsigned>(j)))
                .scaled(QuadScalar(sign * binom));
      binom = binom * (m - j) / (j + 1);
      binom = binom * (m - j - 1) / (j + 2);
    }
    return std::vector<MultiPoly>{p1, p2};
  };
  return s;
}

FactorSpec spec_h3() {
  FactorSpec s;
  s.name = "H3";
  s.rank = 3;
  s.disc = 5;
  s.bmat = identity_b(3);
  // tau = (1 + sqrt 5)/2.  Unit simple roots inside the icosahedral root
  // system: e1, (-tau/2, (tau-1)/2, 1/2), -e3.
  QuadScalar mtau2(make_rational(-1, 4), make_rational(-1, 4), 5);
  QuadScalar tm12(make_rational(-1, 4), make_rational(1, 4), 5);
  s.simples = {
      {QuadScalar(1), QuadScalar(0), QuadScalar(0)},
      {mtau2, tm12, qr(1, 2)},
      {QuadScalar(0), QuadScalar(0), QuadScalar(-1)},
  };
  s.exponents = {1, 5, 9};
  s.expected_roots = 15;
  s.invariants = [](const VarsPtr& vars, const Metric&,
                    const std::vector<Reflection>& gens) {
    MultiPoly p1 = MultiPoly::zero(vars);
    for (int i = 0; i < 3; ++i) {
      MultiPoly x = MultiPoly::variable(vars, i);
      p1 += (x * x).scaled(qr(1, 2));
    }
    auto deg6 = invariant_space(vars, gens, 6);
    if (deg6.size() != 2)
      throw theory_violation("H3: expected a two-dimensional degree-6 space");
    MultiPoly p1cubed = p1 * p1 * p1;
    std::optional<MultiPoly> p2;
    for (const auto& cand : deg6) {
      // skip the candidate proportional to p1^3
      MultiPoly scaled = p1cubed.scaled(cand.leading_coeff() / p1cubed.leading_coeff());
      if (!(cand == scaled)) {
        p2 = cand;
        break;
      }
    }
    if (!p2) throw theory_violation("H3: no degree-6 invariant beyond the square norm");
    auto deg10 = invariant_space(vars, gens, 10);
    if (deg10.size() != 3)
      throw theory_violation("H3: expected a three-dimensional degree-10 space");
    // The caller validates det J != 0; choose the first candidate that works.
    for (const auto& cand : deg10) {
      std::vector<MultiPoly> inv{p1, *p2, cand};
      MatX<MultiPoly> J(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int t = 0; t < 3; ++t)
          J(i, t) = inv[static_cast<size_t>(t)].partial_derivative(i);
      if (!bareiss_det(std::move(J)).is_zero()) return inv;
    }
    throw theory_violation("H3: no degree-10 invariant completes a generating set");
  };
  return s;
}

FactorSpec make_spec(const std::string& name) {
  if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '4')
    return spec_a(name[1] - '0');
  if (name.size() == 2 && name[0] == 'B' && (name[1] == '2' || name[1] == '3'))
    return spec_b(name[1] - '0');
  if (name == "D4") return spec_d4();
  if (name == "H3") return spec_h3();
  if (name.size() == 5 && name.rfind("I2(", 0) == 0 && name[4] == ')' &&
      name[3] >= '3' && name[3] <= '6')
    return spec_i2(name[3] - '0');
  throw error("unknown catalog type '" + name + "'");
}

std::string canonical_name(const std::string& raw) {
  std::string up;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return up;
}

}  // namespace

std::vector<std::string> catalog_types() {
  return {"A1", "A2",    "A3",    "A4",    "B2",    "B3",
          "D4", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "H3"};
}

std::vector<Reflection> CoxeterDatum::generators() const {
  std::vector<Reflection> gens;
  for (const auto& f : factors)
    for (const auto& r : f.simple_roots) gens.emplace_back(metric, r);
  return gens;
}

std::vector<std::vector<int>> CoxeterDatum::orbit_decomposition() const {
  std::vector<std::vector<int>> orbits(static_cast<size_t>(orbit_count()));
  for (int h = 0; h < num_hyperplanes(); ++h)
    orbits[static_cast<size_t>(hyperplanes[static_cast<size_t>(h)].orbit)].push_back(h);
  return orbits;
}

std::vector<MultiPoly> CoxeterDatum::all_invariants() const {
  std::vector<MultiPoly> out;
  for (const auto& f : factors)
    for (const auto& p : f.invariants) out.push_back(p);
  return out;
}

CoxeterDatum build_irreducible(const std::string& raw_name) {
  FactorSpec spec = make_spec(canonical_name(raw_name));
  VarsPtr vars = local_vars(spec.rank);
  Metric metric(vars, spec.bmat);

  std::vector<LinearForm> simple_forms;
  for (const auto& c : spec.simples) simple_forms.push_back(lf(vars, c));
  std::vector<Reflection> gens;
  for (const auto& r : simple_forms) gens.emplace_back(metric, r);

  // Closure of the simple roots under the generators.  Hyperplanes are
  // identified by their normalized form; each keeps the first root found.
  std::vector<Hyperplane> planes;
  auto find_plane = [&](const LinearForm& normalized) {
    for (size_t i = 0; i < planes.size(); ++i)
      if (planes[i].form == normalized) return static_cast<int>(i);
    return -1;
  };
  std::deque<int> queue;
  for (const auto& r : simple_forms) {
    LinearForm n = r.normalized();
    if (find_plane(n) >= 0) continue;
    planes.push_back(Hyperplane{n, r, -1, 0});
    queue.push_back(static_cast<int>(planes.size()) - 1);
  }
  while (!queue.empty()) {
    int h = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      LinearForm img = g(planes[static_cast<size_t>(h)].root);
      LinearForm n = img.normalized();
      if (find_plane(n) >= 0) continue;
      planes.push_back(Hyperplane{n, img, -1, 0});
      queue.push_back(static_cast<int>(planes.size()) - 1);
    }
  }
  if (static_cast<int>(planes.size()) != spec.expected_roots)
    throw theory_violation(spec.name + ": closure produced " +
                           std::to_string(planes.size()) + " hyperplanes, expected " +
                           std::to_string(spec.expected_roots));

  // Orbits under the full group = connected components under the generators.
  {
    std::vector<int> comp(planes.size(), -1);
    int next = 0;
    for (size_t seed = 0; seed < planes.size(); ++seed) {
      if (comp[seed] >= 0) continue;
      comp[seed] = next;
      std::deque<size_t> q{seed};
      while (!q.empty()) {
        size_t h = q.front();
        q.pop_front();
        for (const auto& g : gens) {
          LinearForm n = g(planes[h].form).normalized();
          int t = find_plane(n);
          if (t < 0) throw theory_violation(spec.name + ": reflection left the arrangement");
          if (comp[static_cast<size_t>(t)] < 0) {
            comp[static_cast<size_t>(t)] = next;
            q.push_back(static_cast<size_t>(t));
          }
        }
      }
      ++next;
    }
    for (size_t i = 0; i < planes.size(); ++i) planes[i].orbit = comp[i];
  }

  // Orbit names: lengths if two orbits are cleanly told apart, else o1, o2...
  int orbit_cnt = 0;
  for (const auto& p : planes) orbit_cnt = std::max(orbit_cnt, p.orbit + 1);
  std::vector<QuadScalar> orbit_norm(static_cast<size_t>(orbit_cnt), QuadScalar(0));
  for (const auto& p : planes) {
    QuadScalar nn = metric.pair_forms(p.root, p.root);
    QuadScalar& slot = orbit_norm[static_cast<size_t>(p.orbit)];
    if (slot.is_zero())
      slot = nn;
    else if (slot != nn)
      throw theory_violation(spec.name + ": root length not constant on an orbit");
  }
  std::vector<std::string> orbit_names;
  if (orbit_cnt == 2 && orbit_norm[0] != orbit_norm[1]) {
    bool first_long = orbit_norm[0] > orbit_norm[1];
    orbit_names = first_long ? std::vector<std::string>{"long", "short"}
                             : std::vector<std::string>{"short", "long"};
  } else {
    for (int i = 0; i < orbit_cnt; ++i) orbit_names.push_back("o" + std::to_string(i + 1));
  }

  // Defining polynomial.
  MultiPoly q = MultiPoly::constant(vars, QuadScalar(1));
  for (const auto& p : planes) q *= p.form.to_poly();

  // Invariants plus the structural checks that pin them down.
  std::vector<MultiPoly> inv = spec.invariants(vars, metric, gens);
  if (static_cast<int>(inv.size()) != spec.rank)
    throw theory_violation(spec.name + ": wrong number of basic invariants");
  for (int j = 0; j < spec.rank; ++j) {
    const MultiPoly& p = inv[static_cast<size_t>(j)];
    if (!p.is_homogeneous() ||
        p.degree() != spec.exponents[static_cast<size_t>(j)] + 1)
      throw theory_violation(spec.name + ": invariant degree mismatch");
    for (const auto& g : gens)
      if (!(g(p) == p)) throw theory_violation(spec.name + ": invariant not invariant");
  }
  for (size_t j = 0; j + 1 < inv.size(); ++j)
    if (inv[j].degree() > inv[j + 1].degree())
      throw theory_violation(spec.name + ": invariant degrees out of order");
  if (inv.size() >= 2 && inv[inv.size() - 2].degree() >= inv.back().degree())
    throw theory_violation(spec.name + ": top invariant degree must be strict");
  if (std::accumulate(spec.exponents.begin(), spec.exponents.end(), 0) !=
      spec.expected_roots)
    throw theory_violation(spec.name + ": exponents do not sum to the root count");

  // Jacobian criterion: det[dP_t/dx_s] is a nonzero multiple of q.
  MatX<MultiPoly> J(spec.rank, spec.rank);
  for (int i = 0; i < spec.rank; ++i)
    for (int t = 0; t < spec.rank; ++t)
      J(i, t) = inv[static_cast<size_t>(t)].partial_derivative(i);
  MultiPoly detJ = bareiss_det(std::move(J));
  auto ratio = detJ.divide_exact(q);
  if (!ratio || !ratio->is_constant() || ratio->is_zero())
    throw theory_violation(spec.name + ": Jacobian is not a nonzero multiple of Q");

  IrreducibleFactor factor;
  factor.name = spec.name;
  factor.rank = spec.rank;
  factor.var_indices.resize(static_cast<size_t>(spec.rank));
  std::iota(factor.var_indices.begin(), factor.var_indices.end(), 0);
  factor.simple_roots = simple_forms;
  factor.invariants = inv;
  factor.exponents = spec.exponents;
  factor.coxeter_number = spec.exponents.back() + 1;
  factor.q_poly = q;
  factor.hyperplanes.resize(planes.size());
  std::iota(factor.hyperplanes.begin(), factor.hyperplanes.end(), 0);

  return CoxeterDatum{spec.name,  vars,        metric, std::move(planes),
                      {factor},   orbit_names, q,      spec.disc};
}

CoxeterDatum product(const std::vector<CoxeterDatum>& parts) {
  if (parts.empty()) throw error("product: no factors");
  if (parts.size() == 1) return parts[0];

  int total_rank = 0;
  unsigned long disc = 0;
  for (const auto& d : parts) {
    total_rank += d.rank();
    if (d.discriminant != 0) {
      if (disc != 0 && disc != d.discriminant)
        throw error("product: factors live in different quadratic fields");
      disc = d.discriminant;
    }
  }
  if (total_rank > kMaxVars) throw error("product: rank exceeds the variable limit");

  VarList names;
  for (size_t i = 0; i < parts.size(); ++i)
    for (const auto& n : *parts[i].vars) names.push_back(n + std::to_string(i + 1));
  VarsPtr vars = make_vars(std::move(names));

  MatX<QuadScalar> B(total_rank, total_rank);
  for (int i = 0; i < total_rank; ++i)
    for (int j = 0; j < total_rank; ++j) B(i, j) = QuadScalar(0);
  int off = 0;
  for (const auto& d : parts) {
    int r = d.rank();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) B(off + i, off + j) = d.metric.inverse_gram()(i, j);
    off += r;
  }
  Metric metric(vars, B);

  auto embed_form = [&](const LinearForm& f, int offset) {
    LinearForm g;
    g.vars = vars;
    g.coeffs = VecX<QuadScalar>(total_rank);
    for (int i = 0; i < total_rank; ++i) g.coeffs(i) = QuadScalar(0);
    for (int i = 0; i < f.coeffs.size(); ++i) g.coeffs(offset + i) = f.coeffs(i);
    return g;
  };

  CoxeterDatum out{"", vars, metric, {}, {}, {}, MultiPoly::constant(vars, QuadScalar(1)), disc};
  std::ostringstream type;
  off = 0;
  int orbit_off = 0;
  int factor_idx = 0;
  for (const auto& d : parts) {
    if (factor_idx) type << "x";
    type << d.type_string;
    std::vector<int> var_map(static_cast<size_t>(d.rank()));
    for (int i = 0; i < d.rank(); ++i) var_map[static_cast<size_t>(i)] = off + i;

    for (const auto& f : d.factors) {
      if (d.factors.size() > 1)
        throw error("product: factors must be irreducible data");
      IrreducibleFactor nf;
      nf.name = f.name;
      nf.rank = f.rank;
      for (int i : f.var_indices) nf.var_indices.push_back(off + i);
      for (const auto& r : f.simple_roots) nf.simple_roots.push_back(embed_form(r, off));
      for (const auto& p : f.invariants) nf.invariants.push_back(p.embed(vars, var_map));
      nf.exponents = f.exponents;
      nf.coxeter_number = f.coxeter_number;
      nf.q_poly = f.q_poly.embed(vars, var_map);
      for (int h : f.hyperplanes)
        nf.hyperplanes.push_back(static_cast<int>(out.hyperplanes.size()) + h);
      out.factors.push_back(std::move(nf));
    }
    for (const auto& p : d.hyperplanes) {
      Hyperplane np;
      np.form = embed_form(p.form, off);
      np.root = embed_form(p.root, off);
      np.orbit = orbit_off + p.orbit;
      np.factor = factor_idx;
      out.hyperplanes.push_back(std::move(np));
    }
    for (const auto& n : d.orbit_names)
      out.orbit_names.push_back("f" + std::to_string(factor_idx + 1) + "." + n);
    out.q_poly *= d.q_poly.embed(vars, var_map);
    orbit_off += d.orbit_count();
    off += d.rank();
    ++factor_idx;
  }
  out.type_string = type.str();
  return out;
}

CoxeterDatum build_type(const std::string& type_string) {
  std::string s = canonical_name(type_string);
  if (s.empty()) throw error("build_type: empty type string");
  // Split on 'X' separators that are not inside parentheses.
  std::vector<std::string> names;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'X' && depth == 0) {
      names.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  names.push_back(cur);
  std::vector<CoxeterDatum> parts;
  for (const auto& n : names) parts.push_back(build_irreducible(n));
  return product(parts);
}

MultiplicityMap MultiplicityMap::constant(const CoxeterDatum& d, int m) {
  MultiplicityMap out;
  out.values_.assign(static_cast<size_t>(d.num_hyperplanes()), m);
  out.description_ = "const:" + std::to_string(m);
  return out;
}

MultiplicityMap MultiplicityMap::from_values(const CoxeterDatum& d,
                                             std::vector<int> values) {
  if (static_cast<int>(values.size()) != d.num_hyperplanes())
    throw error("MultiplicityMap: wrong number of values");
  MultiplicityMap out;
  out.values_ = std::move(values);
  std::ostringstream desc;
  desc << "list:";
  for (size_t i = 0; i < out.values_.size(); ++i)
    desc << (i ? "," : "") << out.values_[i];
  out.description_ = desc.str();
  return out;
}

MultiplicityMap MultiplicityMap::parse(const CoxeterDatum& d, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw error("MultiplicityMap: expected '<kind>:<args>' in '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);
  if (kind == "const") {
    try {
      return constant(d, std::stoi(args));
    } catch (const std::exception&) {
      throw error("MultiplicityMap: bad integer in '" + spec + "'");
    }
  }
  if (kind == "list") {
    std::vector<int> vals;
    std::istringstream in(args);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        vals.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw error("MultiplicityMap: bad integer in '" + spec + "'");
      }
    }
    return from_values(d, std::move(vals));
  }
  if (kind == "orbit") {
    std::map<std::string, int> named;
    std::istringstream in(args);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw error("MultiplicityMap: expected name=value in '" + spec + "'");
      try {
        named[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
      } catch (const std::exception&) {
        throw error("MultiplicityMap: bad integer in '" + spec + "'");
      }
    }
    std::vector<int> vals(static_cast<size_t>(d.num_hyperplanes()), 0);
    for (int h = 0; h < d.num_hyperplanes(); ++h) {
      const std::string& name =
          d.orbit_names[static_cast<size_t>(d.hyperplanes[static_cast<size_t>(h)].orbit)];
      auto it = named.find(name);
      if (it == named.end())
        throw error("MultiplicityMap: orbit '" + name + "' not covered by '" + spec + "'");
      vals[static_cast<size_t>(h)] = it->second;
    }
    for (const auto& [name, v] : named) {
      bool used = false;
      for (const auto& on : d.orbit_names) used = used || on == name;
      if (!used) throw error("MultiplicityMap: unknown orbit '" + name + "'");
    }
    MultiplicityMap out;
    out.values_ = std::move(vals);
    std::ostringstream desc;
    desc << "orbit:";
    bool first = true;
    for (const auto& [name, v] : named) {
      desc << (first ? "" : ",") << name << "=" << v;
      first = false;
    }
    out.description_ = desc.str();
    return out;
  }
  throw error("MultiplicityMap: unknown kind '" + kind + "'");
}

bool MultiplicityMap::is_constant() const {
  for (int v : values_)
    if (v != values_[0]) return false;
  return true;
}

bool MultiplicityMap::is_orbit_constant(const CoxeterDatum& d) const {
  std::vector<std::optional<int>> per(static_cast<size_t>(d.orbit_count()));
  for (int h = 0; h < d.num_hyperplanes(); ++h) {
    auto& slot = per[static_cast<size_t>(d.hyperplanes[static_cast<size_t>(h)].orbit)];
    int v = values_[static_cast<size_t>(h)];
    if (!slot)
      slot = v;
    else if (*slot != v)
      return false;
  }
  return true;
}

MultiplicityMap MultiplicityMap::shifted(int delta) const {
  MultiplicityMap out(*this);
  for (int& v : out.values_) v += delta;
  out.description_ = "shifted(" + description_ + "," + std::to_string(delta) + ")";
  if (out.is_constant() && !out.values_.empty())
    out.description_ = "const:" + std::to_string(out.values_[0]);
  return out;
}

MultiplicityMap MultiplicityMap::negated() const {
  MultiplicityMap out(*this);
  for (int& v : out.values_) v = -v;
  out.description_ = "negated(" + description_ + ")";
  if (out.is_constant() && !out.values_.empty())
    out.description_ = "const:" + std::to_string(out.values_[0]);
  return out;
}

std::string MultiplicityMap::description() const { return description_; }

}  // namespace coxlog
