#include "coxlog/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include <CLI11.hpp>

#include "coxlog/textio.hpp"

namespace coxlog {

namespace {

using nlohmann::json;

// All randomness flows through pick(); distributions are avoided because
// their output is implementation-defined and certificates must be stable.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long seed) : eng(seed) {}
  long pick(long lo, long hi) {
    return lo + static_cast<long>(eng() % static_cast<unsigned long>(hi - lo + 1));
  }
  long pick_nonzero(long lo, long hi) {
    for (;;) {
      long v = pick(lo, hi);
      if (v != 0) return v;
    }
  }
};

json render_form(const OneForm& w) {
  json a = json::array();
  for (int r = 0; r < w.coeffs.size(); ++r) a.push_back(w.coeffs(r).to_string());
  return a;
}

json render_field(const DerivationField& v) {
  json a = json::array();
  for (int r = 0; r < v.coeffs.size(); ++r) a.push_back(v.coeffs(r).to_string());
  return a;
}

OneForm parse_form(const VarsPtr& vars, const json& a) {
  OneForm w = OneForm::zero(vars);
  for (size_t r = 0; r < a.size(); ++r)
    w.coeffs(static_cast<int>(r)) = parse_ratfunc(vars, a[r].get<std::string>());
  return w;
}

DerivationField parse_field(const VarsPtr& vars, const json& a) {
  DerivationField v = DerivationField::zero(vars);
  for (size_t r = 0; r < a.size(); ++r)
    v.coeffs(static_cast<int>(r)) = parse_ratfunc(vars, a[r].get<std::string>());
  return v;
}

json render_matrix(const MatX<RatFunc>& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json render_witnesses(const CoxeterDatum& d, const MembershipVerdict& v) {
  json ws = json::array();
  for (const OrderWitness& w : v.witnesses) {
    json jw;
    jw["hyperplane"] = w.hyperplane < 0
                           ? "*"
                           : d.hyperplanes[static_cast<size_t>(w.hyperplane)].form.to_poly().to_string();
    jw["check"] = w.check;
    jw["zero"] = w.zero;
    jw["ord"] = w.ord;
    jw["bound"] = w.bound;
    jw["ok"] = w.ok;
    ws.push_back(jw);
  }
  return ws;
}

// Random product of at most one basic invariant and a small scalar: an
// R-coefficient that keeps sample degrees manageable.
MultiPoly random_invariant_scalar(const CoxeterDatum& d, Rng& rng) {
  MultiPoly c = MultiPoly::constant(d.vars, QuadScalar(rng.pick_nonzero(-3, 3)));
  if (rng.pick(0, 2) == 0) {
    auto inv = d.all_invariants();
    c = c * inv[static_cast<size_t>(rng.pick(0, static_cast<long>(inv.size()) - 1))];
  }
  return c;
}

std::vector<OneForm> form_samples(const CoxeterDatum& d,
                                  const std::map<int, BasisFamily>& ladder,
                                  int count, Rng& rng) {
  std::vector<int> keys;
  for (const auto& [k, fam] : ladder) keys.push_back(k);
  std::vector<OneForm> out;
  while (static_cast<int>(out.size()) < count) {
    const BasisFamily& fam =
        ladder.at(keys[static_cast<size_t>(rng.pick(0, static_cast<long>(keys.size()) - 1))]);
    OneForm w = OneForm::zero(d.vars);
    for (const OneForm& theta : fam.forms) {
      if (rng.pick(0, 3) == 0) continue;
      w += theta.scaled(RatFunc(random_invariant_scalar(d, rng)));
    }
    if (!w.is_zero()) out.push_back(w);
  }
  return out;
}

std::vector<DerivationField> field_samples(const CoxeterDatum& d,
                                           const std::map<int, BasisFamily>& ladder,
                                           int count, Rng& rng) {
  std::vector<int> keys;
  for (const auto& [k, fam] : ladder) keys.push_back(k);
  std::vector<DerivationField> out;
  while (static_cast<int>(out.size()) < count) {
    const BasisFamily& fam =
        ladder.at(keys[static_cast<size_t>(rng.pick(0, static_cast<long>(keys.size()) - 1))]);
    DerivationField v = DerivationField::zero(d.vars);
    for (const DerivationField& xi : fam.derivations) {
      if (rng.pick(0, 3) == 0) continue;
      v += xi.scaled(RatFunc(random_invariant_scalar(d, rng)));
    }
    if (!v.is_zero()) out.push_back(v);
  }
  return out;
}

// f = g * alpha^p with random small g and p != 0, the shape that meets every
// hyperplane with a controllable order.
std::vector<RatFunc> ord_samples(const CoxeterDatum& d, int count, Rng& rng) {
  const int n = d.rank();
  std::vector<RatFunc> out;
  while (static_cast<int>(out.size()) < count) {
    MultiPoly g = MultiPoly::zero(d.vars);
    long terms = rng.pick(1, 3);
    for (long t = 0; t < terms; ++t) {
      MultiPoly mono = MultiPoly::constant(d.vars, QuadScalar(rng.pick_nonzero(-3, 3)));
      long degree = rng.pick(0, 2);
      for (long e = 0; e < degree; ++e)
        mono = mono * MultiPoly::variable(d.vars, static_cast<int>(rng.pick(0, n - 1)));
      g = g + mono;
    }
    if (g.is_zero()) continue;
    MultiPoly alpha =
        d.hyperplanes[static_cast<size_t>(rng.pick(0, d.num_hyperplanes() - 1))].form.to_poly();
    long p = rng.pick_nonzero(-3, 3);
    RatFunc f = p > 0 ? RatFunc(g * alpha.pow(static_cast<unsigned>(p)))
                      : RatFunc::from_factored(g, {{alpha, static_cast<int>(-p)}});
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

std::vector<OneForm> random_rational_forms(const CoxeterDatum& d, int count, Rng& rng) {
  const int n = d.rank();
  std::vector<OneForm> out;
  while (static_cast<int>(out.size()) < count) {
    OneForm w = OneForm::zero(d.vars);
    for (int r = 0; r < n; ++r) {
      if (rng.pick(0, 2) == 0) continue;
      MultiPoly g = MultiPoly::zero(d.vars);
      long terms = rng.pick(1, 2);
      for (long t = 0; t < terms; ++t) {
        MultiPoly mono = MultiPoly::constant(d.vars, QuadScalar(rng.pick_nonzero(-2, 2)));
        long degree = rng.pick(0, 2);
        for (long e = 0; e < degree; ++e)
          mono = mono * MultiPoly::variable(d.vars, static_cast<int>(rng.pick(0, n - 1)));
        g = g + mono;
      }
      if (g.is_zero()) continue;
      RatFunc::Factors den;
      if (rng.pick(0, 1) == 0)
        den.push_back(
            {d.hyperplanes[static_cast<size_t>(rng.pick(0, d.num_hyperplanes() - 1))].form.to_poly(),
             static_cast<int>(rng.pick(1, 2))});
      w.coeffs(r) = RatFunc::from_factored(g, den);
    }
    if (!w.is_zero()) out.push_back(w);
  }
  return out;
}

// One certificate: a prefilled skeleton plus the check that completes it.
// Exceptions become a failed verdict with the diagnostic preserved, so a
// corrupted input can never crash the suite past its certificate.
struct Task {
  json cert;
  std::function<void(json&)> complete;
};

json run_task(Task& t) {
  try {
    t.complete(t.cert);
  } catch (const std::exception& e) {
    t.cert["verdict"] = false;
    t.cert["witness"]["error"] = e.what();
    t.cert["notes"] = "check aborted by exception";
  }
  return std::move(t.cert);
}

json base_cert(const SuiteConfig& cfg, const CoxeterDatum& d, const std::string& id,
               const std::string& kind, const std::string& multiplicity) {
  json c;
  c["id"] = id;
  c["kind"] = kind;
  c["arrangement"] = d.type_string;
  c["multiplicity"] = multiplicity;
  c["seed"] = cfg.seed;
  c["version"] = kToolVersion;
  c["inputs"] = json::object();
  c["witness"] = json::object();
  c["verdict"] = false;
  c["notes"] = "";
  return c;
}

std::string fam_id(const char* side, int k) {
  return std::string(side) + "[" + std::to_string(k) + "]";
}

// ---- per-kind check bodies, shared by run_suite and recheck ----------------

void check_jacobian_p(const CoxeterDatum& d, const std::vector<MultiPoly>& invariants,
                      json& cert) {
  const int n = d.rank();
  MatX<MultiPoly> J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      J(i, j) = invariants[static_cast<size_t>(j)].partial_derivative(i);
  MultiPoly det = bareiss_det(J);
  cert["witness"]["determinant"] = det.to_string();
  auto c = det.divide_exact(d.q_poly);
  bool ok = c.has_value() && c->is_constant() && !c->is_zero();
  if (ok) cert["witness"]["constant"] = c->to_string();
  cert["verdict"] = ok;
}

void check_jacobian_h(const CoxeterDatum& d, size_t factor,
                      const std::vector<RatFunc>& coeffs, json& cert) {
  const IrreducibleFactor& f = d.factors[factor];
  const int r = f.rank;
  MatX<RatFunc> M(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      M(i, j) = coeffs[static_cast<size_t>(j)].partial_derivative(f.var_indices[static_cast<size_t>(i)]);
  RatFunc det = ratfunc_matrix_det(M);
  RatFunc scaled = det * RatFunc(f.q_poly * f.q_poly);
  cert["witness"]["determinant"] = det.to_string();
  bool ok = !scaled.is_zero() && scaled.is_polynomial() && scaled.as_polynomial().is_constant();
  if (ok) cert["witness"]["constant"] = scaled.constant_value().to_string();
  cert["verdict"] = ok;
}

void check_t_membership(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  bool all_ok = true;
  json results = json::array();
  for (const json& c : cert["inputs"]["cases"]) {
    MultiPoly p = parse_poly(d.vars, c["poly"].get<std::string>());
    bool got = t_membership(p, D);
    results.push_back(got);
    all_ok = all_ok && got == c["expected"].get<bool>();
  }
  cert["witness"]["results"] = results;
  cert["verdict"] = all_ok;
}

void check_basis_criterion(const CoxeterDatum& d, json& cert) {
  MultiplicityMap m = MultiplicityMap::parse(d, cert["multiplicity"].get<std::string>());
  CriterionReport rep;
  std::vector<std::string> ids;
  size_t count = cert["inputs"]["members"].size();
  for (size_t j = 0; j < count; ++j)
    ids.push_back(cert["id"].get<std::string>() + "[" + std::to_string(j) + "]");
  if (cert["inputs"]["side"] == "omega") {
    std::vector<OneForm> forms;
    for (const json& mem : cert["inputs"]["members"]) forms.push_back(parse_form(d.vars, mem));
    rep = saito_ziegler_check(forms, d, m, ids);
  } else {
    std::vector<DerivationField> fields;
    for (const json& mem : cert["inputs"]["members"]) fields.push_back(parse_field(d.vars, mem));
    rep = ziegler_dual_check(fields, d, m, ids);
  }
  cert["witness"]["product_scalar"] = rep.product_scalar.to_string();
  cert["witness"]["is_regular"] = rep.is_regular;
  cert["witness"]["is_constant"] = rep.is_constant;
  cert["witness"]["failed_members"] = rep.failed_members;
  if (rep.is_constant) cert["witness"]["constant"] = rep.constant.to_string();
  cert["verdict"] = rep.failed_members.empty() && rep.is_constant;
}

void check_membership(const CoxeterDatum& d, json& cert) {
  MultiplicityMap m = MultiplicityMap::parse(d, cert["multiplicity"].get<std::string>());
  bool all_ok = true;
  json members = json::array();
  size_t idx = 0;
  for (const json& mem : cert["inputs"]["members"]) {
    std::string oid = cert["id"].get<std::string>() + "[" + std::to_string(idx++) + "]";
    MembershipVerdict v;
    if (cert["inputs"]["side"] == "omega")
      v = omega_membership(parse_form(d.vars, mem), d, m, oid);
    else
      v = der_membership(parse_field(d.vars, mem), d, m, oid);
    json jm;
    jm["id"] = oid;
    jm["verdict"] = v.verdict;
    jm["witnesses"] = render_witnesses(d, v);
    members.push_back(jm);
    all_ok = all_ok && v.verdict;
  }
  cert["witness"]["members"] = members;
  cert["verdict"] = all_ok;
}

void check_commuting_family(const CoxeterDatum& d, json& cert) {
  // recorded pairing: every derivation is the metric image of its form
  bool ok = true;
  const json& forms = cert["inputs"]["forms"];
  const json& fields = cert["inputs"]["derivations"];
  for (size_t j = 0; j < forms.size(); ++j) {
    DerivationField want = istar_map(d.metric, parse_form(d.vars, forms[j]));
    ok = ok && want == parse_field(d.vars, fields[j]);
  }
  cert["witness"]["members_checked"] = forms.size();
  cert["verdict"] = ok;
}

void check_commuting_random(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  bool ok = true;
  for (const json& jf : cert["inputs"]["forms"]) {
    OneForm w = parse_form(d.vars, jf);
    DerivationField via_form = istar_map(d.metric, D.nabla(w));
    DerivationField via_field = D.nabla(istar_map(d.metric, w));
    ok = ok && via_form == via_field;
  }
  cert["witness"]["forms_checked"] = cert["inputs"]["forms"].size();
  cert["verdict"] = ok;
}

void check_ord_lemma(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  std::vector<RatFunc> samples;
  for (const json& s : cert["inputs"]["samples"])
    samples.push_back(parse_ratfunc(d.vars, s.get<std::string>()));
  OrdLemmaReport rep = ord_lemma_check(d, D, samples);
  json planes = json::array();
  for (const OrderPair& p : rep.hyperplane_checks) {
    json jp;
    jp["hyperplane"] = d.hyperplanes[static_cast<size_t>(p.hyperplane)].form.to_poly().to_string();
    jp["ord"] = p.ord_output;
    jp["ok"] = p.ok;
    planes.push_back(jp);
  }
  json fails = json::array();
  for (const OrderPair& p : rep.sample_checks)
    if (!p.ok) {
      json jp;
      jp["object"] = p.object_id;
      jp["hyperplane"] = d.hyperplanes[static_cast<size_t>(p.hyperplane)].form.to_poly().to_string();
      jp["ord_input"] = p.ord_input;
      jp["ord_output"] = p.ord_output;
      fails.push_back(jp);
    }
  cert["witness"]["hyperplane_checks"] = planes;
  cert["witness"]["pairs"] = rep.sample_checks.size();
  cert["witness"]["skipped"] = rep.skipped;
  cert["witness"]["failures"] = fails;
  cert["verdict"] = rep.ok;
}

void check_shift(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  MultiplicityMap m = MultiplicityMap::parse(d, cert["multiplicity"].get<std::string>());
  ShiftReport rep;
  if (cert["inputs"]["side"] == "omega") {
    std::vector<OneForm> samples;
    for (const json& s : cert["inputs"]["samples"]) samples.push_back(parse_form(d.vars, s));
    rep = filtration_shift_check(d, D, m, samples);
  } else {
    std::vector<DerivationField> samples;
    for (const json& s : cert["inputs"]["samples"]) samples.push_back(parse_field(d.vars, s));
    rep = filtration_shift_check_dual(d, D, m, samples);
  }
  json pairs = json::array();
  for (const ShiftPair& p : rep.pairs) {
    json jp;
    jp["id"] = p.object_id;
    jp["in_level"] = p.in_level;
    jp["image_in_next"] = p.image_in_next;
    jp["forward_ok"] = p.forward_ok;
    jp["backward_ok"] = p.backward_ok;
    pairs.push_back(jp);
  }
  cert["witness"]["pairs"] = pairs;
  cert["verdict"] = rep.ok;
}

void check_g_matrix(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  GMatrix G = g_matrix(D);
  const int n = d.rank();
  bool ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ok = ok && G.entries(i, j) == G.entries(j, i);
      ok = ok && G.entries(i, j).is_polynomial();
      ok = ok && invariance_check(G.entries(i, j), d);
    }
  cert["witness"]["entries"] = render_matrix(G.entries);
  cert["verdict"] = ok;
}

void check_dg_matrix(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  GMatrix G = g_matrix(D);
  const int n = d.rank();
  MatX<RatFunc> DG(n, n);
  bool ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      DG(i, j) = D.apply(G.entries(i, j));
      ok = ok && DG(i, j).is_polynomial() && t_membership(DG(i, j).as_polynomial(), D);
    }
  RatFunc det = ratfunc_matrix_det(DG);
  ok = ok && !det.is_zero();
  cert["witness"]["entries"] = render_matrix(DG);
  cert["witness"]["determinant"] = det.to_string();
  cert["verdict"] = ok;
}

void check_g_k_matrix(const CoxeterDatum& d, const PrimitiveDerivation& D, json& cert) {
  int k = cert["inputs"]["k"].get<int>();
  BasisFamily low, high;
  low.k = k;
  high.k = k + 1;
  for (const json& mem : cert["inputs"]["members_k"]) low.forms.push_back(parse_form(d.vars, mem));
  for (const json& mem : cert["inputs"]["members_k1"]) high.forms.push_back(parse_form(d.vars, mem));
  GMatrix Gk = g_k_matrix(D, low, high);
  bool ok = true;
  for (int i = 0; i < Gk.entries.rows(); ++i)
    for (int j = 0; j < Gk.entries.cols(); ++j) {
      ok = ok && Gk.entries(i, j).is_polynomial();
      ok = ok && invariance_check(Gk.entries(i, j), d);
    }
  cert["witness"]["entries"] = render_matrix(Gk.entries);
  cert["verdict"] = ok;
}

// ----------------------------------------------------------------------------

struct SuitePlan {
  CoxeterDatum datum;
  PrimitiveDerivation derivation;
  std::map<int, BasisFamily> ladder;

  SuitePlan(const std::string& type, int k_min, int k_max)
      : datum(build_type(type)),
        derivation(datum),
        ladder(theta_ladder(derivation, std::min(k_min, 0), std::max(k_max, 0))) {
    for (auto& [k, fam] : ladder) xi_basis(fam, derivation);
  }
};

std::tuple<int, int, int> parse_corrupt_spec(const std::string& spec, const CoxeterDatum& d,
                                             int k_min, int k_max) {
  std::istringstream in(spec);
  int k = 0, j = 0, h = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> k >> c1 >> j >> c2 >> h) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw error("corrupt spec must be k,form,hyperplane");
  if (k < std::min(k_min, 0) || k > std::max(k_max, 0)) throw error("corrupt: level outside ladder");
  if (j < 0 || j >= d.rank()) throw error("corrupt: form index");
  if (h < 0 || h >= d.num_hyperplanes()) throw error("corrupt: hyperplane index");
  return {k, j, h};
}

void apply_corruption(SuitePlan& plan, const std::string& spec, int k_min, int k_max) {
  auto [k, j, h] = parse_corrupt_spec(spec, plan.datum, k_min, k_max);
  BasisFamily& fam = plan.ladder.at(k);
  const LinearForm& alpha = plan.datum.hyperplanes[static_cast<size_t>(h)].form;
  int b = 2 * std::abs(k) + 5;
  RatFunc pole = RatFunc::from_factored(MultiPoly::constant(plan.datum.vars, QuadScalar(1)),
                                        {{alpha.to_poly(), b}});
  // push the form off its module along one hyperplane: add pole^b * d(alpha)
  OneForm bump = OneForm::zero(plan.datum.vars);
  for (int r = 0; r < plan.datum.rank(); ++r)
    bump.coeffs(r) = RatFunc(alpha.coeffs(r)) * pole;
  fam.forms[static_cast<size_t>(j)] += bump;
}

std::vector<json> run_tasks(std::vector<Task>& tasks, int jobs, json& elapsed_ms) {
  std::vector<json> results(tasks.size());
  std::vector<long> ms(tasks.size(), 0);
  auto work = [&](size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    results[i] = run_task(tasks[i]);
    ms[i] = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          work(i);
        }
      });
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < tasks.size(); ++i)
    elapsed_ms[results[i]["id"].get<std::string>()] = ms[i];
  return results;
}

}  // namespace

json generate_data(const std::string& type, int k_min, int k_max) {
  SuitePlan plan(type, k_min, k_max);
  const CoxeterDatum& d = plan.datum;
  json out;
  out["schema"] = kSchemaVersion;
  out["version"] = kToolVersion;
  out["type"] = d.type_string;
  out["rank"] = d.rank();
  out["vars"] = *d.vars;
  out["discriminant"] = d.discriminant;
  out["q"] = d.q_poly.to_string();
  json planes = json::array();
  for (const auto& hp : d.hyperplanes) {
    json jp;
    jp["form"] = hp.form.to_poly().to_string();
    jp["orbit"] = d.orbit_names[static_cast<size_t>(hp.orbit)];
    jp["factor"] = hp.factor;
    planes.push_back(jp);
  }
  out["hyperplanes"] = planes;
  json factors = json::array();
  for (const auto& f : d.factors) {
    json jf;
    jf["name"] = f.name;
    jf["rank"] = f.rank;
    jf["exponents"] = f.exponents;
    jf["coxeter_number"] = f.coxeter_number;
    json invs = json::array();
    for (const auto& p : f.invariants) invs.push_back(p.to_string());
    jf["invariants"] = invs;
    jf["q"] = f.q_poly.to_string();
    factors.push_back(jf);
  }
  out["factors"] = factors;
  out["primitive_derivation"] = render_field(plan.derivation.field());
  json fams = json::array();
  for (int k = k_min; k <= k_max; ++k) {
    const BasisFamily& fam = plan.ladder.at(k);
    json jf;
    jf["k"] = k;
    jf["degrees"] = fam.degrees;
    jf["kernel_dims"] = fam.kernel_dims;
    json forms = json::array(), fields = json::array();
    for (const auto& w : fam.forms) forms.push_back(render_form(w));
    for (const auto& v : fam.derivations) fields.push_back(render_field(v));
    jf["forms"] = forms;
    jf["derivations"] = fields;
    fams.push_back(jf);
  }
  out["families"] = fams;
  return out;
}

json run_suite(const SuiteConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  SuitePlan plan(cfg.type, cfg.k_min, cfg.k_max);
  const CoxeterDatum& d = plan.datum;
  const PrimitiveDerivation& D = plan.derivation;

  // commuting-diagram family certificates snapshot the verified ladder before
  // any corruption, so the negative control isolates the membership layer
  std::vector<Task> tasks;
  unsigned long stream = 0;
  auto next_seed = [&] { return cfg.seed + 0x9e3779b97f4a7c15ULL * (++stream); };

  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    const BasisFamily& fam = plan.ladder.at(k);
    Task t;
    t.cert = base_cert(cfg, d, "commuting-diagram:" + fam_id("theta", k), "commuting-diagram",
                       "const:" + std::to_string(2 * k - 1));
    json forms = json::array(), fields = json::array();
    for (const auto& w : fam.forms) forms.push_back(render_form(w));
    for (const auto& v : fam.derivations) fields.push_back(render_field(v));
    t.cert["inputs"]["k"] = k;
    t.cert["inputs"]["forms"] = forms;
    t.cert["inputs"]["derivations"] = fields;
    t.cert["notes"] = "derivation family is the metric image of the form family";
    t.complete = [&d](json& c) { check_commuting_family(d, c); };
    tasks.push_back(std::move(t));
  }

  if (!cfg.corrupt.empty()) apply_corruption(plan, cfg.corrupt, cfg.k_min, cfg.k_max);

  {
    Task t;
    t.cert = base_cert(cfg, d, "jacobian:P", "jacobian", "");
    json invs = json::array();
    for (const auto& p : d.all_invariants()) invs.push_back(p.to_string());
    t.cert["inputs"]["invariants"] = invs;
    t.cert["notes"] = "normalizations: catalog basic invariants, q = product of normalized forms";
    t.complete = [&d](json& c) {
      std::vector<MultiPoly> invariants;
      for (const json& s : c["inputs"]["invariants"])
        invariants.push_back(parse_poly(d.vars, s.get<std::string>()));
      check_jacobian_p(d, invariants, c);
    };
    tasks.push_back(std::move(t));
  }

  for (size_t fi = 0; fi < d.factors.size(); ++fi) {
    Task t;
    t.cert = base_cert(cfg, d, "jacobian:h:" + d.factors[fi].name + std::to_string(fi),
                       "jacobian", "");
    json coeffs = json::array();
    for (int v : d.factors[fi].var_indices)
      coeffs.push_back(D.factor_fields()[fi].coeffs(v).to_string());
    t.cert["inputs"]["factor"] = fi;
    t.cert["inputs"]["coefficients"] = coeffs;
    t.complete = [&d, fi](json& c) {
      std::vector<RatFunc> coeffs;
      for (const json& s : c["inputs"]["coefficients"])
        coeffs.push_back(parse_ratfunc(d.vars, s.get<std::string>()));
      check_jacobian_h(d, fi, coeffs, c);
    };
    tasks.push_back(std::move(t));
  }

  {
    Task t;
    t.cert = base_cert(cfg, d, "t-membership", "t-membership", "");
    json cases = json::array();
    for (const auto& f : d.factors)
      for (size_t j = 0; j < f.invariants.size(); ++j) {
        json c;
        c["poly"] = f.invariants[j].to_string();
        c["expected"] = j + 1 < f.invariants.size();
        cases.push_back(c);
      }
    for (size_t i = 0; i + 1 < d.factors.size(); ++i) {
      json c;
      c["poly"] = (d.factors[i + 1].invariants.back() - d.factors[i].invariants.back()).to_string();
      c["expected"] = true;
      cases.push_back(c);
    }
    t.cert["inputs"]["cases"] = cases;
    t.complete = [&d, &D](json& c) { check_t_membership(d, D, c); };
    tasks.push_back(std::move(t));
  }

  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    const BasisFamily& fam = plan.ladder.at(k);
    json forms = json::array(), fields = json::array();
    for (const auto& w : fam.forms) forms.push_back(render_form(w));
    for (const auto& v : fam.derivations) fields.push_back(render_field(v));

    Task tb;
    tb.cert = base_cert(cfg, d, "basis-criterion:" + fam_id("theta", k), "basis-criterion",
                        "const:" + std::to_string(2 * k - 1));
    tb.cert["inputs"]["side"] = "omega";
    tb.cert["inputs"]["k"] = k;
    tb.cert["inputs"]["members"] = forms;
    tb.cert["inputs"]["degrees"] = fam.degrees;
    tb.cert["inputs"]["kernel_dims"] = fam.kernel_dims;
    tb.complete = [&d](json& c) { check_basis_criterion(d, c); };
    tasks.push_back(std::move(tb));

    Task td;
    td.cert = base_cert(cfg, d, "basis-criterion:" + fam_id("xi", k), "basis-criterion",
                        "const:" + std::to_string(-2 * k + 1));
    td.cert["inputs"]["side"] = "der";
    td.cert["inputs"]["k"] = k;
    td.cert["inputs"]["members"] = fields;
    td.complete = [&d](json& c) { check_basis_criterion(d, c); };
    tasks.push_back(std::move(td));

    Task tm;
    tm.cert = base_cert(cfg, d, "membership:" + fam_id("theta", k), "membership",
                        "const:" + std::to_string(2 * k - 1));
    tm.cert["inputs"]["side"] = "omega";
    tm.cert["inputs"]["members"] = forms;
    tm.complete = [&d](json& c) { check_membership(d, c); };
    tasks.push_back(std::move(tm));

    Task tn;
    tn.cert = base_cert(cfg, d, "membership:" + fam_id("xi", k), "membership",
                        "const:" + std::to_string(-2 * k + 1));
    tn.cert["inputs"]["side"] = "der";
    tn.cert["inputs"]["members"] = fields;
    tn.complete = [&d](json& c) { check_membership(d, c); };
    tasks.push_back(std::move(tn));
  }

  {
    Task t;
    t.cert = base_cert(cfg, d, "commuting-diagram:random", "commuting-diagram", "");
    Rng rng(next_seed());
    json forms = json::array();
    for (const OneForm& w : random_rational_forms(d, 16, rng)) forms.push_back(render_form(w));
    t.cert["inputs"]["forms"] = forms;
    t.cert["notes"] = "covariant derivative then metric agrees with metric then covariant derivative";
    t.complete = [&d, &D](json& c) { check_commuting_random(d, D, c); };
    tasks.push_back(std::move(t));
  }

  {
    Task t;
    t.cert = base_cert(cfg, d, "ord-lemma", "ord-lemma", "");
    Rng rng(next_seed());
    json samples = json::array();
    for (const RatFunc& f : ord_samples(d, cfg.samples, rng)) samples.push_back(f.to_string());
    t.cert["inputs"]["samples"] = samples;
    t.complete = [&d, &D](json& c) { check_ord_lemma(d, D, c); };
    tasks.push_back(std::move(t));
  }

  std::vector<std::string> mult_specs = cfg.multiplicities;
  if (mult_specs.empty()) mult_specs.push_back("const:-1");
  for (const std::string& spec : mult_specs) {
    MultiplicityMap m = MultiplicityMap::parse(d, spec);  // validated here
    Task tf;
    tf.cert = base_cert(cfg, d, "filtration-shift:omega:" + m.description(), "filtration-shift",
                        m.description());
    Rng rng(next_seed());
    json samples = json::array();
    for (const OneForm& w : form_samples(d, plan.ladder, cfg.samples, rng))
      samples.push_back(render_form(w));
    tf.cert["inputs"]["side"] = "omega";
    tf.cert["inputs"]["samples"] = samples;
    tf.complete = [&d, &D](json& c) { check_shift(d, D, c); };
    tasks.push_back(std::move(tf));

    Task tg;
    tg.cert = base_cert(cfg, d, "filtration-shift:der:" + m.description(), "filtration-shift",
                        m.description());
    Rng rng2(next_seed());
    json dsamples = json::array();
    for (const DerivationField& v : field_samples(d, plan.ladder, cfg.samples, rng2))
      dsamples.push_back(render_field(v));
    tg.cert["inputs"]["side"] = "der";
    tg.cert["inputs"]["samples"] = dsamples;
    tg.complete = [&d, &D](json& c) { check_shift(d, D, c); };
    tasks.push_back(std::move(tg));
  }

  {
    Task t;
    t.cert = base_cert(cfg, d, "g-matrix:G", "g-matrix", "");
    t.cert["notes"] = "pairings of the invariant exterior derivatives";
    t.complete = [&d, &D](json& c) { check_g_matrix(d, D, c); };
    tasks.push_back(std::move(t));
    Task t2;
    t2.cert = base_cert(cfg, d, "g-matrix:DG", "g-matrix", "");
    t2.complete = [&d, &D](json& c) { check_dg_matrix(d, D, c); };
    tasks.push_back(std::move(t2));
  }

  for (int k = std::max(cfg.k_min, -1); k <= std::min(cfg.k_max - 1, 1); ++k) {
    Task t;
    t.cert = base_cert(cfg, d, "g-matrix:G[" + std::to_string(k) + "]", "g-matrix", "");
    json low = json::array(), high = json::array();
    for (const auto& w : plan.ladder.at(k).forms) low.push_back(render_form(w));
    for (const auto& w : plan.ladder.at(k + 1).forms) high.push_back(render_form(w));
    t.cert["inputs"]["k"] = k;
    t.cert["inputs"]["members_k"] = low;
    t.cert["inputs"]["members_k1"] = high;
    t.complete = [&d, &D](json& c) { check_g_k_matrix(d, D, c); };
    tasks.push_back(std::move(t));
  }

  json out;
  out["schema"] = kSchemaVersion;
  out["version"] = kToolVersion;
  json jc;
  jc["type"] = d.type_string;
  jc["requested_type"] = cfg.type;
  jc["k_min"] = cfg.k_min;
  jc["k_max"] = cfg.k_max;
  jc["multiplicities"] = mult_specs;
  jc["samples"] = cfg.samples;
  jc["seed"] = cfg.seed;
  jc["jobs"] = cfg.jobs;
  jc["corrupt"] = cfg.corrupt;
  out["config"] = jc;
  json elapsed = json::object();
  out["certificates"] = run_tasks(tasks, cfg.jobs, elapsed);
  out["elapsed_ms"] = elapsed;
  out["total_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return out;
}

bool suite_passed(const json& suite) {
  for (const json& c : suite.at("certificates"))
    if (!c.at("verdict").get<bool>()) return false;
  return true;
}

bool recheck_certificates(const json& suite) {
  CoxeterDatum d = build_type(suite.at("config").at("type").get<std::string>());
  PrimitiveDerivation D(d);
  for (const json& recorded : suite.at("certificates")) {
    json fresh = recorded;
    fresh["witness"] = json::object();
    fresh["verdict"] = false;
    const std::string kind = recorded.at("kind").get<std::string>();
    const std::string id = recorded.at("id").get<std::string>();
    try {
      if (kind == "jacobian" && id == "jacobian:P") {
        std::vector<MultiPoly> invariants;
        for (const json& s : fresh["inputs"]["invariants"])
          invariants.push_back(parse_poly(d.vars, s.get<std::string>()));
        check_jacobian_p(d, invariants, fresh);
      } else if (kind == "jacobian") {
        size_t fi = fresh["inputs"]["factor"].get<size_t>();
        std::vector<RatFunc> coeffs;
        for (const json& s : fresh["inputs"]["coefficients"])
          coeffs.push_back(parse_ratfunc(d.vars, s.get<std::string>()));
        check_jacobian_h(d, fi, coeffs, fresh);
      } else if (kind == "t-membership") {
        check_t_membership(d, D, fresh);
      } else if (kind == "basis-criterion") {
        check_basis_criterion(d, fresh);
      } else if (kind == "membership") {
        check_membership(d, fresh);
      } else if (kind == "commuting-diagram" && id == "commuting-diagram:random") {
        check_commuting_random(d, D, fresh);
      } else if (kind == "commuting-diagram") {
        check_commuting_family(d, fresh);
      } else if (kind == "ord-lemma") {
        check_ord_lemma(d, D, fresh);
      } else if (kind == "filtration-shift") {
        check_shift(d, D, fresh);
      } else if (kind == "g-matrix" && id == "g-matrix:G") {
        check_g_matrix(d, D, fresh);
      } else if (kind == "g-matrix" && id == "g-matrix:DG") {
        check_dg_matrix(d, D, fresh);
      } else if (kind == "g-matrix") {
        check_g_k_matrix(d, D, fresh);
      } else {
        return false;
      }
    } catch (const std::exception&) {
      fresh["verdict"] = false;
      fresh["witness"] = recorded.at("witness");  // exception path: compare verdict only
    }
    if (fresh["verdict"] != recorded.at("verdict")) return false;
    if (fresh["witness"] != recorded.at("witness")) return false;
  }
  return true;
}

std::string render_report(const json& suite, const std::string& format) {
  struct Row {
    std::string arrangement, id, kind, k, detail;
    bool verdict;
    long ms;
  };
  std::vector<Row> rows;
  for (const json& c : suite.at("certificates")) {
    Row r;
    r.arrangement = c.at("arrangement").get<std::string>();
    r.id = c.at("id").get<std::string>();
    r.kind = c.at("kind").get<std::string>();
    r.verdict = c.at("verdict").get<bool>();
    if (c.at("inputs").contains("k"))
      r.k = "k=" + std::to_string(c["inputs"]["k"].get<int>());
    const json& w = c.at("witness");
    if (w.contains("constant"))
      r.detail = "constant=" + w["constant"].get<std::string>();
    else if (w.contains("error"))
      r.detail = std::string("error: ") + w["error"].get<std::string>();
    else if (!r.verdict && c.at("kind") == "membership") {
      for (const json& m : w.value("members", json::array()))
        if (!m["verdict"].get<bool>())
          for (const json& ow : m["witnesses"])
            if (!ow["ok"].get<bool>()) {
              r.detail = m["id"].get<std::string>() + " violates " +
                         ow["check"].get<std::string>() + " at " +
                         ow["hyperplane"].get<std::string>() + ": ord " +
                         std::to_string(ow["ord"].get<int>()) + " > " +
                         std::to_string(ow["bound"].get<int>());
              break;
            }
    }
    r.ms = 0;
    const json& elapsed = suite.value("elapsed_ms", json::object());
    if (elapsed.contains(r.id)) r.ms = elapsed[r.id].get<long>();
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.verdict < b.verdict; });

  std::ostringstream out;
  if (format == "tsv") {
    out << "arrangement\tid\tkind\tk\tverdict\tdetail\tms\n";
    for (const Row& r : rows)
      out << r.arrangement << '\t' << r.id << '\t' << r.kind << '\t' << r.k << '\t'
          << (r.verdict ? "pass" : "FAIL") << '\t' << r.detail << '\t' << r.ms << '\n';
    return out.str();
  }
  out << "# verification report\n\n";
  out << "- version: " << suite.value("version", "") << "\n";
  if (suite.contains("config")) {
    out << "- arrangement: " << suite["config"].value("type", "") << "\n";
    out << "- seed: " << suite["config"].value("seed", 0UL) << "\n";
  }
  out << "- total ms: " << suite.value("total_ms", 0L) << "\n\n";
  out << "## checks\n\n";
  out << "| arrangement | check | k | verdict | detail |\n";
  out << "|---|---|---|---|---|\n";
  for (const Row& r : rows)
    out << "| " << r.arrangement << " | " << r.id << " | " << r.k << " | "
        << (r.verdict ? "pass" : "**FAIL**") << " | " << r.detail << " |\n";
  out << "\n## membership orders\n\n";
  for (const json& c : suite.at("certificates")) {
    if (c.at("kind") != "membership") continue;
    out << "### " << c.at("id").get<std::string>() << " (multiplicity "
        << c.at("multiplicity").get<std::string>() << ")\n\n";
    out << "| member | hyperplane | check | ord | bound | ok |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const json& m : c.at("witness").value("members", json::array()))
      for (const json& w : m["witnesses"])
        out << "| " << m["id"].get<std::string>() << " | " << w["hyperplane"].get<std::string>()
            << " | " << w["check"].get<std::string>() << " | "
            << (w["zero"].get<bool>() ? std::string("zero") : std::to_string(w["ord"].get<int>()))
            << " | " << w["bound"].get<int>() << " | " << (w["ok"].get<bool>() ? "yes" : "NO")
            << " |\n";
    out << "\n";
  }
  out << "## timing\n\n| check | ms |\n|---|---|\n";
  for (const Row& r : rows) out << "| " << r.id << " | " << r.ms << " |\n";
  return out.str();
}

namespace {

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::fprintf(stderr, "cannot write %s\n", path.c_str());
    return 1;
  }
  f << text;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact certification of logarithmic form and derivation modules "
               "over Coxeter arrangements"};
  app.require_subcommand(1);

  std::string type = "A1", out_path, certs_path, format = "markdown", corrupt;
  int k_min = -1, k_max = 2, samples = 8, jobs = 1;
  unsigned long seed = 42;
  std::vector<std::string> mults;

  CLI::App* gen = app.add_subcommand("generate", "write the basis families as JSON");
  gen->add_option("--type", type, "arrangement, e.g. B2 or A1xB2");
  gen->add_option("--k-min", k_min, "lowest family level");
  gen->add_option("--k-max", k_max, "highest family level");
  gen->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* ver = app.add_subcommand("verify", "run the full certificate suite");
  ver->add_option("--type", type, "arrangement, e.g. B2 or A1xB2");
  ver->add_option("--k-min", k_min, "lowest family level");
  ver->add_option("--k-max", k_max, "highest family level");
  ver->add_option("--multiplicity", mults,
                  "filtration-shift multiplicity spec (repeatable), e.g. const:-1 or "
                  "orbit:long=1,short=-1");
  ver->add_option("--samples", samples, "random samples per randomized check");
  ver->add_option("--seed", seed, "random seed recorded in certificates");
  ver->add_option("--jobs", jobs, "worker threads");
  ver->add_option("--out", out_path, "certificate output path (default stdout)");
  ver->add_option("--corrupt", corrupt, "negative control: k,form,hyperplane");

  CLI::App* rep = app.add_subcommand("report", "render certificates as a table");
  rep->add_option("--certs", certs_path, "certificate JSON from verify")->required();
  rep->add_option("--format", format, "markdown or tsv");
  rep->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    if (k_min > k_max) {
      std::fprintf(stderr, "empty level range\n");
      return 2;
    }
    try {
      return write_output(out_path, generate_data(type, k_min, k_max).dump(2) + "\n");
    } catch (const std::exception& e) {
      std::fprintf(stderr, "generation failed: %s\n", e.what());
      return 1;
    }
  }

  if (ver->parsed()) {
    SuiteConfig cfg;
    cfg.type = type;
    cfg.k_min = k_min;
    cfg.k_max = k_max;
    cfg.multiplicities = mults;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.corrupt = corrupt;
    if (k_min > k_max || k_min < -5 || k_max > 5 || samples < 1 || samples > 64 ||
        jobs < 1 || jobs > 32) {
      std::fprintf(stderr, "config out of range\n");
      return 2;
    }
    // config errors (bad type, bad multiplicity, bad corrupt target) exit 2
    try {
      CoxeterDatum d = build_type(cfg.type);
      for (const std::string& spec : cfg.multiplicities) MultiplicityMap::parse(d, spec);
      if (!cfg.corrupt.empty()) parse_corrupt_spec(cfg.corrupt, d, cfg.k_min, cfg.k_max);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return 2;
    }
    json suite;
    try {
      suite = run_suite(cfg);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "suite failed to complete: %s\n", e.what());
      return 1;
    }
    int wr = write_output(out_path, suite.dump(2) + "\n");
    if (wr != 0) return wr;
    if (!suite_passed(suite)) {
      std::fprintf(stderr, "verification FAILED\n");
      return 1;
    }
    return 0;
  }

  // report
  std::ifstream f(certs_path);
  if (!f) {
    std::fprintf(stderr, "cannot read %s\n", certs_path.c_str());
    return 2;
  }
  json suite;
  try {
    suite = json::parse(f);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "malformed certificates: %s\n", e.what());
    return 2;
  }
  if (format != "markdown" && format != "tsv") {
    std::fprintf(stderr, "format must be markdown or tsv\n");
    return 2;
  }
  try {
    return write_output(out_path, render_report(suite, format));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "malformed certificates: %s\n", e.what());
    return 2;
  }
}

}  // namespace coxlog
