#include "coxlog/poly.hpp"

#include <algorithm>
#include <sstream>

namespace coxlog {

VarsPtr make_vars(std::initializer_list<const char*> names) {
  VarList v;
  v.reserve(names.size());
  for (const char* n : names) v.emplace_back(n);
  return make_vars(std::move(v));
}

VarsPtr make_vars(VarList names) {
  if (names.size() > static_cast<size_t>(kMaxVars))
    throw error("make_vars: more than " + std::to_string(kMaxVars) + " variables");
  return std::make_shared<const VarList>(std::move(names));
}

bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Mono::Mono(const std::vector<unsigned>& exps) {
  if (exps.size() > static_cast<size_t>(kMaxVars))
    throw error("Mono: too many variables");
  unsigned d = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0xffffu) throw error("Mono: exponent overflow");
    e_[i] = static_cast<uint16_t>(exps[i]);
    d += exps[i];
  }
  if (d > 0xffffu) throw error("Mono: degree overflow");
  deg_ = static_cast<uint16_t>(d);
}

Mono Mono::with_exp(int i, unsigned v) const {
  if (v > 0xffffu) throw error("Mono: exponent overflow");
  Mono r(*this);
  unsigned d = deg_ - e_[static_cast<size_t>(i)] + v;
  if (d > 0xffffu) throw error("Mono: degree overflow");
  r.e_[static_cast<size_t>(i)] = static_cast<uint16_t>(v);
  r.deg_ = static_cast<uint16_t>(d);
  return r;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  unsigned d = static_cast<unsigned>(deg_) + o.deg_;
  if (d > 0xffffu) throw error("Mono: degree overflow");
  for (size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<uint16_t>(e_[i] + o.e_[i]);
  r.deg_ = static_cast<uint16_t>(d);
  return r;
}

bool Mono::divisible_by(const Mono& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] < o.e_[i]) return false;
  return true;
}

std::optional<Mono> Mono::divide(const Mono& o) const {
  if (!divisible_by(o)) return std::nullopt;
  Mono r;
  for (size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<uint16_t>(e_[i] - o.e_[i]);
  r.deg_ = static_cast<uint16_t>(deg_ - o.deg_);
  return r;
}

bool Mono::grlex_greater(const Mono& a, const Mono& b) {
  if (a.deg_ != b.deg_) return a.deg_ > b.deg_;
  return a.e_ > b.e_;
}

MultiPoly::MultiPoly(const QuadScalar& c) {
  if (!c.is_zero()) terms_.emplace(Mono(), c);
}

MultiPoly MultiPoly::zero(VarsPtr vars) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  return p;
}

MultiPoly MultiPoly::constant(VarsPtr vars, const QuadScalar& c) {
  MultiPoly p = zero(std::move(vars));
  if (!c.is_zero()) p.terms_.emplace(Mono(), c);
  return p;
}

MultiPoly MultiPoly::variable(VarsPtr vars, int index) {
  if (!vars || index < 0 || index >= static_cast<int>(vars->size()))
    throw error("MultiPoly::variable: index out of range");
  MultiPoly p = zero(std::move(vars));
  p.terms_.emplace(Mono().with_exp(index, 1), QuadScalar(1));
  return p;
}

MultiPoly MultiPoly::from_terms(VarsPtr vars, TermMap terms) {
  MultiPoly p = zero(std::move(vars));
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
  p.terms_ = std::move(terms);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_constant() &&
         terms_.begin()->second.is_one();
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.total_degree());
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.total_degree();
  for (const auto& [m, c] : terms_)
    if (m.total_degree() != d) return false;
  return true;
}

QuadScalar MultiPoly::constant_term() const { return coeff(Mono()); }

QuadScalar MultiPoly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QuadScalar(0) : it->second;
}

const Mono& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw error("MultiPoly: leading term of zero");
  return terms_.begin()->first;
}

const QuadScalar& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw error("MultiPoly: leading term of zero");
  return terms_.begin()->second;
}

void MultiPoly::check_mixable(const MultiPoly& o) const {
  if (vars_ && o.vars_ && !same_vars(vars_, o.vars_))
    throw error("MultiPoly: variable-list mismatch");
}

void MultiPoly::adopt_vars(const MultiPoly& o) {
  if (!vars_ && o.vars_) vars_ = o.vars_;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_mixable(o);
  adopt_vars(o);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_mixable(o);
  adopt_vars(o);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& o) {
  a.check_mixable(o);
  MultiPoly r = MultiPoly::zero(a.vars_ ? a.vars_ : o.vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      QuadScalar c = ca * cb;
      if (c.is_zero()) continue;
      Mono m = ma * mb;
      auto [it, inserted] = r.terms_.emplace(m, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::scale(const QuadScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::scaled(const QuadScalar& c) const {
  MultiPoly r(*this);
  r.scale(c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = vars_ ? constant(vars_, QuadScalar(1)) : MultiPoly(QuadScalar(1));
  MultiPoly base(*this);
  while (e > 0) {
    if (e & 1) acc *= base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
  return true;
}

MultiPoly MultiPoly::partial_derivative(int var) const {
  // a var-less constant is differentiable in any ring it can mix into
  if (var < 0 || (vars_ ? var >= num_vars() : var >= kMaxVars))
    throw error("partial_derivative: variable index out of range");
  MultiPoly r = zero(vars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exp(var);
    if (e == 0) continue;
    r.terms_.emplace(m.with_exp(var, e - 1), c * QuadScalar(static_cast<long>(e)));
  }
  return r;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
  check_mixable(divisor);
  if (divisor.is_zero()) throw error("divide_exact: division by zero polynomial");
  if (is_zero()) return zero(vars_ ? vars_ : divisor.vars_);
  if (divisor.is_constant())
    return scaled(divisor.leading_coeff().inverse());
  MultiPoly r(*this);
  r.adopt_vars(divisor);
  MultiPoly q = zero(r.vars_);
  const Mono& dm = divisor.leading_monomial();
  const QuadScalar& dc = divisor.leading_coeff();
  while (!r.is_zero()) {
    auto qm = r.leading_monomial().divide(dm);
    if (!qm) return std::nullopt;
    QuadScalar qc = r.leading_coeff() / dc;
    MultiPoly t = zero(q.vars_);
    t.terms_.emplace(*qm, qc);
    q += t;
    r -= t * divisor;
  }
  return q;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != num_vars())
    throw error("substitute: image count != variable count");
  if (is_zero()) return images.empty() ? MultiPoly() : zero(images[0].vars());
  VarsPtr tvars;
  for (const auto& im : images) {
    if (!im.vars()) continue;
    if (!tvars)
      tvars = im.vars();
    else if (!same_vars(tvars, im.vars()))
      throw error("substitute: images disagree on variables");
  }

  // Horner over variable v with sub-polynomials substituted recursively.
  struct Rec {
    const std::vector<MultiPoly>& images;
    VarsPtr tvars;
    int nvars;
    MultiPoly run(const TermMap& terms, int v) const {
      if (terms.empty()) return MultiPoly::zero(tvars);
      if (v == nvars) {
        // Only the constant monomial can remain.
        return MultiPoly::constant(tvars, terms.begin()->second);
      }
      // Group by the exponent of variable v, descending.
      std::map<unsigned, TermMap, std::greater<>> groups;
      for (const auto& [m, c] : terms)
        groups[m.exp(v)].emplace(m.with_exp(v, 0), c);
      MultiPoly acc = MultiPoly::zero(tvars);
      unsigned prev = groups.begin()->first;
      bool first = true;
      for (const auto& [e, sub] : groups) {
        if (!first)
          for (unsigned i = 0; i < prev - e; ++i) acc *= images[static_cast<size_t>(v)];
        acc += run(sub, v + 1);
        prev = e;
        first = false;
      }
      for (unsigned i = 0; i < prev; ++i) acc *= images[static_cast<size_t>(v)];
      return acc;
    }
  };
  Rec rec{images, tvars, num_vars()};
  return rec.run(terms_, 0);
}

MultiPoly MultiPoly::embed(VarsPtr new_vars, const std::vector<int>& var_map) const {
  if (static_cast<int>(var_map.size()) != num_vars())
    throw error("embed: variable map size mismatch");
  MultiPoly r = zero(std::move(new_vars));
  int nv = r.num_vars();
  for (const auto& [m, c] : terms_) {
    Mono t;
    for (int i = 0; i < num_vars(); ++i) {
      unsigned e = m.exp(i);
      if (e == 0) continue;
      int j = var_map[static_cast<size_t>(i)];
      if (j < 0 || j >= nv) throw error("embed: target index out of range");
      t = t.with_exp(j, t.exp(j) + e);
    }
    r.terms_.emplace(t, c);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    int s = c.sign();
    QuadScalar mag = s < 0 ? -c : c;
    if (first)
      out << (s < 0 ? "-" : "");
    else
      out << (s < 0 ? " - " : " + ");
    first = false;
    std::string cs = mag.to_string();
    bool composite = !mag.is_rational() && sgn(mag.rat_part()) != 0;
    if (composite) cs = "(" + cs + ")";
    if (m.is_constant()) {
      out << cs;
      continue;
    }
    bool wrote = false;
    if (!mag.is_one()) {
      out << cs;
      wrote = true;
    }
    for (int i = 0; i < num_vars(); ++i) {
      unsigned e = m.exp(i);
      if (e == 0) continue;
      if (wrote) out << "*";
      out << (*vars_)[static_cast<size_t>(i)];
      if (e > 1) out << "^" << e;
      wrote = true;
    }
  }
  return out.str();
}

namespace {

// p as a univariate polynomial in variable v with MultiPoly coefficients.
std::vector<MultiPoly> univar_coeffs(const MultiPoly& p, int v) {
  int d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, static_cast<int>(m.exp(v)));
  std::vector<MultiPoly> out(static_cast<size_t>(d) + 1, MultiPoly::zero(p.vars()));
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t = MultiPoly::from_terms(p.vars(), {{m.with_exp(v, 0), c}});
    out[m.exp(v)] += t;
  }
  return out;
}

MultiPoly from_univar(const std::vector<MultiPoly>& coeffs, int v, const VarsPtr& vars) {
  MultiPoly x = MultiPoly::variable(vars, v);
  MultiPoly acc = MultiPoly::zero(vars);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

MultiPoly make_monic(MultiPoly p) {
  if (p.is_zero()) return p;
  p.scale(p.leading_coeff().inverse());
  return p;
}

int main_variable(const MultiPoly& a, const MultiPoly& b) {
  // First variable occurring in both; else first occurring in either.
  int nv = std::max(a.num_vars(), b.num_vars());
  auto occurs = [](const MultiPoly& p, int v) {
    for (const auto& [m, c] : p.terms())
      if (m.exp(v) > 0) return true;
    return false;
  };
  for (int v = 0; v < nv; ++v)
    if (occurs(a, v) && occurs(b, v)) return v;
  for (int v = 0; v < nv; ++v)
    if (occurs(a, v) || occurs(b, v)) return v;
  return -1;
}

int univar_degree(const std::vector<MultiPoly>& c) {
  return static_cast<int>(c.size()) - 1;
}

// Pseudo-remainder of a by b in variable v, both as coefficient vectors.
// Result degree < deg b; primitive part is taken by the caller.
std::vector<MultiPoly> pseudo_rem(std::vector<MultiPoly> a,
                                  const std::vector<MultiPoly>& b) {
  const MultiPoly& lb = b.back();
  while (univar_degree(a) >= univar_degree(b) && !(a.back().is_zero() && a.size() == 1)) {
    int da = univar_degree(a);
    int db = univar_degree(b);
    MultiPoly la = a.back();
    for (int i = 0; i <= da; ++i) a[static_cast<size_t>(i)] *= lb;
    for (int i = 0; i <= db; ++i)
      a[static_cast<size_t>(i + da - db)] -= la * b[static_cast<size_t>(i)];
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
    if (a.size() == 1 && a[0].is_zero()) break;
  }
  return a;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) {
    VarsPtr vars = a.vars() ? a.vars() : b.vars();
    return vars ? MultiPoly::constant(vars, QuadScalar(1)) : MultiPoly(QuadScalar(1));
  }

  int v = main_variable(a, b);
  auto ca = univar_coeffs(a, v);
  auto cb = univar_coeffs(b, v);

  // Contents with respect to v.
  auto content_of = [](const std::vector<MultiPoly>& c) {
    MultiPoly g;
    for (const auto& p : c) g = poly_gcd(g, p);
    return g;
  };
  MultiPoly cont_a = content_of(ca);
  MultiPoly cont_b = content_of(cb);
  auto strip = [](std::vector<MultiPoly>& c, const MultiPoly& g) {
    for (auto& p : c) {
      auto q = p.divide_exact(g);
      if (!q) throw error("poly_gcd: content division failed");
      p = *q;
    }
  };
  strip(ca, cont_a);
  strip(cb, cont_b);

  // Primitive PRS on the primitive parts.
  if (univar_degree(ca) < univar_degree(cb)) std::swap(ca, cb);
  while (true) {
    if (cb.size() == 1 && cb[0].is_zero()) break;
    if (univar_degree(cb) == 0) {
      // Nonzero element of the coefficient ring: both sides are primitive in
      // v, so their gcd has no v-part left.
      ca = {MultiPoly::constant(a.vars() ? a.vars() : b.vars(), QuadScalar(1))};
      break;
    }
    auto r = pseudo_rem(ca, cb);
    MultiPoly cr = content_of(r);
    if (!(r.size() == 1 && r[0].is_zero())) strip(r, cr);
    ca = std::move(cb);
    cb = std::move(r);
  }

  VarsPtr vars = a.vars() ? a.vars() : b.vars();
  MultiPoly gv = from_univar(ca, v, vars);
  MultiPoly g = poly_gcd(cont_a, cont_b) * gv;
  return make_monic(g);
}

bool vanishes_on_sample(const MultiPoly& p, const MultiPoly& f) {
  if (f.degree() != 1 || !f.is_homogeneous()) return true;
  const VarsPtr& vars = p.vars();
  if (!vars) return true;
  const int n = static_cast<int>(vars->size());
  int lead = -1;
  std::vector<QuadScalar> point(static_cast<size_t>(n), QuadScalar(0));
  QuadScalar lead_coeff;
  for (int i = 0; i < n; ++i) {
    QuadScalar c = f.coeff(Mono().with_exp(i, 1));
    if (lead < 0 && !c.is_zero()) {
      lead = i;
      lead_coeff = c;
    } else {
      point[static_cast<size_t>(i)] = QuadScalar(i + 2);
    }
  }
  if (lead < 0) return true;
  QuadScalar acc(0);
  for (int i = 0; i < n; ++i)
    if (i != lead)
      acc += f.coeff(Mono().with_exp(i, 1)) * point[static_cast<size_t>(i)];
  point[static_cast<size_t>(lead)] = -acc / lead_coeff;

  // per-variable power tables up to the needed exponent
  std::vector<std::vector<QuadScalar>> pows(static_cast<size_t>(n));
  for (const auto& [m, c] : p.terms()) {
    (void)c;
    for (int i = 0; i < n; ++i) {
      auto& tab = pows[static_cast<size_t>(i)];
      unsigned e = m.exp(i);
      if (tab.empty()) tab.push_back(QuadScalar(1));
      while (tab.size() <= e) tab.push_back(tab.back() * point[static_cast<size_t>(i)]);
    }
  }
  QuadScalar value(0);
  for (const auto& [m, c] : p.terms()) {
    QuadScalar term = c;
    for (int i = 0; i < n; ++i) {
      unsigned e = m.exp(i);
      if (e) term *= pows[static_cast<size_t>(i)][e];
    }
    value += term;
  }
  return value.is_zero();
}

int factor_multiplicity(const MultiPoly& p, const MultiPoly& factor) {
  if (p.is_zero()) throw error("factor_multiplicity: zero polynomial");
  if (factor.is_constant()) throw error("factor_multiplicity: constant factor");
  int k = 0;
  MultiPoly cur = p;
  while (true) {
    if (!vanishes_on_sample(cur, factor)) return k;
    auto q = cur.divide_exact(factor);
    if (!q) return k;
    cur = std::move(*q);
    ++k;
  }
}

}  // namespace coxlog
