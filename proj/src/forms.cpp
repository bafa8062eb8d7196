#include "coxlog/forms.hpp"

#include <sstream>

namespace coxlog {

namespace {

void check_same_vars(const VarsPtr& a, const VarsPtr& b, const char* what) {
  if (!same_vars(a, b)) throw error(std::string(what) + ": variable-list mismatch");
}

VecX<RatFunc> zero_coeffs(const VarsPtr& vars) {
  VecX<RatFunc> c(static_cast<int>(vars->size()));
  for (int i = 0; i < c.size(); ++i) c(i) = RatFunc(MultiPoly::zero(vars));
  return c;
}

bool coeffs_polynomial(const VecX<RatFunc>& c) {
  for (int i = 0; i < c.size(); ++i)
    if (!c(i).is_polynomial()) return false;
  return true;
}

std::optional<int> coeffs_degree(const VecX<RatFunc>& c, int shift) {
  std::optional<int> deg;
  for (int i = 0; i < c.size(); ++i) {
    if (c(i).is_zero()) continue;
    auto d = c(i).homogeneous_degree();
    if (!d) return std::nullopt;
    if (deg && *deg != *d + shift) return std::nullopt;
    deg = *d + shift;
  }
  return deg;
}

std::string coeffs_to_string(const VecX<RatFunc>& c, const VarsPtr& vars,
                             const char* symbol_prefix, const char* symbol_suffix) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < c.size(); ++i) {
    if (c(i).is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << c(i).to_string() << ")*" << symbol_prefix
        << (*vars)[static_cast<size_t>(i)] << symbol_suffix;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace

MultiPoly LinearForm::to_poly() const {
  MultiPoly p = MultiPoly::zero(vars);
  for (int i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i).is_zero()) continue;
    p += MultiPoly::variable(vars, i).scaled(coeffs(i));
  }
  return p;
}

bool LinearForm::is_zero() const {
  for (int i = 0; i < coeffs.size(); ++i)
    if (!coeffs(i).is_zero()) return false;
  return true;
}

LinearForm LinearForm::normalized() const {
  for (int i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i).is_zero()) continue;
    LinearForm r{vars, coeffs};
    QuadScalar inv = coeffs(i).inverse();
    for (int j = 0; j < coeffs.size(); ++j) r.coeffs(j) = coeffs(j) * inv;
    return r;
  }
  throw error("LinearForm: cannot normalize the zero form");
}

bool operator==(const LinearForm& a, const LinearForm& b) {
  if (!same_vars(a.vars, b.vars) || a.coeffs.size() != b.coeffs.size()) return false;
  for (int i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs(i) != b.coeffs(i)) return false;
  return true;
}

LinearForm linear_form_from_poly(const MultiPoly& p) {
  if (p.is_zero() || p.degree() != 1 || !p.is_homogeneous())
    throw error("linear_form_from_poly: not a homogeneous linear polynomial");
  LinearForm f;
  f.vars = p.vars();
  f.coeffs = VecX<QuadScalar>(p.num_vars());
  for (int i = 0; i < p.num_vars(); ++i)
    f.coeffs(i) = p.coeff(Mono().with_exp(i, 1));
  return f;
}

Metric::Metric(VarsPtr vars, MatX<QuadScalar> inverse_gram)
    : vars_(std::move(vars)), inverse_gram_(std::move(inverse_gram)) {
  const int n = static_cast<int>(inverse_gram_.rows());
  if (inverse_gram_.cols() != n) throw error("Metric: matrix not square");
  if (!vars_ || static_cast<int>(vars_->size()) != n)
    throw error("Metric: dimension does not match the variable list");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (inverse_gram_(i, j) != inverse_gram_(j, i))
        throw error("Metric: inverse_gram not symmetric");
  // Positive definiteness via leading principal minors.
  for (int k = 1; k <= n; ++k) {
    MatX<QuadScalar> lead = inverse_gram_.topLeftCorner(k, k);
    if (bareiss_det(std::move(lead)).sign() <= 0)
      throw error("Metric: inverse_gram not positive definite");
  }
  gram_ = field_inverse(inverse_gram_);
}

QuadScalar Metric::pair_forms(const LinearForm& a, const LinearForm& b) const {
  check_same_vars(vars_, a.vars, "Metric::pair_forms");
  check_same_vars(vars_, b.vars, "Metric::pair_forms");
  QuadScalar acc(0);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) acc += a.coeffs(i) * inverse_gram_(i, j) * b.coeffs(j);
  return acc;
}

OneForm OneForm::zero(const VarsPtr& vars) { return OneForm{vars, zero_coeffs(vars)}; }

bool OneForm::is_zero() const {
  for (int i = 0; i < coeffs.size(); ++i)
    if (!coeffs(i).is_zero()) return false;
  return true;
}

bool OneForm::is_polynomial() const { return coeffs_polynomial(coeffs); }

OneForm OneForm::operator-() const {
  OneForm r(*this);
  for (int i = 0; i < r.coeffs.size(); ++i) r.coeffs(i) = -r.coeffs(i);
  return r;
}

OneForm& OneForm::operator+=(const OneForm& o) {
  check_same_vars(vars, o.vars, "OneForm");
  for (int i = 0; i < coeffs.size(); ++i) coeffs(i) += o.coeffs(i);
  return *this;
}

OneForm operator-(OneForm a, const OneForm& b) { return a += -b; }

OneForm OneForm::scaled(const RatFunc& f) const {
  OneForm r(*this);
  for (int i = 0; i < r.coeffs.size(); ++i) r.coeffs(i) = r.coeffs(i) * f;
  return r;
}

bool operator==(const OneForm& a, const OneForm& b) {
  if (!same_vars(a.vars, b.vars) || a.coeffs.size() != b.coeffs.size()) return false;
  for (int i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs(i) != b.coeffs(i)) return false;
  return true;
}

std::optional<int> OneForm::homogeneous_degree() const { return coeffs_degree(coeffs, 0); }

std::string OneForm::to_string() const {
  return coeffs_to_string(coeffs, vars, "d", "");
}

DerivationField DerivationField::zero(const VarsPtr& vars) {
  return DerivationField{vars, zero_coeffs(vars)};
}

bool DerivationField::is_zero() const {
  for (int i = 0; i < coeffs.size(); ++i)
    if (!coeffs(i).is_zero()) return false;
  return true;
}

bool DerivationField::is_polynomial() const { return coeffs_polynomial(coeffs); }

DerivationField DerivationField::operator-() const {
  DerivationField r(*this);
  for (int i = 0; i < r.coeffs.size(); ++i) r.coeffs(i) = -r.coeffs(i);
  return r;
}

DerivationField& DerivationField::operator+=(const DerivationField& o) {
  check_same_vars(vars, o.vars, "DerivationField");
  for (int i = 0; i < coeffs.size(); ++i) coeffs(i) += o.coeffs(i);
  return *this;
}

DerivationField operator-(DerivationField a, const DerivationField& b) { return a += -b; }

DerivationField DerivationField::scaled(const RatFunc& f) const {
  DerivationField r(*this);
  for (int i = 0; i < r.coeffs.size(); ++i) r.coeffs(i) = r.coeffs(i) * f;
  return r;
}

bool operator==(const DerivationField& a, const DerivationField& b) {
  if (!same_vars(a.vars, b.vars) || a.coeffs.size() != b.coeffs.size()) return false;
  for (int i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs(i) != b.coeffs(i)) return false;
  return true;
}

std::optional<int> DerivationField::homogeneous_degree() const {
  return coeffs_degree(coeffs, 0);
}

std::string DerivationField::to_string() const {
  return coeffs_to_string(coeffs, vars, "D[", "]");
}

OneForm exterior_derivative(const RatFunc& f, const VarsPtr& vars) {
  OneForm w = OneForm::zero(vars);
  for (int i = 0; i < w.coeffs.size(); ++i) w.coeffs(i) = f.partial_derivative(i);
  return w;
}

OneForm exterior_derivative(const MultiPoly& p) {
  if (!p.vars()) throw error("exterior_derivative: unbound polynomial");
  return exterior_derivative(RatFunc(p), p.vars());
}

RatFunc istar_pairing(const Metric& g, const OneForm& a, const OneForm& b) {
  check_same_vars(g.vars(), a.vars, "istar_pairing");
  check_same_vars(g.vars(), b.vars, "istar_pairing");
  RatFunc acc(MultiPoly::zero(g.vars()));
  for (int i = 0; i < g.dim(); ++i) {
    if (a.coeffs(i).is_zero()) continue;
    for (int j = 0; j < g.dim(); ++j) {
      const QuadScalar& gij = g.inverse_gram()(i, j);
      if (gij.is_zero() || b.coeffs(j).is_zero()) continue;
      acc += a.coeffs(i) * b.coeffs(j) * RatFunc(gij);
    }
  }
  return acc;
}

DerivationField istar_map(const Metric& g, const OneForm& a) {
  check_same_vars(g.vars(), a.vars, "istar_map");
  DerivationField v = DerivationField::zero(a.vars);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      const QuadScalar& gij = g.inverse_gram()(i, j);
      if (gij.is_zero() || a.coeffs(j).is_zero()) continue;
      v.coeffs(i) += a.coeffs(j) * RatFunc(gij);
    }
  return v;
}

OneForm istar_inverse(const Metric& g, const DerivationField& v) {
  check_same_vars(g.vars(), v.vars, "istar_inverse");
  OneForm w = OneForm::zero(v.vars);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      const QuadScalar& gij = g.gram()(i, j);
      if (gij.is_zero() || v.coeffs(j).is_zero()) continue;
      w.coeffs(i) += v.coeffs(j) * RatFunc(gij);
    }
  return w;
}

RatFunc apply_derivation(const DerivationField& xi, const RatFunc& f) {
  RatFunc acc(MultiPoly::zero(xi.vars));
  for (int i = 0; i < xi.coeffs.size(); ++i) {
    if (xi.coeffs(i).is_zero()) continue;
    RatFunc df = f.partial_derivative(i);
    if (df.is_zero()) continue;
    acc += xi.coeffs(i) * df;
  }
  return acc;
}

RatFunc apply_derivation(const DerivationField& xi, const MultiPoly& f) {
  return apply_derivation(xi, RatFunc(f));
}

RatFunc apply_derivation(const DerivationField& xi, const LinearForm& alpha) {
  check_same_vars(xi.vars, alpha.vars, "apply_derivation");
  RatFunc acc(MultiPoly::zero(xi.vars));
  for (int i = 0; i < xi.coeffs.size(); ++i) {
    if (alpha.coeffs(i).is_zero() || xi.coeffs(i).is_zero()) continue;
    acc += xi.coeffs(i) * RatFunc(alpha.coeffs(i));
  }
  return acc;
}

RatFunc wedge_top(const std::vector<OneForm>& forms) {
  if (forms.empty()) throw error("wedge_top: no forms");
  const VarsPtr& vars = forms[0].vars;
  const int n = static_cast<int>(vars->size());
  if (static_cast<int>(forms.size()) != n)
    throw error("wedge_top: need exactly dim-many forms");
  MatX<RatFunc> M(n, n);
  for (int j = 0; j < n; ++j) {
    check_same_vars(vars, forms[static_cast<size_t>(j)].vars, "wedge_top");
    for (int i = 0; i < n; ++i) M(i, j) = forms[static_cast<size_t>(j)].coeffs(i);
  }
  return ratfunc_matrix_det(M);
}

OneForm nabla_on_form(const DerivationField& D, const OneForm& w) {
  check_same_vars(D.vars, w.vars, "nabla_on_form");
  OneForm r = OneForm::zero(w.vars);
  for (int i = 0; i < w.coeffs.size(); ++i) {
    if (w.coeffs(i).is_zero()) continue;
    r.coeffs(i) = apply_derivation(D, w.coeffs(i));
  }
  return r;
}

DerivationField nabla_on_derivation(const DerivationField& D, const DerivationField& v) {
  check_same_vars(D.vars, v.vars, "nabla_on_derivation");
  DerivationField r = DerivationField::zero(v.vars);
  for (int i = 0; i < v.coeffs.size(); ++i) {
    if (v.coeffs(i).is_zero()) continue;
    r.coeffs(i) = apply_derivation(D, v.coeffs(i));
  }
  return r;
}

Reflection::Reflection(const Metric& g, const LinearForm& alpha) : vars_(alpha.vars) {
  check_same_vars(g.vars(), alpha.vars, "Reflection");
  const int n = g.dim();
  QuadScalar aa = g.pair_forms(alpha, alpha);
  if (aa.is_zero()) throw error("Reflection: isotropic root");
  // I*(alpha, x_j) = (alpha^T . inverse_gram)_j
  VecX<QuadScalar> pair(n);
  for (int j = 0; j < n; ++j) {
    QuadScalar acc(0);
    for (int i = 0; i < n; ++i) acc += alpha.coeffs(i) * g.inverse_gram()(i, j);
    pair(j) = acc;
  }
  mat_ = MatX<QuadScalar>(n, n);
  for (int j = 0; j < n; ++j) {
    QuadScalar c = QuadScalar(2) * pair(j) / aa;
    // s(x_j) = x_j - c * alpha, row j of mat_.
    for (int k = 0; k < n; ++k) {
      mat_(j, k) = (j == k ? QuadScalar(1) : QuadScalar(0)) - c * alpha.coeffs(k);
    }
  }
  images_.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    MultiPoly img = MultiPoly::zero(vars_);
    for (int k = 0; k < n; ++k) {
      if (mat_(j, k).is_zero()) continue;
      img += MultiPoly::variable(vars_, k).scaled(mat_(j, k));
    }
    images_.push_back(std::move(img));
  }
}

MultiPoly Reflection::operator()(const MultiPoly& p) const {
  if (!p.vars()) return p;
  check_same_vars(vars_, p.vars(), "Reflection");
  return p.substitute(images_);
}

RatFunc Reflection::operator()(const RatFunc& f) const {
  if (f.is_polynomial()) {
    RatFunc r((*this)(f.num()));
    return r;
  }
  MultiPoly num = (*this)(f.num());
  if (f.factors_known()) {
    RatFunc::Factors reflected;
    reflected.reserve(f.den_factors().size());
    for (const auto& [fac, e] : f.den_factors()) reflected.emplace_back((*this)(fac), e);
    return RatFunc::from_factored(std::move(num), reflected);
  }
  return RatFunc(std::move(num), (*this)(f.den()));
}

OneForm Reflection::operator()(const OneForm& w) const {
  check_same_vars(vars_, w.vars, "Reflection");
  OneForm r = OneForm::zero(w.vars);
  // s(sum f_i dx_i) = sum s(f_i) d(s x_i); coefficient of dx_j picks mat_(i,j).
  for (int i = 0; i < w.coeffs.size(); ++i) {
    if (w.coeffs(i).is_zero()) continue;
    RatFunc sf = (*this)(w.coeffs(i));
    for (int j = 0; j < w.coeffs.size(); ++j) {
      if (mat_(i, j).is_zero()) continue;
      r.coeffs(j) += sf * RatFunc(mat_(i, j));
    }
  }
  return r;
}

DerivationField Reflection::operator()(const DerivationField& v) const {
  check_same_vars(vars_, v.vars, "Reflection");
  DerivationField r = DerivationField::zero(v.vars);
  // s(sum h_i d/dx_i)(f) = sum_j [sum_i s(h_i) mat_(j,i)] df/dx_j for an
  // involution: d/dx_i transforms through the transpose.
  for (int i = 0; i < v.coeffs.size(); ++i) {
    if (v.coeffs(i).is_zero()) continue;
    RatFunc sh = (*this)(v.coeffs(i));
    for (int j = 0; j < v.coeffs.size(); ++j) {
      if (mat_(j, i).is_zero()) continue;
      r.coeffs(j) += sh * RatFunc(mat_(j, i));
    }
  }
  return r;
}

LinearForm Reflection::operator()(const LinearForm& a) const {
  check_same_vars(vars_, a.vars, "Reflection");
  // Same transformation as a 1-form with constant coefficients.
  LinearForm r;
  r.vars = a.vars;
  r.coeffs = VecX<QuadScalar>(a.coeffs.size());
  for (int j = 0; j < a.coeffs.size(); ++j) {
    QuadScalar acc(0);
    for (int i = 0; i < a.coeffs.size(); ++i) acc += a.coeffs(i) * mat_(i, j);
    r.coeffs(j) = acc;
  }
  return r;
}

}  // namespace coxlog
