#include "coxlog/linalg.hpp"

namespace coxlog {

RatFunc ratfunc_matrix_det(const MatX<RatFunc>& M) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw error("ratfunc_matrix_det: matrix not square");
  if (n == 0) return RatFunc(QuadScalar(1));

  VarsPtr vars;
  for (int i = 0; i < n && !vars; ++i)
    for (int j = 0; j < n && !vars; ++j) vars = M(i, j).vars();

  MatX<MultiPoly> P(n, n);
  RatFunc::Factors all_factors;
  MultiPoly extra_den = vars ? MultiPoly::constant(vars, QuadScalar(1))
                             : MultiPoly(QuadScalar(1));
  bool all_known = true;

  for (int j = 0; j < n; ++j) {
    bool known = true;
    for (int i = 0; i < n; ++i) known = known && M(i, j).factors_known();
    if (known) {
      // Column lcm by factor-wise max exponent.
      RatFunc::Factors col;
      for (int i = 0; i < n; ++i) {
        for (const auto& [f, e] : M(i, j).den_factors()) {
          bool found = false;
          for (auto& [g, ge] : col)
            if (g == f) {
              ge = std::max(ge, e);
              found = true;
              break;
            }
          if (!found) col.emplace_back(f, e);
        }
      }
      for (int i = 0; i < n; ++i) {
        MultiPoly lifted = M(i, j).num();
        for (const auto& [f, e] : col) {
          int have = 0;
          for (const auto& [g, ge] : M(i, j).den_factors())
            if (g == f) {
              have = ge;
              break;
            }
          if (e > have) lifted *= f.pow(static_cast<unsigned>(e - have));
        }
        P(i, j) = std::move(lifted);
      }
      for (const auto& [f, e] : col) {
        bool found = false;
        for (auto& [g, ge] : all_factors)
          if (g == f) {
            ge += e;
            found = true;
            break;
          }
        if (!found) all_factors.emplace_back(f, e);
      }
    } else {
      all_known = false;
      // Clear with the plain product of the column's denominators.
      for (int i = 0; i < n; ++i) {
        MultiPoly lifted = M(i, j).num();
        for (int k = 0; k < n; ++k)
          if (k != i) lifted *= M(k, j).den();
        P(i, j) = std::move(lifted);
      }
      for (int i = 0; i < n; ++i) extra_den *= M(i, j).den();
    }
  }

  MultiPoly detP = bareiss_det(std::move(P));
  if (all_known) return RatFunc::from_factored(std::move(detP), all_factors);
  RatFunc cleared = RatFunc::from_factored(MultiPoly(QuadScalar(1)), all_factors);
  return RatFunc(std::move(detP), std::move(extra_den)) * cleared;
}

}  // namespace coxlog
