#include "fastpinv/geninv.hpp"

#include <string>

namespace fastpinv {

GeninvResult geninv(const Matrix& g, const ToleranceConfig& cfg) {
  cfg.validate();
  require_finite(g, "geninv");

  GeninvResult out;
  out.transposed = g.rows() < g.cols();

  const Matrix a = gram(g, out.transposed ? GramSide::right : GramSide::left);
  const FullRankCholesky chol = full_rank_cholesky(a, cfg);
  out.rank = chol.rank;
  out.tolerance = chol.tolerance;

  const Matrix& l = chol.factor;
  const Matrix ltl = gram(l, GramSide::left);
  const Matrix ltl_inv = spd_inverse(ltl);
  if (chol.rank > 0) out.gram_condition = one_norm(ltl) * one_norm(ltl_inv);

  // K = L (L'L)^-1, so L (L'L)^-1 (L'L)^-1 L' = K K' because (L'L)^-1 is
  // symmetric. K K' is a rank-r gram, formed once and applied to G'.
  const Matrix k = matmul(l, ltl_inv);
  const Matrix kkt = gram(k, GramSide::right);
  out.pinv = out.transposed ? matmul_tn(g, kkt) : matmul_nt(kkt, g);
  return out;
}

Matrix pinv_geninv(const Matrix& g, const ToleranceConfig& cfg) { return geninv(g, cfg).pinv; }

Matrix solve_min_norm(const Matrix& g, const Matrix& f, const ToleranceConfig& cfg) {
  if (g.rows() != f.rows()) {
    throw ShapeError("solve_min_norm: G is " + g.shape_string() + " but F is " +
                     f.shape_string());
  }
  return matmul(pinv_geninv(g, cfg), f);
}

}  // namespace fastpinv
