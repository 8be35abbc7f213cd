#pragma once

#include <cstddef>

#include "fastpinv/fullrank_cholesky.hpp"
#include "fastpinv/matrix.hpp"

namespace fastpinv {

struct GeninvResult {
  Matrix pinv;                  // n x m
  std::size_t rank = 0;         // detected rank of the Gram matrix
  double tolerance = 0.0;       // pivot threshold used by the factorization
  double gram_condition = 0.0;  // 1-norm condition number of L'L (0 at rank 0)
  bool transposed = false;      // true when GG' was factored (m < n)
};

// Moore-Penrose inverse through the full-rank Cholesky factor L of the
// smaller Gram matrix:
//
//   m >= n:  A = G'G = LL',  G+ = L (L'L)^-1 (L'L)^-1 L' G'
//   m <  n:  A = GG' = LL',  G+ = G' L (L'L)^-1 (L'L)^-1 L'
//
// With K = L (L'L)^-1 the products are evaluated as K (K' G') and (G' K) K',
// so no intermediate is larger than r x max(m, n).
GeninvResult geninv(const Matrix& g, const ToleranceConfig& cfg = {});

Matrix pinv_geninv(const Matrix& g, const ToleranceConfig& cfg = {});

// Minimum-norm least-squares solution W = G+ F. Throws ShapeError when the
// row counts of g and f differ.
Matrix solve_min_norm(const Matrix& g, const Matrix& f, const ToleranceConfig& cfg = {});

}  // namespace fastpinv
