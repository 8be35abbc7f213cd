#pragma once

#include <cstddef>
#include <optional>

#include "fastpinv/matrix.hpp"

namespace fastpinv {

// Pivot threshold policy. By default the threshold is the smallest strictly
// positive diagonal entry times `relative_floor`; `absolute` overrides it.
struct ToleranceConfig {
  double relative_floor = 1e-9;
  std::optional<double> absolute;

  static ToleranceConfig with_absolute(double value) { return {1e-9, value}; }

  // Throws SpecError unless relative_floor > 0 and absolute (if set) > 0.
  void validate() const;
};

// A = L L' with L of full column rank.
struct FullRankCholesky {
  Matrix factor;          // n x rank
  std::size_t rank = 0;
  double tolerance = 0.0;  // pivot threshold actually used
};

// Threshold the factorization would use for `a` under `cfg`. Zero when no
// diagonal entry is positive.
double pivot_tolerance(const Matrix& a, const ToleranceConfig& cfg);

// Column-by-column Cholesky of a symmetric positive semidefinite matrix that
// keeps a column only when its pivot exceeds the tolerance. Column j of the
// result starts at the row where its pivot was accepted; the number of
// columns is the detected rank.
//
// Throws ShapeError for non-square or asymmetric input and DefinitenessError
// when a tentative pivot is below -tol * n, or when the diagonal has no
// positive entry but the matrix is not zero.
FullRankCholesky full_rank_cholesky(const Matrix& a, const ToleranceConfig& cfg = {});

}  // namespace fastpinv
