#include "fastpinv/fullrank_cholesky.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fastpinv {

void ToleranceConfig::validate() const {
  if (!(relative_floor > 0.0) || !std::isfinite(relative_floor)) {
    throw SpecError("ToleranceConfig: relative_floor must be positive");
  }
  if (absolute && (!(*absolute > 0.0) || !std::isfinite(*absolute))) {
    throw SpecError("ToleranceConfig: absolute tolerance must be positive");
  }
}

double pivot_tolerance(const Matrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  if (cfg.absolute) return *cfg.absolute;
  double smallest = std::numeric_limits<double>::infinity();
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a(k, k);
    if (d > 0.0 && d < smallest) smallest = d;
  }
  return std::isinf(smallest) ? 0.0 : smallest * cfg.relative_floor;
}

FullRankCholesky full_rank_cholesky(const Matrix& a, const ToleranceConfig& cfg) {
  if (a.rows() != a.cols()) {
    throw ShapeError("full_rank_cholesky: expected a square matrix, got " + a.shape_string());
  }
  if (!is_symmetric(a)) throw ShapeError("full_rank_cholesky: matrix is not symmetric");

  const std::size_t n = a.rows();
  const double tol = pivot_tolerance(a, cfg);

  if (tol == 0.0 && !cfg.absolute && max_abs(a) != 0.0) {
    throw DefinitenessError(
        "full_rank_cholesky: no positive diagonal entry in a nonzero matrix");
  }
  const double negative_limit = -tol * static_cast<double>(n);

  // Workspace holds the factor in its leading `rank` columns.
  Matrix work(n, n);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = rank;
    const auto lk = work.row(k).first(col);
    for (std::size_t i = k; i < n; ++i) {
      work(i, col) = a(i, k) - dot(work.row(i).first(col), lk);
    }
    const double pivot = work(k, col);
    if (pivot > tol) {
      const double d = std::sqrt(pivot);
      work(k, col) = d;
      for (std::size_t i = k + 1; i < n; ++i) work(i, col) /= d;
      ++rank;
    } else {
      if (pivot < negative_limit) {
        throw DefinitenessError("full_rank_cholesky: pivot " + std::to_string(pivot) +
                                " at row " + std::to_string(k) +
                                " is below -tol*n; matrix is not positive semidefinite");
      }
      for (std::size_t i = k; i < n; ++i) work(i, col) = 0.0;
    }
  }

  FullRankCholesky out;
  out.rank = rank;
  out.tolerance = tol;
  out.factor = Matrix(n, rank);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rank; ++j) out.factor(i, j) = work(i, j);
  }
  return out;
}

}  // namespace fastpinv
