#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fastpinv/fullrank_cholesky.hpp"
#include "fastpinv/matrix.hpp"

namespace fastpinv {

// ---------------------------------------------------------------------------
// Greville's column-recursive method.

struct GrevilleConfig {
  // Column k is treated as dependent on the previous ones when the norm of
  // its residual is at most dependence_tol * |a_k|.
  double dependence_tol = 1e-11;

  void validate() const;
};

Matrix pinv_greville(const Matrix& g, const GrevilleConfig& cfg = {});

// ---------------------------------------------------------------------------
// Full-rank QR by modified Gram-Schmidt with one reorthogonalization pass.
//
// A column is skipped when its squared residual norm falls to the same
// threshold the full-rank Cholesky would apply to G'G (whose diagonal holds
// the squared column norms).

Matrix pinv_gso_qr(const Matrix& g, const ToleranceConfig& cfg = {});

// ---------------------------------------------------------------------------
// Hyper-power iteration of order p.

struct IterativeConfig {
  std::size_t order = 512;
  std::size_t max_sweeps = 200;
  double residual_tol = 1e-12;
  // X0 = init_scale * G'. Unset means 1 / (|G|_1 |G|_inf).
  std::optional<double> init_scale;

  void validate() const;
};

struct HyperpowerResult {
  Matrix pinv;
  std::size_t sweeps = 0;
  double last_change = 0.0;
};

// Throws ConvergenceError when max_sweeps is exhausted or the iterates blow
// up (e.g. an explicit init_scale outside the convergence region).
HyperpowerResult hyperpower(const Matrix& g, const IterativeConfig& cfg = {});

Matrix pinv_hyperpower(const Matrix& g, const IterativeConfig& cfg = {});

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD, used as the accuracy oracle.

struct SvdConfig {
  // Pairs (i, j) count as orthogonal once |g_i'g_j| <= sweep_tol |g_i||g_j|.
  double sweep_tol = 1e-14;
  // Singular values at or below relative_cutoff * sigma_max are dropped.
  // Unset means max(m, n) * machine epsilon.
  std::optional<double> relative_cutoff;
  std::size_t max_sweeps = 50;

  void validate() const;
};

// Thin SVD: G = U diag(sigma) V', with k = min(m, n) columns in U and V and
// sigma sorted in decreasing order.
struct SvdResult {
  Matrix u;                   // m x k
  std::vector<double> sigma;  // k
  Matrix v;                   // n x k
  std::size_t sweeps = 0;

  // Number of singular values above the cutoff.
  std::size_t numerical_rank(const SvdConfig& cfg = {}) const;
  double cutoff(const SvdConfig& cfg = {}) const;
};

// Throws ConvergenceError when cfg.max_sweeps sweeps do not converge.
SvdResult jacobi_svd(const Matrix& g, const SvdConfig& cfg = {});

Matrix pinv_svd_reference(const Matrix& g, const SvdConfig& cfg = {});

}  // namespace fastpinv
