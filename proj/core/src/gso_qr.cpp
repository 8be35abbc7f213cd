#include "fastpinv/baselines.hpp"

#include <cmath>
#include <vector>

namespace fastpinv {
namespace {

// v -= (q'v) q for every stored q.
void orthogonalize(std::span<double> v, const std::vector<double>& q, std::size_t count,
                   std::size_t m) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> qi(q.data() + i * m, m);
    const double h = dot(qi, v);
    for (std::size_t t = 0; t < m; ++t) v[t] -= h * qi[t];
  }
}

}  // namespace

Matrix pinv_gso_qr(const Matrix& g, const ToleranceConfig& cfg) {
  cfg.validate();
  require_finite(g, "pinv_gso_qr");
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();

  const Matrix gt = transpose(g);

  // Same threshold full_rank_cholesky would derive from diag(G'G).
  double tol = 0.0;
  if (cfg.absolute) {
    tol = *cfg.absolute;
  } else {
    double smallest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = dot(gt.row(j), gt.row(j));
      if (s > 0.0 && (smallest == 0.0 || s < smallest)) smallest = s;
    }
    tol = smallest * cfg.relative_floor;
  }

  // Orthonormal columns of Q, stored as rows.
  std::vector<double> q;
  q.reserve(std::min(m, n) * m);
  std::size_t rank = 0;
  std::vector<double> v(m);
  for (std::size_t j = 0; j < n; ++j) {
    const auto gj = gt.row(j);
    std::copy(gj.begin(), gj.end(), v.begin());
    orthogonalize(v, q, rank, m);
    orthogonalize(v, q, rank, m);
    const double vv = dot(v, v);
    if (vv > tol && vv > 0.0) {
      const double inv = 1.0 / std::sqrt(vv);
      for (double& x : v) x *= inv;
      q.insert(q.end(), v.begin(), v.end());
      ++rank;
    }
  }

  const Matrix qt(rank, m, std::move(q));
  // R = Q'G, r x n with full row rank.
  const Matrix r = matmul(qt, g);
  // G+ = R' (RR')^-1 Q'
  const Matrix rrt_inv = spd_inverse(gram(r, GramSide::right));
  return matmul(transpose(r), matmul(rrt_inv, qt));
}

}  // namespace fastpinv
