#include "fastpinv/baselines.hpp"

#include <cmath>
#include <vector>

namespace fastpinv {

void GrevilleConfig::validate() const {
  if (!(dependence_tol >= 0.0) || !std::isfinite(dependence_tol)) {
    throw SpecError("GrevilleConfig: dependence_tol must be non-negative");
  }
}

Matrix pinv_greville(const Matrix& g, const GrevilleConfig& cfg) {
  cfg.validate();
  require_finite(g, "pinv_greville");
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  if (n == 0 || m == 0) return Matrix(n, m);

  // Columns of G are rows of gt.
  const Matrix gt = transpose(g);

  // Pseudoinverse of the leading k columns, k x m, grown one row at a time.
  std::vector<double> p;
  p.reserve(n * m);
  auto prow = [&](std::size_t i) { return std::span<double>(p.data() + i * m, m); };

  {
    const auto a1 = gt.row(0);
    const double aa = dot(a1, a1);
    p.resize(m, 0.0);
    if (aa > 0.0) {
      for (std::size_t i = 0; i < m; ++i) p[i] = a1[i] / aa;
    }
  }

  std::vector<double> d(n);
  std::vector<double> c(m);
  std::vector<double> b(m);
  for (std::size_t k = 1; k < n; ++k) {
    const auto a = gt.row(k);

    // d = A+ a
    for (std::size_t j = 0; j < k; ++j) d[j] = dot(prow(j), a);
    const std::span<const double> dk(d.data(), k);

    // c = a - A d, with row i of A being the first k entries of row i of G.
    for (std::size_t i = 0; i < m; ++i) c[i] = a[i] - dot(g.row(i).first(k), dk);

    const double cc = dot(c, c);
    const double aa = dot(a, a);
    if (std::sqrt(cc) > cfg.dependence_tol * std::sqrt(aa)) {
      for (std::size_t i = 0; i < m; ++i) b[i] = c[i] / cc;
    } else {
      // b = d' A+ / (1 + d'd)
      std::fill(b.begin(), b.end(), 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        const double dj = d[j];
        const auto pj = prow(j);
        for (std::size_t i = 0; i < m; ++i) b[i] += dj * pj[i];
      }
      const double s = 1.0 / (1.0 + dot(dk, dk));
      for (double& x : b) x *= s;
    }

    // A+ <- [A+ - d b; b]
    for (std::size_t j = 0; j < k; ++j) {
      const double dj = d[j];
      auto pj = prow(j);
      for (std::size_t i = 0; i < m; ++i) pj[i] -= dj * b[i];
    }
    p.insert(p.end(), b.begin(), b.end());
  }

  return Matrix(n, m, std::move(p));
}

}  // namespace fastpinv
