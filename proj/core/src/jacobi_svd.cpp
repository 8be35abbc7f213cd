#include "fastpinv/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fastpinv {

void SvdConfig::validate() const {
  if (!(sweep_tol > 0.0)) throw SpecError("SvdConfig: sweep_tol must be positive");
  if (relative_cutoff && !(*relative_cutoff > 0.0)) {
    throw SpecError("SvdConfig: relative_cutoff must be positive");
  }
  if (max_sweeps < 1) throw SpecError("SvdConfig: max_sweeps must be >= 1");
}

double SvdResult::cutoff(const SvdConfig& cfg) const {
  const double largest = sigma.empty() ? 0.0 : sigma.front();
  const double rel = cfg.relative_cutoff
                         ? *cfg.relative_cutoff
                         : static_cast<double>(std::max(u.rows(), v.rows())) *
                               std::numeric_limits<double>::epsilon();
  return rel * largest;
}

std::size_t SvdResult::numerical_rank(const SvdConfig& cfg) const {
  const double cut = cutoff(cfg);
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [cut](double s) { return s > cut; }));
}

// One-sided (Hestenes) Jacobi on the columns of the tall orientation. The
// columns are kept as rows of a working matrix so every rotation touches
// contiguous memory.
SvdResult jacobi_svd(const Matrix& g, const SvdConfig& cfg) {
  cfg.validate();
  require_finite(g, "jacobi_svd");
  const bool wide = g.rows() < g.cols();
  // work: k x len, rows are the columns of the tall matrix.
  Matrix work = wide ? g : transpose(g);
  const std::size_t k = work.rows();
  const std::size_t len = work.cols();
  Matrix vt = identity(k);  // rows are right singular vectors

  auto rotate = [](std::span<double> x, std::span<double> y, double cs, double sn) {
    for (std::size_t t = 0; t < x.size(); ++t) {
      const double xt = x[t];
      const double yt = y[t];
      x[t] = cs * xt - sn * yt;
      y[t] = sn * xt + cs * yt;
    }
  };

  std::size_t sweeps = 0;
  bool converged = k < 2;
  while (!converged) {
    if (sweeps == cfg.max_sweeps) {
      throw ConvergenceError("jacobi_svd: no convergence after " +
                                 std::to_string(cfg.max_sweeps) + " sweeps",
                             0.0, sweeps);
    }
    ++sweeps;
    converged = true;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        auto wi = work.row(i);
        auto wj = work.row(j);
        const double a = dot(wi, wi);
        const double b = dot(wj, wj);
        if (a == 0.0 || b == 0.0) continue;
        const double c = dot(wi, wj);
        if (std::abs(c) <= cfg.sweep_tol * std::sqrt(a) * std::sqrt(b)) continue;
        converged = false;
        const double zeta = (b - a) / (2.0 * c);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::hypot(1.0, t);
        const double sn = cs * t;
        rotate(wi, wj, cs, sn);
        rotate(vt.row(i), vt.row(j), cs, sn);
      }
    }
  }

  std::vector<double> norms(k);
  for (std::size_t i = 0; i < k; ++i) norms[i] = std::sqrt(dot(work.row(i), work.row(i)));
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  // Left vectors span the long side, right vectors the short side.
  Matrix left(len, k);
  Matrix right(k, k);
  std::vector<double> sigma(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    sigma[c] = norms[src];
    const auto w = work.row(src);
    const auto v = vt.row(src);
    if (norms[src] > 0.0) {
      for (std::size_t t = 0; t < len; ++t) left(t, c) = w[t] / norms[src];
    }
    for (std::size_t t = 0; t < k; ++t) right(t, c) = v[t];
  }

  SvdResult out;
  out.sigma = std::move(sigma);
  out.sweeps = sweeps;
  if (wide) {
    out.u = std::move(right);
    out.v = std::move(left);
  } else {
    out.u = std::move(left);
    out.v = std::move(right);
  }
  return out;
}

Matrix pinv_svd_reference(const Matrix& g, const SvdConfig& cfg) {
  const SvdResult svd = jacobi_svd(g, cfg);
  // V diag(1/sigma) U' over the retained singular values.
  const std::size_t keep = svd.numerical_rank(cfg);
  Matrix vs(svd.v.rows(), keep);
  Matrix ut(keep, svd.u.rows());
  for (std::size_t c = 0; c < keep; ++c) {
    const double inv = 1.0 / svd.sigma[c];
    for (std::size_t t = 0; t < svd.v.rows(); ++t) vs(t, c) = svd.v(t, c) * inv;
    for (std::size_t t = 0; t < svd.u.rows(); ++t) ut(c, t) = svd.u(t, c);
  }
  return matmul(vs, ut);
}

}  // namespace fastpinv
