#include "fastpinv/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace fastpinv {
namespace {

// I + T + T^2 + ... + T^(p-1). For p = 2^q this is the product
// (I + T)(I + T^2)(I + T^4)...(I + T^(p/2)), which needs 2(q - 1) products
// instead of the p - 1 of Horner's scheme.
Matrix geometric_sum(const Matrix& t, std::size_t order) {
  const std::size_t n = t.rows();
  const Matrix id = identity(n);
  if (std::has_single_bit(order)) {
    Matrix sum = add(id, t);
    Matrix power = t;
    for (std::size_t span = 2; span < order; span *= 2) {
      power = matmul(power, power);
      sum = add(sum, matmul(sum, power));
    }
    return sum;
  }
  Matrix sum = id;
  for (std::size_t i = 1; i < order; ++i) sum = add(id, matmul(t, sum));
  return sum;
}

double relative_change(const Matrix& next, const Matrix& prev) {
  return max_abs(subtract(next, prev)) / std::max(1.0, max_abs(next));
}

}  // namespace

void IterativeConfig::validate() const {
  if (order < 2) throw SpecError("IterativeConfig: order must be >= 2");
  if (max_sweeps < 1) throw SpecError("IterativeConfig: max_sweeps must be >= 1");
  if (!(residual_tol > 0.0)) throw SpecError("IterativeConfig: residual_tol must be positive");
  if (init_scale && (!(*init_scale > 0.0) || !std::isfinite(*init_scale))) {
    throw SpecError("IterativeConfig: init_scale must be positive");
  }
}

// Iterates X <- X (I + T + ... + T^(p-1)) with T = I - G X, starting from
// X0 = alpha G'. The equivalent left form (I + S + ... + S^(p-1)) X with
// S = I - X G is used when n < m so the polynomial is taken of the smaller
// matrix.
//
// On rank-deficient G the component of X acting on null(G) from the left
// and on null(G') from the right has no restoring force and is multiplied by
// p each sweep, so rounding there grows geometrically. The iterate is
// therefore reported as the Penrose projection C = X G X, which removes that
// component and leaves the converged part unchanged; convergence is tested
// on successive C.
HyperpowerResult hyperpower(const Matrix& g, const IterativeConfig& cfg) {
  cfg.validate();
  require_finite(g, "hyperpower");
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();

  HyperpowerResult out;
  if (max_abs(g) == 0.0) {
    out.pinv = Matrix(n, m);
    return out;
  }

  const double alpha = cfg.init_scale ? *cfg.init_scale : 1.0 / (one_norm(g) * inf_norm(g));
  const bool left_form = n <= m;

  Matrix x = scale(transpose(g), alpha);
  Matrix prev;
  double change = std::numeric_limits<double>::infinity();
  std::size_t sweep = 0;
  try {
    for (;; ++sweep) {
      const Matrix product = left_form ? matmul(x, g) : matmul(g, x);
      Matrix projected = left_form ? matmul(product, x) : matmul(x, product);
      if (sweep > 0) {
        change = relative_change(projected, prev);
        if (change <= cfg.residual_tol) {
          out.pinv = std::move(projected);
          out.sweeps = sweep;
          out.last_change = change;
          return out;
        }
      }
      if (sweep == cfg.max_sweeps) break;
      prev = std::move(projected);

      const Matrix t = subtract(identity(product.rows()), product);
      const Matrix poly = geometric_sum(t, cfg.order);
      x = left_form ? matmul(poly, x) : matmul(x, poly);
    }
  } catch (const NonFiniteError&) {
    throw ConvergenceError("hyperpower: iterates diverged after " + std::to_string(sweep) +
                               " sweeps",
                           change, sweep);
  }
  throw ConvergenceError("hyperpower: no convergence after " + std::to_string(cfg.max_sweeps) +
                             " sweeps (last change " + std::to_string(change) + ")",
                         change, cfg.max_sweeps);
}

Matrix pinv_hyperpower(const Matrix& g, const IterativeConfig& cfg) {
  return hyperpower(g, cfg).pinv;
}

}  // namespace fastpinv
